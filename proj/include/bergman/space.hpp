#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace bergman {

using cplx = std::complex<double>;

enum class SpaceKind { BergmanDisc, Fock, Bidisc };

std::string_view to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

/// A concrete model space.
///
/// BergmanDisc: weighted Bergman space on the unit disc with
///   dσ = ((α+1)/π)(1−|z|²)^α dA and K_z(w) = (1 − w·conj(z))^{−(2+α)}.
/// Fock: Gaussian Fock space with dσ = (1/π)e^{−|z|²} dA and
///   K_z(w) = exp(w·conj(z)).
/// Bidisc: product of two weighted Bergman discs (weights alpha, alpha2).
///
/// Functions are represented by their first `truncation_order` modes per
/// complex variable and `component_dim` vector components.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::BergmanDisc;
  double alpha = 0.0;
  double alpha2 = 0.0;
  int truncation_order = 32;
  int component_dim = 4;
  // 0 selects sqrt(N) + 7, enough to hold the mass of every basis function.
  double fock_cutoff_radius = 0.0;
  // 0 selects 0.9 (disc, per factor) or 3 (Fock).
  double admissible_radius = 0.0;
  // Negative selects the per-space default (Fock 0, disc/bidisc from the
  // Rudin–Forelli integrability threshold).
  double kappa = -1.0;

  void validate() const;

  int variables() const { return kind == SpaceKind::Bidisc ? 2 : 1; }
  int modes() const;
  int dim() const { return modes() * component_dim; }

  double cutoff_radius() const;
  double admissible() const;
  double kappa_value() const;

  SpaceSpec with_truncation(int n) const;
  SpaceSpec with_components(int d) const;

  // Same geometry (kind and weights) regardless of truncation or d.
  bool same_geometry(const SpaceSpec& other) const;

  bool operator==(const SpaceSpec&) const = default;
};

/// One complex coordinate for BergmanDisc/Fock, two for Bidisc.
struct DomainPoint {
  cplx z1{};
  cplx z2{};

  DomainPoint() = default;
  DomainPoint(cplx a) : z1(a) {}  // NOLINT(google-explicit-constructor)
  DomainPoint(double a) : z1(a) {}  // NOLINT(google-explicit-constructor)
  DomainPoint(cplx a, cplx b) : z1(a), z2(b) {}

  bool operator==(const DomainPoint&) const = default;
};

void check_point(const SpaceSpec& space, const DomainPoint& z);
bool in_domain(const SpaceSpec& space, const DomainPoint& z);
/// Sup-norm radius max(|z1|, |z2|) (|z1| for one-variable spaces).
double radius_of(const SpaceSpec& space, const DomainPoint& z);
void check_admissible(const SpaceSpec& space, const DomainPoint& z);

cplx kernel_eval(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w);
double kernel_norm(const SpaceSpec& space, const DomainPoint& z);
/// ⟨k_z, k_w⟩ for the normalized kernels.
cplx normalized_kernel_product(const SpaceSpec& space, const DomainPoint& z,
                               const DomainPoint& w);
/// k_z(w) = K_z(w)/‖K_z‖.
cplx normalized_kernel_eval(const SpaceSpec& space, const DomainPoint& z,
                            const DomainPoint& w);

/// log|K_z(w)| and log‖K_z‖², safe where the kernel itself overflows.
double log_abs_kernel(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w);
double log_kernel_norm_sq(const SpaceSpec& space, const DomainPoint& z);

DomainPoint involution(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w);
double metric(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w);

double sigma_density(const SpaceSpec& space, const DomainPoint& z);
double lambda_density(const SpaceSpec& space, const DomainPoint& z);

/// c_m with e_m(z) = c_m z^m orthonormal; for Bidisc `mode` is the flattened
/// index m1·N + m2 and c = c_{m1}·c_{m2}.
double basis_normalizer(const SpaceSpec& space, int mode);

/// e_m(z) for every mode of the space, in flattened mode order.
Eigen::VectorXcd basis_values(const SpaceSpec& space, const DomainPoint& z);

/// Relative kernel truncation tail Σ_{m∉modes}|e_m(z)|² / K_z(z).
double kernel_tail(const SpaceSpec& space, const DomainPoint& z);

/// Largest radius (sup-norm over factors) at which kernel_tail ≤ tol.
double certified_radius(const SpaceSpec& space, double tol);

/// Rudin–Forelli integrability: the λ-integrand's boundary exponent. The
/// integral of |⟨K_z,K_w⟩|^a / ‖K_w‖^r dλ(w) converges iff this is true.
bool rudin_forelli_integrable(const SpaceSpec& space, double r);

namespace detail {

// Single-variable building blocks. `disc` selects the Bergman disc with the
// given weight, otherwise the Fock space.
struct Factor {
  bool disc = true;
  double alpha = 0.0;
};

Factor factor(const SpaceSpec& space, int variable);
cplx factor_kernel(Factor f, cplx z, cplx w);
double factor_kernel_norm_sq(Factor f, cplx z);
cplx factor_involution(Factor f, cplx z, cplx w);
double factor_metric(Factor f, cplx z, cplx w);
double factor_sigma_density(Factor f, cplx z);
double factor_normalizer(Factor f, int m);
// out[m] = e_m(z), m < n.
void factor_basis(Factor f, cplx z, int n, cplx* out);
// Σ_{m≥n}|e_m(z)|² / K_z(z)
double factor_tail(Factor f, cplx z, int n);

} // namespace detail

} // namespace bergman
