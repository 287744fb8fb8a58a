#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "bergman/space.hpp"

namespace bergman {

/// Tensor rule on Ω: Gauss panels in t = |z|² times a uniform angular rule.
///
/// One-variable spaces store nodes ring-major (index ring·angular_order + j,
/// angle 2πj/angular_order), which the FFT-based assemblers rely on. Bidisc
/// rules are the tensor product of two factor rules (index i1·n2 + i2).
struct QuadratureRule {
  SpaceSpec space;
  int radial_order = 0;
  int angular_order = 0;
  std::vector<DomainPoint> nodes;
  std::vector<double> sigma_weights;
  std::vector<double> lambda_weights;
  // One-variable spaces only: ring radii and total σ-weight per ring.
  std::vector<double> ring_radii;
  std::vector<double> ring_weights;

  std::size_t size() const { return nodes.size(); }
  int rings() const { return static_cast<int>(ring_radii.size()); }
  bool ring_structured() const { return !ring_radii.empty(); }
};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);
/// n-point Gauss–Jacobi rule for (1−x)^a (1+x)^b on [−1, 1].
void gauss_jacobi(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// `breakpoints` are radii (not squared) at which panels must split, e.g. the
/// radius of a centred ball indicator. Every panel gets `radial_order` nodes;
/// Fock panels additionally split so their width in t is at most 16.
QuadratureRule build_rule(const SpaceSpec& space, int radial_order, int angular_order,
                          std::span<const double> breakpoints = {});

/// Orders large enough for exact Toeplitz assembly at the space's truncation.
QuadratureRule default_rule(const SpaceSpec& space, double resolution_scale = 1.0,
                            std::span<const double> breakpoints = {});
int default_radial_order(const SpaceSpec& space);
int default_angular_order(const SpaceSpec& space);

cplx integrate_sigma(const QuadratureRule& rule, std::span<const cplx> samples);
cplx integrate_lambda(const QuadratureRule& rule, std::span<const cplx> samples);
double integrate_sigma(const QuadratureRule& rule, std::span<const double> samples);
double integrate_lambda(const QuadratureRule& rule, std::span<const double> samples);

/// Rows are nodes, columns modes: B(x, m) = e_m(x).
Eigen::MatrixXcd basis_matrix(const QuadratureRule& rule);

} // namespace bergman
