#include "bergman/space.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "bergman/errors.hpp"

namespace bergman {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
  case SpaceKind::BergmanDisc: return "BergmanDisc";
  case SpaceKind::Fock: return "Fock";
  case SpaceKind::Bidisc: return "Bidisc";
  }
  return "?";
}

SpaceKind space_kind_from_string(std::string_view name) {
  if (name == "BergmanDisc" || name == "disc") return SpaceKind::BergmanDisc;
  if (name == "Fock" || name == "fock") return SpaceKind::Fock;
  if (name == "Bidisc" || name == "bidisc") return SpaceKind::Bidisc;
  throw PreconditionError(fmt::format("unknown space kind '{}'", name));
}

void SpaceSpec::validate() const {
  if (!(alpha > -1.0) || !(alpha2 > -1.0))
    throw PreconditionError("weight parameter must exceed -1");
  if (truncation_order < 1) throw PreconditionError("truncation order must be >= 1");
  if (component_dim < 1) throw PreconditionError("component dimension must be >= 1");
  if (fock_cutoff_radius < 0.0 || !std::isfinite(fock_cutoff_radius))
    throw PreconditionError("Fock cutoff radius must be positive (0 = automatic)");
  if (admissible_radius < 0.0) throw PreconditionError("admissible radius must be >= 0");
  if (kind != SpaceKind::Fock && admissible_radius >= 1.0)
    throw PreconditionError("admissible radius must lie inside the disc");
}

int SpaceSpec::modes() const {
  return kind == SpaceKind::Bidisc ? truncation_order * truncation_order : truncation_order;
}

double SpaceSpec::cutoff_radius() const {
  if (fock_cutoff_radius > 0.0) return fock_cutoff_radius;
  return std::sqrt(static_cast<double>(truncation_order)) + 7.0;
}

double SpaceSpec::admissible() const {
  if (admissible_radius > 0.0) return admissible_radius;
  return kind == SpaceKind::Fock ? 3.0 : 0.9;
}

double SpaceSpec::kappa_value() const {
  if (kappa >= 0.0) return kappa;
  if (kind == SpaceKind::Fock) return 0.0;
  // Smallest r with r·(2+α)/2 − 2 > −1 is 2/(2+α); reported as κ.
  const double a = kind == SpaceKind::Bidisc ? std::max(alpha, alpha2) : alpha;
  return 2.0 / (2.0 + a);
}

SpaceSpec SpaceSpec::with_truncation(int n) const {
  SpaceSpec s = *this;
  s.truncation_order = n;
  return s;
}

SpaceSpec SpaceSpec::with_components(int d) const {
  SpaceSpec s = *this;
  s.component_dim = d;
  return s;
}

bool SpaceSpec::same_geometry(const SpaceSpec& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
  case SpaceKind::BergmanDisc: return alpha == other.alpha;
  case SpaceKind::Fock: return true;
  case SpaceKind::Bidisc: return alpha == other.alpha && alpha2 == other.alpha2;
  }
  return false;
}

namespace detail {

Factor factor(const SpaceSpec& space, int variable) {
  switch (space.kind) {
  case SpaceKind::BergmanDisc: return {true, space.alpha};
  case SpaceKind::Fock: return {false, 0.0};
  case SpaceKind::Bidisc: return {true, variable == 0 ? space.alpha : space.alpha2};
  }
  return {};
}

cplx factor_kernel(Factor f, cplx z, cplx w) {
  if (!f.disc) return std::exp(w * std::conj(z));
  return std::pow(1.0 - w * std::conj(z), -(2.0 + f.alpha));
}

double factor_kernel_norm_sq(Factor f, cplx z) {
  const double t = std::norm(z);
  if (!f.disc) return std::exp(t);
  return std::pow(1.0 - t, -(2.0 + f.alpha));
}

static cplx factor_log_kernel(Factor f, cplx z, cplx w) {
  if (!f.disc) return w * std::conj(z);
  return -(2.0 + f.alpha) * std::log(1.0 - w * std::conj(z));
}

static double factor_log_norm_sq(Factor f, cplx z) {
  const double t = std::norm(z);
  if (!f.disc) return t;
  return -(2.0 + f.alpha) * std::log1p(-t);
}

cplx factor_involution(Factor f, cplx z, cplx w) {
  if (!f.disc) return z - w;
  return (z - w) / (1.0 - std::conj(z) * w);
}

double factor_metric(Factor f, cplx z, cplx w) {
  if (!f.disc) return std::abs(z - w);
  const double a = std::min(std::abs(factor_involution(f, z, w)), 1.0);
  return std::atanh(a);
}

double factor_sigma_density(Factor f, cplx z) {
  const double t = std::norm(z);
  if (!f.disc) return std::exp(-t) / M_PI;
  return (f.alpha + 1.0) / M_PI * std::pow(1.0 - t, f.alpha);
}

double factor_normalizer(Factor f, int m) {
  if (m < 0) throw PreconditionError("mode index must be non-negative");
  if (!f.disc) return std::exp(-0.5 * std::lgamma(m + 1.0));
  if (f.alpha == 0.0) return std::sqrt(m + 1.0);
  return std::exp(0.5 * (std::lgamma(m + f.alpha + 2.0) - std::lgamma(m + 1.0) -
                         std::lgamma(f.alpha + 2.0)));
}

void factor_basis(Factor f, cplx z, int n, cplx* out) {
  if (n <= 0) return;
  out[0] = 1.0;
  for (int m = 1; m < n; ++m) {
    const double ratio = f.disc ? (m + 1.0 + f.alpha) / m : 1.0 / m;
    out[m] = out[m - 1] * z * std::sqrt(ratio);
  }
}

double factor_tail(Factor f, cplx z, int n) {
  const double t = std::norm(z);
  if (t == 0.0) return 0.0;
  // term_m = |e_m(z)|² / K_z(z), starting at m = n, in log space.
  double log_term = 0.0;
  if (f.disc) {
    log_term = std::lgamma(n + f.alpha + 2.0) - std::lgamma(n + 1.0) -
               std::lgamma(f.alpha + 2.0) + n * std::log(t) + (2.0 + f.alpha) * std::log1p(-t);
  } else {
    log_term = n * std::log(t) - std::lgamma(n + 1.0) - t;
  }
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int m = n;; ++m) {
    sum += term;
    const double ratio = f.disc ? t * (m + 2.0 + f.alpha) / (m + 1.0) : t / (m + 1.0);
    term *= ratio;
    if (ratio < 1.0 && term < 1e-18 * sum) break;
    if (sum == 0.0 && ratio < 1.0 && term == 0.0) break;
    if (m - n > 10'000'000) break;
  }
  return std::min(sum, 1.0);
}

} // namespace detail

using detail::Factor;

bool in_domain(const SpaceSpec& space, const DomainPoint& z) {
  auto finite = [](cplx a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); };
  switch (space.kind) {
  case SpaceKind::BergmanDisc: return finite(z.z1) && std::abs(z.z1) < 1.0;
  case SpaceKind::Fock: return finite(z.z1);
  case SpaceKind::Bidisc:
    return finite(z.z1) && finite(z.z2) && std::abs(z.z1) < 1.0 && std::abs(z.z2) < 1.0;
  }
  return false;
}

void check_point(const SpaceSpec& space, const DomainPoint& z) {
  if (!in_domain(space, z))
    throw DomainError(fmt::format("point ({}{:+}i, {}{:+}i) lies outside the {} domain",
                                  z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag(),
                                  to_string(space.kind)));
}

double radius_of(const SpaceSpec& space, const DomainPoint& z) {
  if (space.kind == SpaceKind::Bidisc) return std::max(std::abs(z.z1), std::abs(z.z2));
  return std::abs(z.z1);
}

void check_admissible(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  const double r = radius_of(space, z);
  if (r > space.admissible() * (1.0 + 1e-12))
    throw DomainError(fmt::format("radius {} exceeds the admissible radius {} at truncation {}",
                                  r, space.admissible(), space.truncation_order));
}

cplx kernel_eval(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  cplx k = detail::factor_kernel(detail::factor(space, 0), z.z1, w.z1);
  if (space.kind == SpaceKind::Bidisc) k *= detail::factor_kernel(detail::factor(space, 1), z.z2, w.z2);
  return k;
}

double kernel_norm(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  double n2 = detail::factor_kernel_norm_sq(detail::factor(space, 0), z.z1);
  if (space.kind == SpaceKind::Bidisc) n2 *= detail::factor_kernel_norm_sq(detail::factor(space, 1), z.z2);
  return std::sqrt(n2);
}

namespace {

cplx log_kernel(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  cplx l = detail::factor_log_kernel(detail::factor(space, 0), z.z1, w.z1);
  if (space.kind == SpaceKind::Bidisc)
    l += detail::factor_log_kernel(detail::factor(space, 1), z.z2, w.z2);
  return l;
}

double log_norm_sq(const SpaceSpec& space, const DomainPoint& z) {
  double l = detail::factor_log_norm_sq(detail::factor(space, 0), z.z1);
  if (space.kind == SpaceKind::Bidisc) l += detail::factor_log_norm_sq(detail::factor(space, 1), z.z2);
  return l;
}

} // namespace

double log_abs_kernel(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  return log_kernel(space, z, w).real();
}

double log_kernel_norm_sq(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  return log_norm_sq(space, z);
}

cplx normalized_kernel_product(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  return std::exp(log_kernel(space, z, w) - 0.5 * (log_norm_sq(space, z) + log_norm_sq(space, w)));
}

cplx normalized_kernel_eval(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  return std::exp(log_kernel(space, z, w) - 0.5 * log_norm_sq(space, z));
}

DomainPoint involution(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  DomainPoint out{detail::factor_involution(detail::factor(space, 0), z.z1, w.z1)};
  if (space.kind == SpaceKind::Bidisc)
    out.z2 = detail::factor_involution(detail::factor(space, 1), z.z2, w.z2);
  return out;
}

double metric(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  check_point(space, z);
  check_point(space, w);
  double d = detail::factor_metric(detail::factor(space, 0), z.z1, w.z1);
  if (space.kind == SpaceKind::Bidisc)
    d = std::max(d, detail::factor_metric(detail::factor(space, 1), z.z2, w.z2));
  return d;
}

double sigma_density(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  double s = detail::factor_sigma_density(detail::factor(space, 0), z.z1);
  if (space.kind == SpaceKind::Bidisc) s *= detail::factor_sigma_density(detail::factor(space, 1), z.z2);
  return s;
}

double lambda_density(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  // Combined in log space: for Fock e^{|z|²}·e^{−|z|²} would overflow first.
  double l = 0.0;
  for (int v = 0; v < space.variables(); ++v) {
    const Factor f = detail::factor(space, v);
    const cplx a = v == 0 ? z.z1 : z.z2;
    const double t = std::norm(a);
    l += f.disc ? std::log((f.alpha + 1.0) / M_PI) - 2.0 * std::log1p(-t) : -std::log(M_PI);
  }
  return std::exp(l);
}

double basis_normalizer(const SpaceSpec& space, int mode) {
  if (mode < 0 || mode >= space.modes())
    throw PreconditionError(fmt::format("mode {} outside 0..{}", mode, space.modes() - 1));
  if (space.kind != SpaceKind::Bidisc) return detail::factor_normalizer(detail::factor(space, 0), mode);
  const int n = space.truncation_order;
  return detail::factor_normalizer(detail::factor(space, 0), mode / n) *
         detail::factor_normalizer(detail::factor(space, 1), mode % n);
}

Eigen::VectorXcd basis_values(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  const int n = space.truncation_order;
  Eigen::VectorXcd out(space.modes());
  if (space.kind != SpaceKind::Bidisc) {
    detail::factor_basis(detail::factor(space, 0), z.z1, n, out.data());
    return out;
  }
  Eigen::VectorXcd a(n), b(n);
  detail::factor_basis(detail::factor(space, 0), z.z1, n, a.data());
  detail::factor_basis(detail::factor(space, 1), z.z2, n, b.data());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = a[i] * b[j];
  return out;
}

double kernel_tail(const SpaceSpec& space, const DomainPoint& z) {
  check_point(space, z);
  const int n = space.truncation_order;
  const double t1 = detail::factor_tail(detail::factor(space, 0), z.z1, n);
  if (space.kind != SpaceKind::Bidisc) return t1;
  const double t2 = detail::factor_tail(detail::factor(space, 1), z.z2, n);
  return 1.0 - (1.0 - t1) * (1.0 - t2);
}

double certified_radius(const SpaceSpec& space, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tail tolerance must be positive");
  auto tail_at = [&](double r) {
    return space.kind == SpaceKind::Bidisc ? kernel_tail(space, DomainPoint{r, r})
                                           : kernel_tail(space, DomainPoint{r});
  };
  double lo = 0.0;
  double hi = 1.0;
  if (space.kind == SpaceKind::Fock) {
    while (tail_at(hi) <= tol) {
      lo = hi;
      hi *= 2.0;
    }
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail_at(mid) <= tol) lo = mid;
    else hi = mid;
  }
  return lo;
}

bool rudin_forelli_integrable(const SpaceSpec& space, double r) {
  if (space.kind == SpaceKind::Fock) return r > 0.0;
  // Near the boundary the λ-integrand behaves like (1−|w|²)^{r(2+α)/2 − 2}.
  for (int v = 0; v < space.variables(); ++v) {
    const Factor f = detail::factor(space, v);
    if (!(r * (2.0 + f.alpha) / 2.0 - 2.0 > -1.0)) return false;
  }
  return true;
}

} // namespace bergman
