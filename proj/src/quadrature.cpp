#include "bergman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include <Eigen/Eigenvalues>

#include "bergman/errors.hpp"

namespace bergman {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw PreconditionError("Gauss-Legendre order must be >= 1");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

void gauss_jacobi(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw PreconditionError("Gauss-Jacobi order must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw PreconditionError("Jacobi exponents must exceed -1");
  // Golub–Welsch on the monic Jacobi recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    jac(k, k) = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + ab;
      const double beta = 4.0 * m * (m + a) * (m + b) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0));
      jac(k, k + 1) = jac(k + 1, k) = std::sqrt(beta);
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    x[k] = eig.eigenvalues()[k];
    const double v = eig.eigenvectors()(0, k);
    w[k] = mu0 * v * v;
  }
}

namespace {

struct RadialRule {
  std::vector<double> t;        // |z|²
  std::vector<double> sigma;    // σ-weight per ring
  std::vector<double> lambda;   // λ-weight per ring
};

std::vector<double> panel_cuts(double end, std::span<const double> breakpoints, double max_width) {
  std::vector<double> cuts{0.0, end};
  for (double b : breakpoints) {
    const double t = b * b;
    if (t > 1e-14 && t < end * (1.0 - 1e-14)) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (max_width <= 0.0) return cuts;
  std::vector<double> out{0.0};
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double len = cuts[i] - cuts[i - 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_width - 1e-12)));
    for (int p = 1; p <= pieces; ++p) out.push_back(cuts[i - 1] + len * p / pieces);
  }
  out.back() = cuts.back();
  return out;
}

RadialRule radial_rule(detail::Factor f, double fock_t_max, int order, std::span<const double> breakpoints) {
  RadialRule r;
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  if (!f.disc) {
    const auto cuts = panel_cuts(fock_t_max, breakpoints, 16.0);
    for (std::size_t p = 1; p < cuts.size(); ++p) {
      const double a = cuts[p - 1];
      const double h = 0.5 * (cuts[p] - a);
      for (int i = 0; i < order; ++i) {
        const double t = a + h * (gx[i] + 1.0);
        r.t.push_back(t);
        r.lambda.push_back(h * gw[i]);
        r.sigma.push_back(h * gw[i] * std::exp(-t));
      }
    }
    return r;
  }
  const auto cuts = panel_cuts(1.0, breakpoints, 0.0);
  for (std::size_t p = 1; p < cuts.size(); ++p) {
    const double a = cuts[p - 1];
    const double h = 0.5 * (cuts[p] - a);
    const bool last = p + 1 == cuts.size();
    if (last && f.alpha != 0.0) {
      std::vector<double> jx, jw;
      gauss_jacobi(order, f.alpha, 0.0, jx, jw);
      const double scale = (f.alpha + 1.0) * std::pow(h, f.alpha + 1.0);
      for (int i = 0; i < order; ++i) {
        const double t = a + h * (jx[i] + 1.0);
        r.t.push_back(t);
        r.sigma.push_back(scale * jw[i]);
      }
    } else {
      for (int i = 0; i < order; ++i) {
        const double t = a + h * (gx[i] + 1.0);
        r.t.push_back(t);
        r.sigma.push_back(h * gw[i] * (f.alpha + 1.0) * std::pow(1.0 - t, f.alpha));
      }
    }
  }
  r.lambda.resize(r.t.size());
  for (std::size_t i = 0; i < r.t.size(); ++i)
    r.lambda[i] = r.sigma[i] * std::pow(1.0 - r.t[i], -(2.0 + f.alpha));
  return r;
}

struct FactorNodes {
  std::vector<cplx> z;
  std::vector<double> sigma;
  std::vector<double> lambda;
  std::vector<double> ring_radii;
  std::vector<double> ring_weights;
};

FactorNodes factor_nodes(detail::Factor f, double fock_t_max, int radial, int angular,
                         std::span<const double> breakpoints) {
  const RadialRule r = radial_rule(f, fock_t_max, radial, breakpoints);
  FactorNodes out;
  const std::size_t total = r.t.size() * static_cast<std::size_t>(angular);
  out.z.reserve(total);
  out.sigma.reserve(total);
  out.lambda.reserve(total);
  for (std::size_t ring = 0; ring < r.t.size(); ++ring) {
    const double rho = std::sqrt(r.t[ring]);
    out.ring_radii.push_back(rho);
    out.ring_weights.push_back(r.sigma[ring]);
    for (int j = 0; j < angular; ++j) {
      const double th = 2.0 * M_PI * j / angular;
      out.z.push_back(std::polar(rho, th));
      out.sigma.push_back(r.sigma[ring] / angular);
      out.lambda.push_back(r.lambda[ring] / angular);
    }
  }
  return out;
}

} // namespace

QuadratureRule build_rule(const SpaceSpec& space, int radial_order, int angular_order,
                          std::span<const double> breakpoints) {
  space.validate();
  if (radial_order < 1 || angular_order < 1)
    throw PreconditionError(fmt::format("quadrature orders must be >= 1 (got {}x{})", radial_order,
                                        angular_order));
  QuadratureRule rule;
  rule.space = space;
  rule.radial_order = radial_order;
  rule.angular_order = angular_order;
  const double t_max = space.cutoff_radius() * space.cutoff_radius();
  const FactorNodes a =
      factor_nodes(detail::factor(space, 0), t_max, radial_order, angular_order, breakpoints);
  if (space.kind != SpaceKind::Bidisc) {
    rule.nodes.reserve(a.z.size());
    for (cplx z : a.z) rule.nodes.emplace_back(z);
    rule.sigma_weights = a.sigma;
    rule.lambda_weights = a.lambda;
    rule.ring_radii = a.ring_radii;
    rule.ring_weights = a.ring_weights;
    return rule;
  }
  const FactorNodes b =
      factor_nodes(detail::factor(space, 1), t_max, radial_order, angular_order, breakpoints);
  const std::size_t total = a.z.size() * b.z.size();
  rule.nodes.reserve(total);
  rule.sigma_weights.reserve(total);
  rule.lambda_weights.reserve(total);
  for (std::size_t i = 0; i < a.z.size(); ++i)
    for (std::size_t j = 0; j < b.z.size(); ++j) {
      rule.nodes.emplace_back(a.z[i], b.z[j]);
      rule.sigma_weights.push_back(a.sigma[i] * b.sigma[j]);
      rule.lambda_weights.push_back(a.lambda[i] * b.lambda[j]);
    }
  return rule;
}

int default_radial_order(const SpaceSpec& space) {
  const int n = space.truncation_order;
  if (space.kind == SpaceKind::Bidisc) return std::max(8, n / 2 + 6);
  return std::max(40, n / 2 + 8);
}

int default_angular_order(const SpaceSpec& space) {
  const int n = space.truncation_order;
  if (space.kind == SpaceKind::Bidisc) {
    int m = 16;
    while (m < n + 12) m *= 2;
    return m;
  }
  int m = 64;
  while (m < n + 32) m *= 2;
  return m;
}

QuadratureRule default_rule(const SpaceSpec& space, double resolution_scale,
                            std::span<const double> breakpoints) {
  if (!(resolution_scale > 0.0)) throw PreconditionError("resolution scale must be positive");
  const auto scaled = [&](int v) { return std::max(1, static_cast<int>(std::lround(v * resolution_scale))); };
  return build_rule(space, scaled(default_radial_order(space)), scaled(default_angular_order(space)),
                    breakpoints);
}

namespace {

template <class T>
T weighted_sum(const std::vector<double>& w, std::span<const T> samples) {
  if (samples.size() != w.size())
    throw MismatchError(fmt::format("{} samples for a rule with {} nodes", samples.size(), w.size()));
  T acc{};
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * samples[i];
  return acc;
}

} // namespace

cplx integrate_sigma(const QuadratureRule& rule, std::span<const cplx> samples) {
  return weighted_sum(rule.sigma_weights, samples);
}
cplx integrate_lambda(const QuadratureRule& rule, std::span<const cplx> samples) {
  return weighted_sum(rule.lambda_weights, samples);
}
double integrate_sigma(const QuadratureRule& rule, std::span<const double> samples) {
  return weighted_sum(rule.sigma_weights, samples);
}
double integrate_lambda(const QuadratureRule& rule, std::span<const double> samples) {
  return weighted_sum(rule.lambda_weights, samples);
}

Eigen::MatrixXcd basis_matrix(const QuadratureRule& rule) {
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(rule.size()), rule.space.modes());
  for (std::size_t i = 0; i < rule.size(); ++i)
    b.row(static_cast<Eigen::Index>(i)) = basis_values(rule.space, rule.nodes[i]).transpose();
  return b;
}

} // namespace bergman
