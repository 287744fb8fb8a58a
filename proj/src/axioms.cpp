#include "bergman/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>


namespace bergman {
namespace {

class PointSampler {
public:
  PointSampler(const SpaceSpec& space, std::uint64_t seed)
      : space_(space), gen_(seed), max_radius_(space.kind == SpaceKind::Fock ? 5.0 : 0.95) {}

  DomainPoint operator()() {
    DomainPoint p{draw()};
    if (space_.kind == SpaceKind::Bidisc) p.z2 = draw();
    return p;
  }

private:
  cplx draw() {
    // uniform in the disc of radius max_radius_
    const double r = max_radius_ * std::sqrt(unit_(gen_));
    return std::polar(r, 2.0 * std::numbers::pi * unit_(gen_));
  }

  SpaceSpec space_;
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  double max_radius_;
};

DomainPoint ray_point(const SpaceSpec& space, double radius, double theta) {
  const cplx c = std::polar(radius, theta);
  return space.kind == SpaceKind::Bidisc ? DomainPoint{c, c} : DomainPoint{c};
}

double log_abs_normalized_product(const SpaceSpec& space, const DomainPoint& z, const DomainPoint& w) {
  return log_abs_kernel(space, z, w) - 0.5 * log_kernel_norm_sq(space, z) - 0.5 * log_kernel_norm_sq(space, w);
}

AxiomCheck make_check(std::string name, std::string statement, double value, double tol) {
  return {std::move(name), std::move(statement), value, tol, value <= tol};
}

std::vector<DomainPoint> reproducing_grid(const SpaceSpec& space) {
  const std::vector<double> radii = space.kind == SpaceKind::Fock ? std::vector{0.0, 1.0, 2.0}
                                                                  : std::vector{0.0, 0.25, 0.5};
  std::vector<DomainPoint> out;
  for (double r : radii)
    for (int j = 0; j < (r == 0.0 ? 1 : 4); ++j) out.push_back(ray_point(space, r, 0.4 + j * std::numbers::pi / 2));
  return out;
}

} // namespace

std::vector<double> boundary_shells(const SpaceSpec& space) {
  std::vector<double> out;
  if (space.kind == SpaceKind::Fock)
    for (int j = 1; j <= 10; ++j) out.push_back(j);
  else
    for (int j = 3; j <= 12; ++j) out.push_back(1.0 - std::ldexp(1.0, -j));
  return out;
}

std::vector<AxiomCheck> verify_axioms(const QuadratureRule& rule, const AxiomSuiteOptions& options) {
  const SpaceSpec& space = rule.space;
  space.validate();
  std::vector<AxiomCheck> checks;

  double mass = 0.0;
  for (double w : rule.sigma_weights) mass += w;
  checks.push_back(make_check("sigma_mass", "sigma is a probability measure", std::abs(mass - 1.0),
                              options.orthonormality_tol));

  const Eigen::MatrixXcd b = basis_matrix(rule);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.sigma_weights.data(),
                                                              static_cast<Eigen::Index>(rule.size()));
  const Eigen::MatrixXcd gram = b.adjoint() * w.asDiagonal() * b;
  const double ortho = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  checks.push_back(make_check("orthonormal_basis", "monomial basis is orthonormal in L2(sigma)", ortho,
                              options.orthonormality_tol));

  // ∫ conj(K_z(x)) e_m(x) dσ(x) = e_m(z)
  double repro = 0.0;
  for (const DomainPoint& z : reproducing_grid(space)) {
    Eigen::VectorXcd kw(static_cast<Eigen::Index>(rule.size()));
    for (std::size_t x = 0; x < rule.size(); ++x)
      kw[static_cast<Eigen::Index>(x)] = rule.sigma_weights[x] * std::conj(kernel_eval(space, z, rule.nodes[x]));
    const Eigen::VectorXcd lhs = b.transpose() * kw;
    repro = std::max(repro, (lhs - basis_values(space, z)).cwiseAbs().maxCoeff());
  }
  checks.push_back(make_check("reproducing_property", "f(z) = <f, K_z> for every basis function", repro,
                              options.reproducing_tol));

  PointSampler sample(space, options.seed);
  double invol = 0.0;
  double exact = 0.0;
  double metric_inv = 0.0;
  for (int i = 0; i < options.random_pairs; ++i) {
    const DomainPoint z = sample();
    const DomainPoint u = sample();
    const DomainPoint v = sample();
    const DomainPoint back = involution(space, z, involution(space, z, u));
    invol = std::max({invol, std::abs(back.z1 - u.z1), std::abs(back.z2 - u.z2)});
    const double prod = std::exp(log_abs_normalized_product(space, z, u));
    exact = std::max(exact, std::abs(prod * kernel_norm(space, involution(space, z, u)) - 1.0));
    const double moved = metric(space, involution(space, z, u), involution(space, z, v));
    metric_inv = std::max(metric_inv, std::abs(moved - metric(space, u, v)));
  }
  checks.push_back(make_check("involutivity", "phi_z(phi_z(w)) = w", invol, options.involution_tol));
  checks.push_back(make_check("kernel_involution_identity", "|<k_z, k_w>| * ||K_{phi_z(w)}|| = 1", exact,
                              options.exact_identity_tol));
  checks.push_back(make_check("metric_invariance", "d(phi_a(u), phi_a(v)) = d(u, v)", metric_inv,
                              options.metric_tol));

  // Monotone profiles along rays; the value counts violations.
  const auto shells = boundary_shells(space);
  const std::vector<DomainPoint> anchors = {DomainPoint{}, ray_point(space, 0.3, 1.0), ray_point(space, 0.5, -2.0)};
  int null_violations = 0;
  int growth_violations = 0;
  for (int a = 0; a < 4; ++a) {
    const double theta = 0.3 + a * std::numbers::pi / 2;
    for (const DomainPoint& anchor : anchors) {
      double prev = 0.0;
      for (std::size_t j = 0; j < shells.size(); ++j) {
        const double cur = log_abs_normalized_product(space, ray_point(space, shells[j], theta), anchor);
        if (j > 0 && !(cur < prev)) ++null_violations;
        prev = cur;
      }
    }
    double prev = 0.0;
    for (std::size_t j = 0; j < shells.size(); ++j) {
      const double cur = log_kernel_norm_sq(space, ray_point(space, shells[j], theta));
      if (j > 0 && !(cur > prev)) ++growth_violations;
      prev = cur;
    }
  }
  checks.push_back(make_check("weak_null_decay", "|<k_z, k_w>| decreases strictly as z approaches the boundary",
                              null_violations, 0.0));
  checks.push_back(make_check("kernel_norm_growth", "||K_z|| increases strictly as z approaches the boundary",
                              growth_violations, 0.0));
  return checks;
}

} // namespace bergman
