#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rudin_forelli.hpp"
#include "bergman/schur.hpp"
#include "bergman/symbol.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

SpaceSpec disc(double alpha = 0.0) {
  SpaceSpec s;
  s.alpha = alpha;
  s.component_dim = 1;
  return s;
}

SpaceSpec fock() {
  SpaceSpec s = disc();
  s.kind = SpaceKind::Fock;
  return s;
}

std::vector<double> samples(const QuadratureRule& rule, const std::function<double(cplx)>& f) {
  std::vector<double> out;
  for (const DomainPoint& p : rule.nodes) out.push_back(f(p.z1));
  return out;
}

std::vector<cplx> csamples(const QuadratureRule& rule, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> out;
  for (const DomainPoint& p : rule.nodes) out.push_back(f(p.z1));
  return out;
}

// ∫ over the Euclidean disc D(c, R) of the disc λ-density, by a polar
// Gauss rule centred at c (smooth integrand, so spectrally accurate).
double lambda_of_disc(cplx c, double radius) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(60, x, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double rho = 0.5 * radius * (x[i] + 1.0);
    for (int j = 0; j < 256; ++j) {
      const cplx z = c + std::polar(rho, 2.0 * M_PI * j / 256);
      acc += 0.5 * radius * w[i] * rho * (2.0 * M_PI / 256) / (M_PI * std::pow(1.0 - std::norm(z), 2));
    }
  }
  return acc;
}

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre and Gauss-Jacobi nodes") {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(12, x, w);
  for (int k = 0; k <= 23; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], k);
    CHECK(acc == Approx(k % 2 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-14));
  }
  gauss_jacobi(10, 1.5, 0.0, x, w);
  for (int k = 0; k <= 19; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], k);
    const double ref = oracle::simpson([&](double t) { return std::pow(1.0 - t, 1.5) * std::pow(t, k); }, -1.0, 1.0, 1e-14);
    CHECK(acc == Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("sigma is a probability measure") {
  for (const SpaceSpec& s : {disc(), disc(0.7), disc(-0.5), fock()}) {
    const QuadratureRule rule = build_rule(s, 40, 64);
    double total = 0.0;
    for (double w : rule.sigma_weights) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < rule.size(); ++i)
      CHECK(rule.lambda_weights[i] == Approx(rule.sigma_weights[i] * std::exp(log_kernel_norm_sq(s, rule.nodes[i]))));
  }
}

TEST_CASE("monomial moments") {
  const QuadratureRule rule = build_rule(disc(), 40, 64);
  const double ref = oracle::simpson([](double t) { return t; }, 0.0, 1.0);
  CHECK(integrate_sigma(rule, samples(rule, [](cplx z) { return std::norm(z); })) == Approx(ref).epsilon(1e-13));
  CHECK(ref == Approx(0.5));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const cplx v = integrate_sigma(rule, csamples(rule, [&](cplx z) { return std::pow(z, a) * std::pow(std::conj(z), b); }));
      if (a != b) CHECK(std::abs(v) < 1e-14);
    }
  // exact up to total degree 2·radial − 2 in (z, conj z)
  for (int a : {10, 25, 39}) {
    const double v = integrate_sigma(rule, samples(rule, [&](cplx z) { return std::pow(std::norm(z), a); }));
    CHECK(v == Approx(1.0 / (a + 1)).epsilon(1e-12));
  }
  const SpaceSpec weighted = disc(1.3);
  const QuadratureRule wr = build_rule(weighted, 30, 32);
  const double wref = oracle::simpson([](double t) { return t * t * 2.3 * std::pow(1.0 - t, 1.3); }, 0.0, 1.0, 1e-15);
  CHECK(integrate_sigma(wr, samples(wr, [](cplx z) { return std::norm(z) * std::norm(z); })) == Approx(wref).epsilon(1e-9));
  const QuadratureRule fr = build_rule(fock(), 40, 64);
  CHECK(integrate_sigma(fr, samples(fr, [](cplx z) { return std::pow(std::norm(z), 5); })) == Approx(120.0).epsilon(1e-12));
}

TEST_CASE("lambda mass of a centred disc") {
  const double radii[] = {0.5};
  const QuadratureRule rule = build_rule(disc(), 40, 64, radii);
  const double v = integrate_lambda(rule, samples(rule, [](cplx z) { return std::abs(z) < 0.5 ? 1.0 : 0.0; }));
  const double ref = oracle::simpson([](double t) { return std::pow(1.0 - t, -2.0); }, 0.0, 0.25);
  CHECK(ref == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(v == Approx(ref).epsilon(1e-8));
}

TEST_CASE("lambda is invariant under involutions") {
  std::mt19937_64 rng(77);
  const SpaceSpec s = disc();
  for (int i = 0; i < 20; ++i) {
    const cplx c = oracle::random_in_disc(rng, 0.6);
    const cplx a = oracle::random_in_disc(rng, 0.6);
    const double rho = 0.1 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
    const BallIndicator ball{DomainPoint{c}, rho, BallMetric::Intrinsic};
    const BallIndicator moved{involution(s, a, c), rho, BallMetric::Intrinsic};
    const auto e1 = ball_factor_disc(s, ball, 0);
    const auto e2 = ball_factor_disc(s, moved, 0);
    REQUIRE(e1);
    REQUIRE(e2);
    const double t = std::tanh(rho);
    CHECK(lambda_of_disc(e1->center, e1->radius) == Approx(t * t / (1.0 - t * t)).epsilon(1e-6));
    CHECK(lambda_of_disc(e2->center, e2->radius) == Approx(lambda_of_disc(e1->center, e1->radius)).epsilon(1e-6));
  }
}

TEST_CASE("rule preconditions") {
  CHECK_THROWS_AS(build_rule(disc(), 0, 16), PreconditionError);
  CHECK_THROWS_AS(build_rule(disc(), 8, 0), PreconditionError);
  const QuadratureRule rule = build_rule(disc(), 4, 4);
  const std::vector<double> short_samples(3, 1.0);
  CHECK_THROWS_AS(integrate_sigma(rule, short_samples), MismatchError);
}

TEST_CASE("matrix Schur test") {
  SUBCASE("constant kernel attains the bound") {
    const std::vector<double> mu(10, 0.1);
    const std::vector<double> nu(10, 0.1);
    MatrixKernelSample k(mu, nu, 1);
    for (std::size_t x = 0; x < 10; ++x)
      for (std::size_t y = 0; y < 10; ++y) k.at(x, y, 0, 0) = 2.5;
    const std::vector<double> h(10, 1.0);
    const SchurResult r = schur_test(k, h, 2.0);
    CHECK(r.c1 == Approx(2.5).epsilon(1e-14));
    CHECK(r.c2 == Approx(2.5).epsilon(1e-14));
    CHECK(r.bound == Approx(2.5).epsilon(1e-14));
    CHECK(std::abs(discretized_operator_norm(k) - r.bound) < 1e-10);
  }
  SUBCASE("zero kernel") {
    const QuadratureRule rule = build_rule(disc(), 3, 4);
    const MatrixKernelSample k(rule, 2);
    const std::vector<double> h(rule.size(), 1.0);
    CHECK(schur_test(k, h, 2.0).bound == 0.0);
    CHECK(discretized_operator_norm(k) == 0.0);
  }
  SUBCASE("random kernels are dominated") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 50;
      std::vector<double> mu(n);
      std::vector<double> nu(n);
      for (auto& v : mu) v = u(rng) + 0.01;
      for (auto& v : nu) v = u(rng) + 0.01;
      MatrixKernelSample k(mu, nu, 3);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) k.at(x, y, i, j) = u(rng);
      std::vector<double> h(n);
      for (auto& v : h) v = 0.2 + u(rng);
      const double p = 1.5 + u(rng);
      CHECK(discretized_operator_norm(k) <= schur_test(k, h, p).bound * (1.0 + 1e-12));
    }
  }
  SUBCASE("preconditions") {
    const std::vector<double> w(4, 0.25);
    MatrixKernelSample k(w, w, 1);
    const std::vector<double> h(4, 1.0);
    CHECK_THROWS_AS(schur_test(k, h, 1.0), PreconditionError);
    const std::vector<double> bad = {1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(schur_test(k, bad, 2.0), PreconditionError);
    k.at(0, 1, 0, 0) = -1.0;
    CHECK_THROWS_AS(schur_test(k, h, 2.0), PreconditionError);
    CHECK_THROWS_AS(MatrixKernelSample(std::vector<double>{1.0, -0.5}, w, 1).validate(), PreconditionError);
  }
}

TEST_CASE("Rudin-Forelli integrals") {
  const SpaceSpec s = disc();
  const auto grid = default_z_grid(s);
  CHECK(grid.size() == 33);
  const RudinForelliResult r = rudin_forelli(s, 3.0, 3.0, grid);
  REQUIRE_FALSE(r.divergent);
  // K_0 ≡ 1: I(0) = ∫₀¹ (1 − t)^{r−2} dt
  const double i0 = oracle::simpson([](double t) { return 1.0 - t; }, 0.0, 1.0);
  CHECK(std::abs(r.i_values[0] - i0) < 1e-6);
  CHECK(std::abs(r.i_values[0] - 0.5) < 1e-6);
  CHECK(r.j_values[0] == Approx(r.i_values[0]).epsilon(1e-14));
  CHECK(std::isfinite(r.sup_i));
  // frozen band: exact in these invariant spaces
  CHECK(r.ratio_min > 1.0 - 1e-9);
  CHECK(r.ratio_max < 1.0 + 1e-9);

  const RudinForelliResult fine = rudin_forelli(s, 3.0, 3.0, grid, rudin_forelli_rule(s, 512));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(fine.i_values[i] - r.i_values[i]) < 1e-6);
    CHECK(std::abs(fine.j_values[i] - r.j_values[i]) < 1e-6);
  }

  const RudinForelliResult f = rudin_forelli(fock(), 3.0, 3.0, default_z_grid(fock()));
  // λ = dA/π on Fock, so I(0) = ∫₀^∞ e^{−3t/2} dt
  CHECK(f.i_values[0] == Approx(2.0 / 3.0).epsilon(1e-10));

  const RudinForelliResult skew = rudin_forelli(s, 3.0, 2.0, grid);
  CHECK(skew.ratio_min > 1.0 - 1e-9);
  CHECK(skew.ratio_max < 1.0 + 1e-9);
  CHECK(skew.sup_i == Approx(0.54621218802).epsilon(1e-8));
}

TEST_CASE("Rudin-Forelli integrability") {
  const SpaceSpec s = disc();
  const auto grid = default_z_grid(s);
  CHECK(rudin_forelli(s, 1.0, 1.0, grid).divergent);
  CHECK_FALSE(rudin_forelli_integrable(s, 1.0));
  CHECK(rudin_forelli_integrable(s, 1.01));
  const double rs[] = {0.5, 1.0, 1.25, 1.5, 2.0};
  CHECK(empirical_kappa(s, rs) == 1.25);
  const double ss[] = {1.0, 3.0};
  const auto rows = rudin_forelli_sweep(s, rs, ss, grid, rudin_forelli_rule(s));
  CHECK(rows.size() == 10);
  for (const auto& row : rows) CHECK(row.divergent == !rudin_forelli_integrable(s, row.r));
}

} // TEST_SUITE
