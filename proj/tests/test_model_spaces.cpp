#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/axioms.hpp"
#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/space.hpp"
#include "oracles.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

SpaceSpec disc(double alpha = 0.0) {
  SpaceSpec s;
  s.alpha = alpha;
  return s;
}

SpaceSpec fock() {
  SpaceSpec s;
  s.kind = SpaceKind::Fock;
  return s;
}

SpaceSpec bidisc() {
  SpaceSpec s;
  s.kind = SpaceKind::Bidisc;
  s.truncation_order = 12;
  s.component_dim = 1;
  return s;
}

} // namespace

TEST_SUITE("model-spaces") {

TEST_CASE("space spec validation") {
  CHECK_NOTHROW(disc().validate());
  CHECK_THROWS_AS(disc(-1.0).validate(), Error);
  SpaceSpec s = disc();
  s.truncation_order = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = disc();
  s.component_dim = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = fock();
  s.fock_cutoff_radius = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK(space_kind_from_string("Fock") == SpaceKind::Fock);
  CHECK(space_kind_from_string(to_string(SpaceKind::Bidisc)) == SpaceKind::Bidisc);
  CHECK_THROWS_AS(space_kind_from_string("ball"), Error);
}

TEST_CASE("disc kernel values against the power series") {
  const SpaceSpec s = disc();
  for (cplx w : {cplx{0.3, 0.1}, cplx{-0.7, 0.2}, cplx{0.0, 0.95}})
    CHECK(std::abs(kernel_eval(s, cplx{}, w) - 1.0) < 1e-15);
  const cplx k = kernel_eval(s, 0.5, 0.5);
  CHECK(k.real() == Approx(16.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(k - oracle::disc_kernel_series(0.5, 0.5)) < 1e-12);
  const cplx z{0.2, -0.6};
  const cplx w{-0.4, 0.3};
  CHECK(std::abs(kernel_eval(s, z, w) - oracle::disc_kernel_series(z, w)) < 1e-12);
  // Hermitian symmetry K_z(w) = conj(K_w(z))
  CHECK(std::abs(kernel_eval(s, z, w) - std::conj(kernel_eval(s, w, z))) < 1e-14);
}

TEST_CASE("weighted disc kernel exponent") {
  const SpaceSpec s = disc(1.5);
  const cplx z{0.3, 0.2};
  const cplx w{-0.1, 0.5};
  const cplx expected = std::pow(1.0 - w * std::conj(z), -3.5);
  CHECK(std::abs(kernel_eval(s, z, w) - expected) < 1e-13);
}

TEST_CASE("Fock kernel") {
  const SpaceSpec s = fock();
  CHECK(kernel_eval(s, 1.0, 1.0).real() == Approx(std::exp(1.0)).epsilon(1e-14));
  const cplx z{1.0, -2.0};
  const cplx w{0.5, 0.7};
  CHECK(std::abs(kernel_eval(s, z, w) - std::exp(w * std::conj(z))) < 1e-12);
}

TEST_CASE("bidisc kernel is the product of factor kernels") {
  const SpaceSpec s = bidisc();
  const DomainPoint z{cplx{0.2, 0.1}, cplx{-0.3, 0.0}};
  const DomainPoint w{cplx{0.5, -0.2}, cplx{0.1, 0.6}};
  const cplx expected = oracle::disc_kernel_series(z.z1, w.z1) * oracle::disc_kernel_series(z.z2, w.z2);
  CHECK(std::abs(kernel_eval(s, z, w) - expected) < 1e-12);
}

TEST_CASE("reproducing property on the quadrature rule") {
  for (const SpaceSpec& s : {disc(), fock()}) {
    const QuadratureRule rule = build_rule(s, 40, 64);
    const Eigen::MatrixXcd b = basis_matrix(rule);
    const std::vector<DomainPoint> points = s.kind == SpaceKind::Fock
                                                ? std::vector<DomainPoint>{cplx{1.0, 0.5}, cplx{-1.5, 0.2}}
                                                : std::vector<DomainPoint>{cplx{0.5, 0.0}, cplx{-0.2, 0.4}};
    for (const DomainPoint& z : points) {
      const Eigen::VectorXcd ez = basis_values(s, z);
      for (int m = 0; m < s.modes(); ++m) {
        cplx acc{};
        for (std::size_t x = 0; x < rule.size(); ++x)
          acc += rule.sigma_weights[x] * std::conj(kernel_eval(s, z, rule.nodes[x])) * b(static_cast<Eigen::Index>(x), m);
        CHECK(std::abs(acc - ez[m]) < 1e-8);
      }
    }
  }
}

TEST_CASE("kernel norms") {
  CHECK(kernel_norm(disc(), cplx{}) == Approx(1.0).epsilon(1e-15));
  CHECK(kernel_norm(disc(), 0.5) == Approx(4.0 / 3.0).epsilon(1e-14));
  const SpaceSpec f = fock();
  CHECK(kernel_norm(f, 1.0) < kernel_norm(f, 2.0));
  CHECK(kernel_norm(f, 2.0) < kernel_norm(f, 3.0));
  CHECK(0.5 * log_kernel_norm_sq(f, 40.0) == Approx(800.0).epsilon(1e-14));
  CHECK(log_kernel_norm_sq(disc(), cplx{0.0, 0.999}) == Approx(-2.0 * std::log(1.0 - 0.999 * 0.999)));
}

TEST_CASE("points outside the disc are rejected") {
  CHECK_THROWS_AS(kernel_eval(disc(), 1.2, 0.0), DomainError);
  CHECK_THROWS_AS(kernel_norm(disc(), cplx{0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(involution(disc(), 0.3, 2.0), DomainError);
  CHECK_THROWS_AS(metric(bidisc(), DomainPoint{0.1, 1.5}, DomainPoint{}), DomainError);
  CHECK_NOTHROW(kernel_norm(fock(), 50.0));
}

TEST_CASE("involutions") {
  std::mt19937_64 rng(99);
  for (const SpaceSpec& s : {disc(), fock()}) {
    const DomainPoint z{cplx{0.4, -0.3}};
    CHECK(std::abs(involution(s, z, cplx{}).z1 - z.z1) < 1e-15);
    CHECK(std::abs(involution(s, z, z).z1) < 1e-15);
    for (int i = 0; i < 1000; ++i) {
      const double radius = s.kind == SpaceKind::Fock ? 5.0 : 0.99;
      const cplx a = oracle::random_in_disc(rng, radius);
      const cplx w = oracle::random_in_disc(rng, radius);
      CHECK(std::abs(involution(s, a, involution(s, a, w)).z1 - w) < 1e-12);
    }
  }
  const cplx got = involution(disc(), 0.5, cplx{0.0, 0.25}).z1;
  CHECK(std::abs(got - cplx{0.5, -0.25} / cplx{1.0, -0.125}) < 1e-15);
  CHECK(std::abs(involution(fock(), cplx{1, 1}, cplx{3, -1}).z1 - cplx{-2, 2}) < 1e-15);
  const DomainPoint bz{cplx{0.1, 0.2}, cplx{-0.5, 0.0}};
  const DomainPoint bw{cplx{0.3, 0.0}, cplx{0.2, 0.2}};
  const DomainPoint moved = involution(bidisc(), bz, bw);
  CHECK(std::abs(moved.z1 - oracle::mobius(bz.z1, bw.z1)) < 1e-15);
  CHECK(std::abs(moved.z2 - oracle::mobius(bz.z2, bw.z2)) < 1e-15);
}

TEST_CASE("metrics") {
  const SpaceSpec d = disc();
  CHECK(metric(d, 0.3, 0.3) == 0.0);
  CHECK(metric(d, cplx{}, 0.5) == Approx(0.549306144334055).epsilon(1e-13));
  CHECK(metric(fock(), cplx{1.0, 1.0}, 1.0) == Approx(1.0));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const cplx a = oracle::random_in_disc(rng, 0.95);
    const cplx u = oracle::random_in_disc(rng, 0.95);
    const cplx v = oracle::random_in_disc(rng, 0.95);
    const double direct = std::atanh(oracle::pseudo_hyperbolic(u, v));
    CHECK(metric(d, u, v) == Approx(direct).epsilon(1e-10));
    CHECK(metric(d, u, v) == Approx(metric(d, v, u)).epsilon(1e-12));
    CHECK(std::abs(metric(d, oracle::mobius(a, u), oracle::mobius(a, v)) - metric(d, u, v)) < 1e-10);
  }
  const SpaceSpec b = bidisc();
  const DomainPoint p{cplx{0.1, 0.0}, cplx{0.6, 0.0}};
  const DomainPoint q{cplx{0.2, 0.0}, cplx{0.0, 0.0}};
  CHECK(metric(b, p, q) == Approx(std::max(metric(d, 0.1, 0.2), metric(d, 0.6, 0.0))));
}

TEST_CASE("densities") {
  CHECK(sigma_density(disc(), cplx{}) == Approx(1.0 / M_PI));
  CHECK(sigma_density(fock(), cplx{}) == Approx(1.0 / M_PI));
  CHECK(sigma_density(disc(2.0), 0.5) == Approx(3.0 / M_PI * 0.75 * 0.75));
  const SpaceSpec d = disc();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const cplx z = oracle::random_in_disc(rng, 0.9);
    const cplx a = oracle::random_in_disc(rng, 0.9);
    CHECK(lambda_density(d, z) == Approx(1.0 / (M_PI * std::pow(1.0 - std::norm(z), 2))).epsilon(1e-12));
    // dλ is Möbius invariant: λ(φ_a z)|φ_a'(z)|² = λ(z)
    const double jac = std::norm((1.0 - std::norm(a)) / std::pow(1.0 - std::conj(a) * z, 2));
    CHECK(lambda_density(d, oracle::mobius(a, z)) * jac == Approx(lambda_density(d, z)).epsilon(1e-10));
  }
}

TEST_CASE("basis values and kernel tail") {
  const SpaceSpec d = disc();
  const Eigen::VectorXcd b = basis_values(d, 0.5);
  CHECK(std::abs(b[1] - std::sqrt(2.0) * 0.5) < 1e-15);
  // Σ_{m ≥ N}(m+1)|z|^{2m} / K_z(z) summed directly
  for (double r : {0.3, 0.6, 0.8}) {
    double tail = 0.0;
    for (int m = d.truncation_order; m < 5000; ++m) tail += (m + 1) * std::pow(r * r, m);
    tail *= std::pow(1.0 - r * r, 2);
    CHECK(kernel_tail(d, r) == Approx(tail).epsilon(1e-10));
  }
  const double rc = certified_radius(d, 1e-10);
  CHECK(kernel_tail(d, rc) <= 1e-10 * (1.0 + 1e-6));
  CHECK(kernel_tail(d, rc + 1e-3) > 1e-10);
  // Fock tail at the origin vanishes
  CHECK(kernel_tail(fock(), cplx{}) == Approx(0.0));
}

TEST_CASE("exact kernel/involution identity") {
  std::mt19937_64 rng(3);
  for (const SpaceSpec& s : {disc(), disc(0.7), fock()}) {
    for (int i = 0; i < 1000; ++i) {
      const double radius = s.kind == SpaceKind::Fock ? 4.0 : 0.95;
      const cplx z = oracle::random_in_disc(rng, radius);
      const cplx w = oracle::random_in_disc(rng, radius);
      const double lhs = std::abs(normalized_kernel_product(s, z, w)) * kernel_norm(s, involution(s, z, w));
      CHECK(std::abs(lhs - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("axiom suite passes for the model spaces") {
  for (const SpaceSpec& s : {disc(), fock(), bidisc()}) {
    const QuadratureRule rule = s.kind == SpaceKind::Bidisc ? default_rule(s) : build_rule(s, 40, 64);
    for (const AxiomCheck& c : verify_axioms(rule)) {
      INFO(to_string(s.kind), " ", c.name, " = ", c.value);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("weak-null profile along a ray") {
  const SpaceSpec d = disc();
  const DomainPoint w{cplx{0.2, 0.1}};
  double prev = 1.0;
  for (double r : boundary_shells(d)) {
    const double cur = std::abs(normalized_kernel_product(d, std::polar(r, 0.5), w));
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < 1e-3);
}

} // TEST_SUITE
