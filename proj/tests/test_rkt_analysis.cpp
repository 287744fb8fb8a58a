#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/essential_norm.hpp"
#include "bergman/rkt.hpp"
#include "bergman/toeplitz.hpp"
#include "generators.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

SpaceSpec space(SpaceKind kind, int n, int d) {
  SpaceSpec s;
  s.kind = kind;
  s.truncation_order = n;
  s.component_dim = d;
  return s;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<DomainPoint> ring_grid(double r, int count) {
  std::vector<DomainPoint> out{DomainPoint{}};
  for (double a : uniform_angles(count)) out.emplace_back(std::polar(r, a));
  return out;
}

} // namespace

TEST_SUITE("rkt-analysis") {

TEST_CASE("Berezin transform of basic operators") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 32, 2);
  const OperatorMatrix id = OperatorMatrix::identity(s);
  for (const DomainPoint& z : ring_grid(0.5, 6))
    CHECK(max_abs(berezin(id, z) - Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);

  const MatrixSymbol ball = MatrixSymbol::scalar_times_identity(
      s, BallIndicator{DomainPoint{}, 0.5, BallMetric::Euclidean, 1.0});
  CHECK(max_abs(berezin(toeplitz_matrix(s, ball), DomainPoint{}) - 0.25 * Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);

  const CoeffFunction e0 = CoeffFunction::basis(s, 0, 0);
  const OperatorMatrix proj = rank_one(e0, e0);
  for (double r : {0.0, 0.2, 0.4, 0.5}) {
    const Eigen::MatrixXcd b = berezin(proj, std::polar(r, 1.1));
    CHECK(b(0, 0).real() == Approx(std::pow(1.0 - r * r, 2)).epsilon(1e-12));
    CHECK(std::abs(b(1, 1)) < 1e-15);
  }
}

TEST_CASE("Berezin transform is Hermitian and bounded by the norm") {
  std::mt19937_64 rng(31);
  for (SpaceKind kind : {SpaceKind::BergmanDisc, SpaceKind::Fock}) {
    const SpaceSpec s = space(kind, 24, 2);
    for (int i = 0; i < 6; ++i) {
      const MatrixSymbol u = gen::bounded_symbol(s, rng);
      const OperatorMatrix t = toeplitz_matrix(s, u);
      const OperatorMatrix h = t + t.adjoint();
      const double bound = t.norm();
      for (const DomainPoint& z : ring_grid(0.5, 5)) {
        const Eigen::MatrixXcd bh = berezin(h, z);
        CHECK(max_abs(bh - bh.adjoint()) < 1e-12);
        CHECK(max_abs(berezin(t, z)) <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("Berezin decay profile") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 32, 2);
  const std::vector<double> radii{0.5, 0.6, 0.7, 0.8, 0.9};
  const std::vector<double> angles = uniform_angles(8);
  std::mt19937_64 rng(5);
  const BerezinProfile compact = berezin_decay_profile(gen::ball_product(s, rng), radii, angles, 0.05);
  CHECK(compact.decaying);
  CHECK(compact.max_entry.back() < 0.05);
  CHECK(compact.transforms.size() == radii.size() * angles.size());
  const BerezinProfile flat = berezin_decay_profile(OperatorMatrix::identity(s), radii, angles, 0.05);
  CHECK_FALSE(flat.decaying);
  for (double m : flat.max_entry) CHECK(m == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Berezin injectivity on small truncations") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 32, 1);
  const InjectivityReport r = berezin_injectivity_probe(s, 1, 2);
  CHECK(r.operator_dim == 4);
  CHECK(r.rank == 4);
  CHECK(r.full_rank);
  const InjectivityReport r1 = berezin_injectivity_probe(s, 1, 1);
  CHECK(r1.rank == 1);
  const InjectivityReport r2 = berezin_injectivity_probe(s, 2, 2);
  CHECK(r2.operator_dim == 16);
  CHECK(r2.full_rank);
  const InjectivityReport f = berezin_injectivity_probe(space(SpaceKind::Fock, 16, 1), 1, 3);
  CHECK(f.full_rank);
  CHECK(injectivity_grid(s, 10).size() >= 10);
  CHECK(max_abs(berezin(OperatorMatrix(s), 0.3)) == 0.0);
}

TEST_CASE("reproducing-kernel test on explicit operators") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 16, 2);
  const QuadratureRule rule = default_rule(s);
  const std::vector<DomainPoint> origin{DomainPoint{}};

  const OperatorMatrix zero(s);
  const RktReport rz = rkt_boundedness_check(zero, zero, 4.0, origin, rule);
  CHECK(rz.primary.sup == 0.0);
  CHECK(rz.mirror.sup == 0.0);

  const OperatorMatrix id = OperatorMatrix::identity(s);
  const RktReport ri = rkt_boundedness_check(id, id, 4.0, origin, rule);
  CHECK(ri.primary.sup == Approx(1.0).epsilon(1e-12));
  CHECK(ri.mirror.sup == Approx(1.0).epsilon(1e-12));
  CHECK(ri.p_threshold == Approx(3.0));
  CHECK(ri.admissible);
  CHECK_FALSE(rkt_boundedness_check(id, id, 2.5, origin, rule).admissible);

  // T^* k_0 e_0 = P(conj w) = 0, while T k_0 e_0 = w e_0 with ‖w‖_4⁴ = 1/3
  const MatrixSymbol shift = MatrixSymbol::unit(s, 0, 0, Polynomial{{Monomial{1.0, 1, 0}}});
  const OperatorMatrix t = toeplitz_matrix(s, shift);
  const RktReport rs = rkt_boundedness_check(t, t.adjoint(), 4.0, origin, rule);
  CHECK(rs.primary.sup < 1e-12);
  CHECK(rs.mirror.sup == Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));

  const MatrixSymbol conj_w = MatrixSymbol::unit(s, 0, 0, Polynomial{{Monomial{1.0, 0, 1}}});
  const RktReport rh = hankel_rkt_check(conj_w, 4.0, origin, rule);
  CHECK(rh.primary.sup == Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));
  CHECK(rh.mirror.sup == Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));

  CHECK(rkt_threshold(0.0) == Approx(2.0));
  CHECK(rkt_threshold(1.0) == Approx(3.0));
}

TEST_CASE("reproducing-kernel quantity is dominated by the symbol quantity") {
  std::mt19937_64 rng(47);
  for (SpaceKind kind : {SpaceKind::BergmanDisc, SpaceKind::Fock}) {
    const SpaceSpec s = space(kind, 16, 2);
    const QuadratureRule rule = default_rule(s);
    const std::vector<DomainPoint> grid = ring_grid(kind == SpaceKind::Fock ? 1.0 : 0.4, 4);
    const double p = kind == SpaceKind::Fock ? 3.0 : 4.0;
    for (int i = 0; i < 4; ++i) {
      const MatrixSymbol u = gen::bounded_symbol(s, rng);
      const OperatorMatrix t = toeplitz_matrix(s, u);
      const RktReport lhs = rkt_boundedness_check(t, t.adjoint(), p, grid, rule);
      const RktReport rhs = rkt_toeplitz_symbol_check(u, p, grid, rule);
      CHECK(lhs.primary.sup <= 1.05 * rhs.primary.sup + 1e-12);
      CHECK(lhs.mirror.sup <= 1.05 * rhs.mirror.sup + 1e-12);
    }
  }
}

TEST_CASE("product check requires analytic polynomials") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 16, 1);
  const QuadratureRule rule = default_rule(s);
  const std::vector<DomainPoint> origin{DomainPoint{}};
  const MatrixSymbol f = MatrixSymbol::unit(s, 0, 0, Polynomial{{Monomial{1.0, 1, 0}}});
  const MatrixSymbol g = MatrixSymbol::identity(s);
  const RktReport r = rkt_product_check(f, g, 4.0, origin, rule);
  CHECK(r.primary.sup == Approx(std::pow(1.0 / 3.0, 0.25)).epsilon(1e-10));
  const MatrixSymbol bad = MatrixSymbol::unit(s, 0, 0, Polynomial{{Monomial{1.0, 0, 1}}});
  CHECK_THROWS_AS(rkt_product_check(bad, g, 4.0, origin, rule), PreconditionError);
}

TEST_CASE("essential norm estimates") {
  const SpaceSpec s = space(SpaceKind::BergmanDisc, 24, 2);
  const std::vector<double> shells{0.5, 0.7, 0.9};
  const std::vector<double> angles = uniform_angles(6);
  const cplx c{0.6, -0.8};
  const EssentialNormReport scaled = essential_norm_estimate(c * OperatorMatrix::identity(s), shells, angles);
  // the compressed conjugate of c·I loses a little mass near the boundary
  CHECK(scaled.estimate <= std::abs(c) + 1e-12);
  CHECK(scaled.estimate >= 0.9 * std::abs(c));
  CHECK(scaled.probe_count == default_probe_set(s).size());
  CHECK(default_probe_set(s).size() == 24u * 2u + 8u);

  const CoeffFunction e0 = CoeffFunction::basis(s, 0, 0);
  const EssentialNormReport r1 = essential_norm_estimate(rank_one(e0, e0), shells, angles);
  CHECK(r1.monotone_tail);
  for (std::size_t i = 1; i < r1.lower_profile.size(); ++i) CHECK(r1.lower_profile[i] <= r1.lower_profile[i - 1]);
  CHECK(r1.estimate < r1.lower_profile.front());
  CHECK(r1.singular_value_proxy < 1e-12);

  for (const CoeffFunction& f : default_probe_set(s)) CHECK(norm(f) == Approx(1.0).epsilon(1e-12));
}

} // TEST_SUITE
