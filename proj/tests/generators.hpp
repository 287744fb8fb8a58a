#pragma once

// Seeded generators of symbols and operators shared by the unit and
// acceptance tests.

#include <random>

#include "bergman/coeff_function.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace gen {

using bergman::cplx;

inline cplx gaussian(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Bounded symbol mixing polynomial, ball-indicator and constant entries.
inline bergman::MatrixSymbol bounded_symbol(const bergman::SpaceSpec& space, std::mt19937_64& rng) {
  using namespace bergman;
  const int d = space.component_dim;
  MatrixSymbol u(space, d);
  const bool fock = space.kind == SpaceKind::Fock;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      switch (std::uniform_int_distribution<int>(0, fock ? 2 : 3)(rng)) {
        case 0:
          u.set(i, k, Constant{gaussian(rng, 0.5)});
          break;
        case 1: {
          const cplx c = fock ? std::polar(uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 6.28))
                              : std::polar(uniform(rng, 0.0, 0.5), uniform(rng, 0.0, 6.28));
          u.set(i, k, BallIndicator{DomainPoint{c}, uniform(rng, 0.2, fock ? 1.5 : 0.8), BallMetric::Intrinsic,
                                    gaussian(rng, 0.5)});
          break;
        }
        case 2:
          u.set(i, k, BallIndicator{DomainPoint{}, uniform(rng, 0.2, fock ? 2.0 : 0.7), BallMetric::Euclidean,
                                    gaussian(rng, 0.5)});
          break;
        default:
          // bounded on the disc
          u.set(i, k, Polynomial{{{gaussian(rng, 0.3), 1, 0}, {gaussian(rng, 0.3), 0, 2}, {gaussian(rng, 0.3), 1, 1}}});
      }
    }
  return u;
}

// Polynomial coefficient function of degree ≤ `degree`.
inline bergman::CoeffFunction polynomial_function(const bergman::SpaceSpec& space, std::mt19937_64& rng, int degree) {
  using namespace bergman;
  CoeffFunction::Coeffs c = CoeffFunction::Coeffs::Zero(space.modes(), space.component_dim);
  for (int m = 0; m <= degree; ++m)
    for (int k = 0; k < space.component_dim; ++k) c(m, k) = gaussian(rng);
  return CoeffFunction::from_coeffs(space, c);
}

// Product of two ball-indicator Toeplitz operators with small balls near the
// origin (compact class).
inline bergman::OperatorMatrix ball_product(const bergman::SpaceSpec& space, std::mt19937_64& rng) {
  using namespace bergman;
  const auto one = [&]() {
    const BallIndicator b{DomainPoint{std::polar(uniform(rng, 0.0, 0.4), uniform(rng, 0.0, 6.28))},
                          uniform(rng, 0.2, 0.4), BallMetric::Intrinsic, 1.0};
    MatrixSymbol u = MatrixSymbol::zero(space);
    for (int i = 0; i < space.component_dim; ++i) u.set(i, i, b);
    if (space.component_dim > 1) u.set(0, 1, BallIndicator{b.center, b.radius, b.metric, gaussian(rng, 0.3)});
    return toeplitz_matrix(space, u);
  };
  return one() * one();
}

// Toeplitz operator of a constant matrix symbol with diagonal entries ≥ 0.5
// (non-compact class).
inline bergman::OperatorMatrix constant_symbol_operator(const bergman::SpaceSpec& space, std::mt19937_64& rng) {
  using namespace bergman;
  const int d = space.component_dim;
  Eigen::MatrixXcd c(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) c(i, k) = i == k ? cplx{0.5 + uniform(rng), 0.0} : 0.2 * gaussian(rng);
  return toeplitz_matrix(space, MatrixSymbol::constant(space, c));
}

} // namespace gen
