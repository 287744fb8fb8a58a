#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bergman/coeff_function.hpp"
#include "bergman/operator_matrix.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

enum class Assembly {
  Auto,  // FFT on ring-structured rules, dense otherwise
  Fft,
  Dense,
};

/// Rule resolving every entry ∫ u e_m conj(e_m') dσ exactly for polynomial
/// symbols, with panels split at centred indicator radii.
QuadratureRule toeplitz_rule(const SpaceSpec& space, const MatrixSymbol& u, double resolution_scale = 1.0);

/// Scalar block ∫ s(w) e_m(w) conj(e_m'(w)) dσ(w), rows m', columns m.
Eigen::MatrixXcd scalar_toeplitz_block(const SpaceSpec& space, const ScalarSymbol& s, const QuadratureRule& rule,
                                       Assembly method = Assembly::Auto);

OperatorMatrix toeplitz_matrix(const SpaceSpec& space, const MatrixSymbol& u, const QuadratureRule& rule,
                               Assembly method = Assembly::Auto);
OperatorMatrix toeplitz_matrix(const SpaceSpec& space, const MatrixSymbol& u, double resolution_scale = 1.0);
OperatorMatrix toeplitz_matrix(const MatrixSymbol& u, double resolution_scale = 1.0);

struct PointMass {
  DomainPoint location;
  cplx weight{1.0, 0.0};
  Eigen::MatrixXcd matrix;  // d×d, empty means identity
};

OperatorMatrix toeplitz_measure_matrix(const SpaceSpec& space, std::span<const PointMass> atoms);
/// Measure Σ_x weights[x] δ_x on the rule nodes with a constant component
/// matrix (empty means identity).
OperatorMatrix toeplitz_measure_matrix(const SpaceSpec& space, const QuadratureRule& rule,
                                       std::span<const cplx> weights, const Eigen::MatrixXcd& matrix = {});

/// Block projections onto the first d' components and onto the rest.
std::pair<OperatorMatrix, OperatorMatrix> truncation_operators(const SpaceSpec& space, int d_prime);

struct HankelResult {
  Eigen::MatrixXcd residual;  // nodes × d samples of (I − P)(F f)
  double norm = 0.0;          // L²(σ) norm of the residual
};

HankelResult hankel_apply(const MatrixSymbol& f_symbol, const CoeffFunction& f, const QuadratureRule& rule);
HankelResult hankel_apply(const MatrixSymbol& f_symbol, const CoeffFunction& f);

/// (f ⊗ g) h = ⟨h, g⟩ f
OperatorMatrix rank_one(const CoeffFunction& f, const CoeffFunction& g);

/// Σ_{i,k} T_{f_i E_ii} T_{δ₀ E_ii / ‖K_0‖} T_{conj(g_k) E_ii} T_{E_ik}
OperatorMatrix rank_one_toeplitz_sum(const CoeffFunction& f, const CoeffFunction& g);

} // namespace bergman
