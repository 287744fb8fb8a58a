#pragma once

#include <span>
#include <vector>

#include "bergman/operator_matrix.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

/// One side of a reproducing-kernel boundedness test: value(z, i) for every
/// grid point and unit index, and the supremum.
struct RktSide {
  std::vector<double> values;  // values[z * d + i]
  double sup = 0.0;
};

struct RktReport {
  double p = 0.0;
  double kappa = 0.0;
  double p_threshold = 0.0;  // (4 − κ)/(2 − κ)
  bool admissible = false;   // p above the threshold
  int dim = 0;
  std::vector<DomainPoint> z;
  RktSide primary;  // adjoint-side quantity
  RktSide mirror;   // the operator-side quantity
};

/// p-threshold from κ: (4 − κ)/(2 − κ).
double rkt_threshold(double kappa);

/// sup_i sup_z {∫ (Σ_k |⟨U_z T^*(k_z e_i)(u), e_k⟩|)^p dσ(u)}^{1/p} and the
/// same with T in place of T^*. U_z g is the compressed translation of g's
/// coefficients, sampled on the rule.
RktReport rkt_boundedness_check(const OperatorMatrix& t, const OperatorMatrix& t_adjoint, double p,
                                std::span<const DomainPoint> z_grid, const QuadratureRule& rule);

/// Σ_k ‖⟨(F^*∘φ_z)e_i, e_k⟩‖_{L^p(σ)} and the transposed quantity.
RktReport rkt_toeplitz_symbol_check(const MatrixSymbol& f, double p, std::span<const DomainPoint> z_grid,
                                    const QuadratureRule& rule);

/// Σ_i ‖⟨G^*(z)e_k, (F^*∘φ_z)e_i⟩‖_{L^p(σ)} and the mirrored quantity with F
/// and G exchanged. Entries must be analytic polynomials.
RktReport rkt_product_check(const MatrixSymbol& f, const MatrixSymbol& g, double p,
                            std::span<const DomainPoint> z_grid, const QuadratureRule& rule);

/// {∫ (Σ_k |⟨(F(z) − F(φ_z(u)))e_k, e_i⟩|)^p dσ(u)}^{1/p}; the mirror side
/// repeats the computation for F^*.
RktReport hankel_rkt_check(const MatrixSymbol& f, double p, std::span<const DomainPoint> z_grid,
                           const QuadratureRule& rule);

} // namespace bergman
