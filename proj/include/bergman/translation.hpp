#pragma once

#include <functional>

#include <Eigen/Core>

#include "bergman/operator_matrix.hpp"
#include "bergman/space.hpp"

namespace bergman {

/// Modes needed so that U_z maps span{e_0..e_{n−1}} into the leading
/// returned modes up to double precision (per variable for Bidisc).
int headroom_modes(const SpaceSpec& space, const DomainPoint& z, int n);

/// Scalar block ⟨U_z e_col, e_row⟩ for row < rows, col < cols (per variable
/// for Bidisc, flattened as a·rows + b), by σ-quadrature of
/// e_col(φ_z(w))·k_z(w)·conj(e_row(w)).
Eigen::MatrixXcd translation_block(const SpaceSpec& space, const DomainPoint& z, int rows, int cols);

/// Compression of U_z to the truncated space (block-diagonal over components).
OperatorMatrix translation_matrix(const SpaceSpec& space, const DomainPoint& z);

/// U_z T U_z^* in the plain compressed algebra of T's space.
OperatorMatrix conjugate_compressed(const OperatorMatrix& t, const DomainPoint& z);

/// Leading `n_out` modes of U_z T U_z^*, where T is given on a larger
/// truncation that holds the spread of U_z on the first n_out modes.
OperatorMatrix conjugate_operator(const OperatorMatrix& t, const DomainPoint& z, int n_out);

/// Builds T on a truncation with enough headroom for z, conjugates it, and
/// returns the leading block on `space`.
OperatorMatrix conjugate_operator(const SpaceSpec& space, const std::function<OperatorMatrix(const SpaceSpec&)>& build,
                                  const DomainPoint& z);

struct TranslationResiduals {
  int headroom = 0;
  double unitarity = 0.0;    // ‖U^*U − I‖ on the leading block
  double involution = 0.0;   // ‖U² − I‖ on the leading block
  double self_adjoint = 0.0; // ‖U − U^*‖ on the leading block
};

TranslationResiduals translation_residuals(const SpaceSpec& space, const DomainPoint& z);

} // namespace bergman
