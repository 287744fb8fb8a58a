#pragma once

#include <Eigen/Core>

#include "bergman/coeff_function.hpp"
#include "bergman/space.hpp"

namespace bergman {

/// Operator on the truncated space in the basis {e_m ⊗ e_k}, index m·d + k.
class OperatorMatrix {
public:
  explicit OperatorMatrix(SpaceSpec space);  // zero operator
  OperatorMatrix(SpaceSpec space, Eigen::MatrixXcd entries);

  static OperatorMatrix identity(const SpaceSpec& space);

  const SpaceSpec& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }

  OperatorMatrix adjoint() const;
  CoeffFunction apply(const CoeffFunction& f) const;
  double norm() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(cplx s);

private:
  SpaceSpec space_;
  Eigen::MatrixXcd m_;
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(cplx s, OperatorMatrix a);

double spectral_norm(const Eigen::MatrixXcd& m);
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Indices of the leading `n`-mode truncation inside a larger space (per
/// variable for Bidisc), with components expanded.
std::vector<Eigen::Index> leading_indices(const SpaceSpec& large, int n);
/// Sub-block of `m` (indexed in `large`) on the leading n-mode rows/columns.
Eigen::MatrixXcd leading_block(const SpaceSpec& large, const Eigen::MatrixXcd& m, int n);

} // namespace bergman
