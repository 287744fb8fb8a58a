#include "bergman/operator_matrix.hpp"

#include <fmt/format.h>

#include <Eigen/SVD>

#include "bergman/errors.hpp"

namespace bergman {

OperatorMatrix::OperatorMatrix(SpaceSpec space)
    : space_(space), m_(Eigen::MatrixXcd::Zero(space.dim(), space.dim())) {
  space_.validate();
}

OperatorMatrix::OperatorMatrix(SpaceSpec space, Eigen::MatrixXcd entries) : space_(space), m_(std::move(entries)) {
  space_.validate();
  if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
    throw MismatchError(fmt::format("operator is {}x{}, space dimension is {}", m_.rows(), m_.cols(), space_.dim()));
  if (!m_.allFinite()) throw PreconditionError("operator has non-finite entries");
}

OperatorMatrix OperatorMatrix::identity(const SpaceSpec& space) {
  return {space, Eigen::MatrixXcd::Identity(space.dim(), space.dim())};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {space_, m_.adjoint()}; }

CoeffFunction OperatorMatrix::apply(const CoeffFunction& f) const {
  if (f.space() != space_) throw MismatchError("operator and function live on different spaces");
  return {space_, m_ * f.flat()};
}

double OperatorMatrix::norm() const { return spectral_norm(m_); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (other.space_ != space_) throw MismatchError("adding operators on different spaces");
  m_ += other.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  if (other.space_ != space_) throw MismatchError("subtracting operators on different spaces");
  m_ -= other.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.space() != b.space()) throw MismatchError("composing operators on different spaces");
  return {a.space(), a.matrix() * b.matrix()};
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

std::vector<Eigen::Index> leading_indices(const SpaceSpec& large, int n) {
  if (n > large.truncation_order) throw PreconditionError("leading block larger than the space");
  const int d = large.component_dim;
  const int nl = large.truncation_order;
  std::vector<Eigen::Index> idx;
  if (large.kind == SpaceKind::Bidisc) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < d; ++k) idx.push_back(static_cast<Eigen::Index>((a * nl + b) * d + k));
  } else {
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < d; ++k) idx.push_back(static_cast<Eigen::Index>(m * d + k));
  }
  return idx;
}

Eigen::MatrixXcd leading_block(const SpaceSpec& large, const Eigen::MatrixXcd& m, int n) {
  const auto idx = leading_indices(large, n);
  return m(idx, idx);
}

} // namespace bergman
