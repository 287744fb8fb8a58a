#include "bergman/translation.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

int factor_headroom(detail::Factor f, double r, int n) {
  if (r == 0.0) return n;
  double modes = 0.0;
  if (f.disc) {
    // Coefficients of e_m∘φ_z·k_z decay like r^j beyond (m+1)(1+r)/(1−r).
    modes = (n - 1) * (1.0 + r) / (1.0 - r) + 1.2 * std::log(1e16) / (-std::log(r)) + 16.0;
  } else {
    modes = n + r * r + 2.0 * r * std::sqrt(static_cast<double>(n)) + 12.0 * r + 16.0;
  }
  return std::max(n, static_cast<int>(std::ceil(modes)));
}

SpaceSpec factor_space(const SpaceSpec& space, int variable, int modes) {
  SpaceSpec s;
  s.component_dim = 1;
  s.truncation_order = modes;
  if (space.kind == SpaceKind::Fock) {
    s.kind = SpaceKind::Fock;
    s.fock_cutoff_radius = space.fock_cutoff_radius;
  } else {
    s.kind = SpaceKind::BergmanDisc;
    s.alpha = variable == 0 ? space.alpha : space.alpha2;
  }
  return s;
}

int next_pow2_above(int v) {
  int m = 16;
  while (m <= v) m *= 2;
  return m;
}

// ⟨U_z e_col, e_row⟩ for one variable.
Eigen::MatrixXcd factor_block(const SpaceSpec& space, int variable, cplx z, int rows, int cols) {
  const detail::Factor f = detail::factor(space, variable);
  const SpaceSpec fs = factor_space(space, variable, rows);
  const int angular = next_pow2_above(std::max(factor_headroom(f, std::abs(z), cols), rows));
  const int radial = f.disc ? rows / 2 + 8 : 32;
  const QuadratureRule rule = build_rule(fs, radial, angular);

  const double log_norm = 0.5 * std::log(detail::factor_kernel_norm_sq(f, z));
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(rows, cols);
  Eigen::FFT<double> fft;
  std::vector<cplx> column(static_cast<std::size_t>(angular));
  std::vector<cplx> spectrum;
  Eigen::MatrixXcd g(angular, cols);
  std::vector<cplx> e(static_cast<std::size_t>(cols));
  std::vector<cplx> b(static_cast<std::size_t>(rows));
  for (int r = 0; r < rule.rings(); ++r) {
    for (int l = 0; l < angular; ++l) {
      const cplx w = rule.nodes[static_cast<std::size_t>(r * angular + l)].z1;
      const cplx phi = detail::factor_involution(f, z, w);
      const cplx log_k = f.disc ? -(2.0 + f.alpha) * std::log(1.0 - w * std::conj(z)) : w * std::conj(z);
      const cplx kz = std::exp(log_k - log_norm);
      detail::factor_basis(f, phi, cols, e.data());
      for (int m = 0; m < cols; ++m) g(l, m) = e[m] * kz;
    }
    detail::factor_basis(f, cplx{rule.ring_radii[r], 0.0}, rows, b.data());
    const double w = rule.ring_weights[r] / angular;
    for (int m = 0; m < cols; ++m) {
      for (int l = 0; l < angular; ++l) column[l] = g(l, m);
      fft.fwd(spectrum, column);
      for (int j = 0; j < rows; ++j) block(j, m) += w * b[j].real() * spectrum[j];
    }
  }
  return block;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd expand_components(const Eigen::MatrixXcd& scalar, int d) {
  if (d == 1) return scalar;
  return kron(scalar, Eigen::MatrixXcd::Identity(d, d));
}

} // namespace

int headroom_modes(const SpaceSpec& space, const DomainPoint& z, int n) {
  int h = factor_headroom(detail::factor(space, 0), std::abs(z.z1), n);
  if (space.kind == SpaceKind::Bidisc) h = std::max(h, factor_headroom(detail::factor(space, 1), std::abs(z.z2), n));
  return h;
}

Eigen::MatrixXcd translation_block(const SpaceSpec& space, const DomainPoint& z, int rows, int cols) {
  check_admissible(space, z);
  if (rows < 1 || cols < 1) throw PreconditionError("translation block needs positive dimensions");
  const Eigen::MatrixXcd first = factor_block(space, 0, z.z1, rows, cols);
  if (space.kind != SpaceKind::Bidisc) return first;
  return kron(first, factor_block(space, 1, z.z2, rows, cols));
}

OperatorMatrix translation_matrix(const SpaceSpec& space, const DomainPoint& z) {
  const int n = space.truncation_order;
  return {space, expand_components(translation_block(space, z, n, n), space.component_dim)};
}

OperatorMatrix conjugate_compressed(const OperatorMatrix& t, const DomainPoint& z) {
  const Eigen::MatrixXcd u = translation_matrix(t.space(), z).matrix();
  return {t.space(), u * t.matrix() * u.adjoint()};
}

OperatorMatrix conjugate_operator(const OperatorMatrix& t, const DomainPoint& z, int n_out) {
  const SpaceSpec& big = t.space();
  if (n_out < 1 || n_out > big.truncation_order)
    throw PreconditionError(fmt::format("output truncation {} outside 1..{}", n_out, big.truncation_order));
  const Eigen::MatrixXcd u =
      expand_components(translation_block(big, z, n_out, big.truncation_order), big.component_dim);
  return {big.with_truncation(n_out), u * t.matrix() * u.adjoint()};
}

OperatorMatrix conjugate_operator(const SpaceSpec& space, const std::function<OperatorMatrix(const SpaceSpec&)>& build,
                                  const DomainPoint& z) {
  check_admissible(space, z);
  const int n = space.truncation_order;
  const SpaceSpec big = space.with_truncation(headroom_modes(space, z, n));
  const OperatorMatrix t = build(big);
  if (t.space() != big) throw MismatchError("operator builder returned a different space");
  OperatorMatrix out = conjugate_operator(t, z, n);
  return {space, out.matrix()};
}

TranslationResiduals translation_residuals(const SpaceSpec& space, const DomainPoint& z) {
  const int n = space.truncation_order;
  TranslationResiduals out;
  out.headroom = headroom_modes(space, z, n);
  const Eigen::MatrixXcd tall = translation_block(space, z, out.headroom, n);
  const Eigen::MatrixXcd wide = translation_block(space, z, n, out.headroom);
  const Eigen::MatrixXcd square = translation_block(space, z, n, n);
  const auto id = Eigen::MatrixXcd::Identity(square.rows(), square.cols());
  out.unitarity = spectral_norm(tall.adjoint() * tall - id);
  out.involution = spectral_norm(wide * tall - id);
  out.self_adjoint = spectral_norm(square - square.adjoint());
  return out;
}

} // namespace bergman
