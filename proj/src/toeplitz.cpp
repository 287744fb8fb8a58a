#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include <unsupported/Eigen/FFT>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

void check_rule(const SpaceSpec& space, const QuadratureRule& rule) {
  if (!rule.space.same_geometry(space)) throw MismatchError("quadrature rule belongs to a different space");
}

void check_symbol(const SpaceSpec& space, const MatrixSymbol& u) {
  if (!u.space().same_geometry(space) || u.dim() != space.component_dim)
    throw MismatchError("symbol and space disagree on geometry or component dimension");
}

bool trivially_zero(const ScalarSymbol& s) {
  const auto* c = std::get_if<Constant>(&s);
  return c != nullptr && c->value == cplx{};
}

Eigen::MatrixXcd fft_block(const SpaceSpec& space, const ScalarSymbol& s, const QuadratureRule& rule) {
  const int n = space.truncation_order;
  const int m_ang = rule.angular_order;
  const detail::Factor f = detail::factor(space, 0);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  Eigen::FFT<double> fft;
  std::vector<cplx> samples(static_cast<std::size_t>(m_ang));
  std::vector<cplx> spectrum;
  std::vector<cplx> b(static_cast<std::size_t>(n));
  for (int r = 0; r < rule.rings(); ++r) {
    const double rho = rule.ring_radii[r];
    for (int j = 0; j < m_ang; ++j) samples[j] = eval_scalar(space, s, rule.nodes[r * m_ang + j]);
    fft.fwd(spectrum, samples);
    detail::factor_basis(f, cplx{rho, 0.0}, n, b.data());
    const double w = rule.ring_weights[r] / m_ang;
    for (int mp = 0; mp < n; ++mp) {
      const double wb = w * b[mp].real();
      for (int m = 0; m < n; ++m) {
        const int freq = ((mp - m) % m_ang + m_ang) % m_ang;
        block(mp, m) += wb * b[m].real() * spectrum[freq];
      }
    }
  }
  return block;
}

Eigen::MatrixXcd dense_block(const SpaceSpec& space, const ScalarSymbol& s, const QuadratureRule& rule) {
  const int modes = space.modes();
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(modes, modes);
  constexpr std::size_t chunk = 4096;
  for (std::size_t start = 0; start < rule.size(); start += chunk) {
    const std::size_t len = std::min(chunk, rule.size() - start);
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(len), modes);
    Eigen::VectorXcd wu(static_cast<Eigen::Index>(len));
    for (std::size_t i = 0; i < len; ++i) {
      const DomainPoint& z = rule.nodes[start + i];
      b.row(static_cast<Eigen::Index>(i)) = basis_values(space, z).transpose();
      wu[static_cast<Eigen::Index>(i)] = rule.sigma_weights[start + i] * eval_scalar(space, s, z);
    }
    block.noalias() += b.adjoint() * (wu.asDiagonal() * b);
  }
  return block;
}

// ∫_{|w−C|<R} e_m(w) conj(e_m'(w)) dσ(w) for one variable: closed form for
// α = 0, otherwise a polar rule centred at C (exponentially convergent).
// Unweighted disc: binomial expansion around C. Every term of the sum
// shares the phase e^{i(m−m')arg C}, so it is summed without cancellation.
Eigen::MatrixXcd unweighted_disc_block(int n, const EuclideanDisc& disc) {
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  const double abs_c = std::abs(disc.center);
  const double phase = std::arg(disc.center);
  const double log_c = abs_c > 0.0 ? std::log(abs_c) : 0.0;
  const double log_r = std::log(disc.radius);
  std::vector<double> lfact(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) lfact[i] = std::lgamma(i + 1.0);
  for (int mp = 0; mp < n; ++mp) {
    for (int m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int a = 0; a <= std::min(m, mp); ++a) {
        const int cpow = m + mp - 2 * a;
        if (abs_c == 0.0 && cpow > 0) continue;
        const double lb = lfact[m] - lfact[a] - lfact[m - a] + lfact[mp] - lfact[a] - lfact[mp - a];
        acc += std::exp(lb + cpow * log_c + (2 * a + 2) * log_r) / (a + 1.0);
      }
      // (1/π)·π·Σ times c_m c_m' = sqrt((m+1)(m'+1))
      block(mp, m) = std::polar(acc * std::sqrt((m + 1.0) * (mp + 1.0)), (m - mp) * phase);
    }
  }
  return block;
}

Eigen::MatrixXcd factor_disc_block(detail::Factor f, int n, const EuclideanDisc& disc) {
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  if (disc.radius <= 0.0) return block;
  if (f.disc && f.alpha == 0.0) return unweighted_disc_block(n, disc);
  const int radial = n + 16;
  int angular = 16;
  while (angular < 2 * n + 32) angular *= 2;
  std::vector<double> gx, gw;
  gauss_legendre(radial, gx, gw);
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(radial) * angular, n);
  Eigen::VectorXd w(static_cast<Eigen::Index>(radial) * angular);
  std::vector<cplx> row(static_cast<std::size_t>(n));
  Eigen::Index idx = 0;
  for (int i = 0; i < radial; ++i) {
    const double rho = 0.5 * disc.radius * (gx[i] + 1.0);
    const double wr = 0.5 * disc.radius * gw[i] * rho * (2.0 * M_PI / angular);
    for (int j = 0; j < angular; ++j, ++idx) {
      const cplx z = disc.center + std::polar(rho, 2.0 * M_PI * j / angular);
      detail::factor_basis(f, z, n, row.data());
      for (int m = 0; m < n; ++m) b(idx, m) = row[m];
      w[idx] = wr * detail::factor_sigma_density(f, z);
    }
  }
  block.noalias() = b.adjoint() * (w.asDiagonal() * b);
  return block;
}

std::optional<Eigen::MatrixXcd> ball_block(const SpaceSpec& space, const BallIndicator& ball) {
  const int n = space.truncation_order;
  const auto first = ball_factor_disc(space, ball, 0);
  if (!first) return std::nullopt;
  Eigen::MatrixXcd block = factor_disc_block(detail::factor(space, 0), n, *first);
  if (space.kind == SpaceKind::Bidisc) {
    const auto second = ball_factor_disc(space, ball, 1);
    if (!second) return std::nullopt;
    const Eigen::MatrixXcd other = factor_disc_block(detail::factor(space, 1), n, *second);
    Eigen::MatrixXcd k(n * n, n * n);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) k.block(a * n, c * n, n, n) = block(a, c) * other;
    block = std::move(k);
  }
  return ball.value * block;
}

} // namespace

QuadratureRule toeplitz_rule(const SpaceSpec& space, const MatrixSymbol& u, double resolution_scale) {
  check_symbol(space, u);
  const int deg = u.polynomial_degree();
  const int n = space.truncation_order;
  int radial = std::max(default_radial_order(space), (n + deg) / 2 + 4);
  int angular = default_angular_order(space);
  while (angular <= n + deg) angular *= 2;
  // Composed symbols carry poles outside the domain; their Fourier tails
  // alias into the block unless the angular rule has room to spare.
  if (u.has_callable()) {
    radial *= 2;
    angular *= 4;
  }
  radial = std::max(1, static_cast<int>(std::lround(radial * resolution_scale)));
  angular = std::max(1, static_cast<int>(std::lround(angular * resolution_scale)));
  const auto breaks = u.radial_breakpoints();
  return build_rule(space, radial, angular, breaks);
}

Eigen::MatrixXcd scalar_toeplitz_block(const SpaceSpec& space, const ScalarSymbol& s, const QuadratureRule& rule,
                                       Assembly method) {
  check_rule(space, rule);
  if (trivially_zero(s)) return Eigen::MatrixXcd::Zero(space.modes(), space.modes());
  // Indicators integrate on a rule adapted to the ball unless forced dense.
  if (const auto* ball = std::get_if<BallIndicator>(&s); ball && method == Assembly::Auto)
    if (auto block = ball_block(space, *ball)) return *block;
  const bool fft_ok = rule.ring_structured() && space.kind != SpaceKind::Bidisc;
  if (method == Assembly::Fft && !fft_ok) throw PreconditionError("FFT assembly needs a one-variable ring rule");
  if (method == Assembly::Dense || !fft_ok) return dense_block(space, s, rule);
  return fft_block(space, s, rule);
}

OperatorMatrix toeplitz_matrix(const SpaceSpec& space, const MatrixSymbol& u, const QuadratureRule& rule,
                               Assembly method) {
  check_symbol(space, u);
  const int d = space.component_dim;
  const int modes = space.modes();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      if (trivially_zero(u.entry(i, k))) continue;
      const Eigen::MatrixXcd block = scalar_toeplitz_block(space, u.entry(i, k), rule, method);
      for (int mp = 0; mp < modes; ++mp)
        for (int mm = 0; mm < modes; ++mm) m(mp * d + i, mm * d + k) = block(mp, mm);
    }
  }
  return {space, std::move(m)};
}

OperatorMatrix toeplitz_matrix(const SpaceSpec& space, const MatrixSymbol& u, double resolution_scale) {
  return toeplitz_matrix(space, u, toeplitz_rule(space, u, resolution_scale));
}

OperatorMatrix toeplitz_matrix(const MatrixSymbol& u, double resolution_scale) {
  return toeplitz_matrix(u.space(), u, resolution_scale);
}

OperatorMatrix toeplitz_measure_matrix(const SpaceSpec& space, std::span<const PointMass> atoms) {
  const int d = space.component_dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (const PointMass& a : atoms) {
    check_point(space, a.location);
    if (!std::isfinite(std::abs(a.weight))) throw PreconditionError("point mass weight must be finite");
    const Eigen::MatrixXcd comp = a.matrix.size() == 0 ? Eigen::MatrixXcd::Identity(d, d) : a.matrix;
    if (comp.rows() != d || comp.cols() != d) throw MismatchError("point mass matrix has the wrong shape");
    const Eigen::VectorXcd b = basis_values(space, a.location);
    // entry ((m',i),(m,k)) = w·A_ik·e_m(a)·conj(e_m'(a))
    const Eigen::MatrixXcd scalar = a.weight * (b.conjugate() * b.transpose());
    for (Eigen::Index mp = 0; mp < scalar.rows(); ++mp)
      for (Eigen::Index mm = 0; mm < scalar.cols(); ++mm)
        m.block(mp * d, mm * d, d, d) += scalar(mp, mm) * comp;
  }
  return {space, std::move(m)};
}

OperatorMatrix toeplitz_measure_matrix(const SpaceSpec& space, const QuadratureRule& rule,
                                       std::span<const cplx> weights, const Eigen::MatrixXcd& matrix) {
  check_rule(space, rule);
  if (weights.size() != rule.size()) throw MismatchError("one weight per rule node is required");
  const int d = space.component_dim;
  const Eigen::MatrixXcd comp = matrix.size() == 0 ? Eigen::MatrixXcd::Identity(d, d) : matrix;
  if (comp.rows() != d || comp.cols() != d) throw MismatchError("measure matrix has the wrong shape");
  const int modes = space.modes();
  Eigen::MatrixXcd scalar = Eigen::MatrixXcd::Zero(modes, modes);
  for (std::size_t x = 0; x < rule.size(); ++x) {
    if (weights[x] == cplx{}) continue;
    const Eigen::VectorXcd b = basis_values(space, rule.nodes[x]);
    scalar.noalias() += weights[x] * (b.conjugate() * b.transpose());
  }
  Eigen::MatrixXcd m(space.dim(), space.dim());
  for (int mp = 0; mp < modes; ++mp)
    for (int mm = 0; mm < modes; ++mm) m.block(mp * d, mm * d, d, d) = scalar(mp, mm) * comp;
  return {space, std::move(m)};
}

std::pair<OperatorMatrix, OperatorMatrix> truncation_operators(const SpaceSpec& space, int d_prime) {
  const int d = space.component_dim;
  if (d_prime < 0 || d_prime > d) throw PreconditionError(fmt::format("d' = {} outside 0..{}", d_prime, d));
  Eigen::MatrixXcd head = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int m = 0; m < space.modes(); ++m)
    for (int k = 0; k < d_prime; ++k) head(m * d + k, m * d + k) = 1.0;
  Eigen::MatrixXcd tail = Eigen::MatrixXcd::Identity(space.dim(), space.dim()) - head;
  return {OperatorMatrix(space, std::move(head)), OperatorMatrix(space, std::move(tail))};
}

HankelResult hankel_apply(const MatrixSymbol& f_symbol, const CoeffFunction& f, const QuadratureRule& rule) {
  const SpaceSpec& space = f.space();
  check_symbol(space, f_symbol);
  check_rule(space, rule);
  if (rule.space.truncation_order != space.truncation_order)
    throw MismatchError("rule truncation differs from the function's space");
  const Eigen::MatrixXcd values = f.eval_on(rule);
  Eigen::MatrixXcd product(values.rows(), values.cols());
  for (Eigen::Index x = 0; x < values.rows(); ++x)
    product.row(x) = (f_symbol.eval(rule.nodes[static_cast<std::size_t>(x)]) * values.row(x).transpose()).transpose();
  const CoeffFunction projected = project_grid_function(rule, product);
  HankelResult out;
  out.residual = product - projected.eval_on(rule);
  double acc = 0.0;
  for (Eigen::Index x = 0; x < out.residual.rows(); ++x)
    acc += rule.sigma_weights[static_cast<std::size_t>(x)] * out.residual.row(x).squaredNorm();
  out.norm = std::sqrt(acc);
  return out;
}

HankelResult hankel_apply(const MatrixSymbol& f_symbol, const CoeffFunction& f) {
  return hankel_apply(f_symbol, f, toeplitz_rule(f.space(), f_symbol));
}

OperatorMatrix rank_one(const CoeffFunction& f, const CoeffFunction& g) {
  if (f.space() != g.space()) throw MismatchError("rank-one factors live on different spaces");
  return {f.space(), f.flat() * g.flat().adjoint()};
}

OperatorMatrix rank_one_toeplitz_sum(const CoeffFunction& f, const CoeffFunction& g) {
  if (f.space() != g.space()) throw MismatchError("rank-one factors live on different spaces");
  const SpaceSpec& space = f.space();
  const int n = space.truncation_order;
  if (2 * std::max(f.degree(), g.degree()) >= n)
    throw PreconditionError(fmt::format("polynomial degree {} needs truncation order above {}",
                                        std::max(f.degree(), g.degree()), 2 * std::max(f.degree(), g.degree())));
  const int d = space.component_dim;
  const double k0 = kernel_norm(space, DomainPoint{});
  OperatorMatrix total(space);
  for (int i = 0; i < d; ++i) {
    const OperatorMatrix tf = toeplitz_matrix(space, MatrixSymbol::unit(space, i, i, component_polynomial(space, f.flat(), i, false)));
    const PointMass delta{DomainPoint{}, 1.0 / k0, MatrixSymbol::unit(space, i, i, Constant{1.0}).eval(DomainPoint{})};
    const OperatorMatrix td = toeplitz_measure_matrix(space, std::span<const PointMass>(&delta, 1));
    const OperatorMatrix head = tf * td;
    for (int k = 0; k < d; ++k) {
      const OperatorMatrix tg =
          toeplitz_matrix(space, MatrixSymbol::unit(space, i, i, component_polynomial(space, g.flat(), k, true)));
      const OperatorMatrix te = toeplitz_matrix(space, MatrixSymbol::unit(space, i, k, Constant{1.0}));
      total += head * (tg * te);
    }
  }
  return total;
}

} // namespace bergman
