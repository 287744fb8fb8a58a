#include "bergman/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include <Eigen/SVD>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_origin(const DomainPoint& c) { return c.z1 == cplx{} && c.z2 == cplx{}; }

} // namespace

std::optional<EuclideanDisc> ball_factor_disc(const SpaceSpec& space, const BallIndicator& b, int variable) {
  const cplx c = variable == 0 ? b.center.z1 : b.center.z2;
  const detail::Factor f = detail::factor(space, variable);
  if (b.radius <= 0.0) return EuclideanDisc{c, 0.0};
  if (!f.disc) return EuclideanDisc{c, b.radius};
  if (b.metric == BallMetric::Euclidean) {
    if (std::abs(c) + b.radius >= 1.0) return std::nullopt;
    return EuclideanDisc{c, b.radius};
  }
  // {|φ_c(w)| < s} is a Euclidean disc.
  const double s = std::tanh(b.radius);
  const double c2 = std::norm(c);
  const double den = 1.0 - s * s * c2;
  return EuclideanDisc{c * (1.0 - s * s) / den, s * (1.0 - c2) / den};
}

namespace {

// Image of a Euclidean disc under the involution φ_a of one factor.
EuclideanDisc move_disc(detail::Factor f, cplx a, EuclideanDisc d) {
  if (!f.disc) return {a - d.center, d.radius};
  // Möbius maps circles to circles; the pole 1/conj(a) lies outside the disc.
  const cplx p0 = detail::factor_involution(f, a, d.center + d.radius);
  const cplx p1 = detail::factor_involution(f, a, d.center + cplx{0.0, d.radius});
  const cplx p2 = detail::factor_involution(f, a, d.center - d.radius);
  const cplx b = p1 - p0;
  const cplx c = p2 - p0;
  const double den = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
  const double bn = std::norm(b);
  const double cn = std::norm(c);
  const cplx u{(c.imag() * bn - b.imag() * cn) / den, (b.real() * cn - c.real() * bn) / den};
  return {p0 + u, std::abs(u)};
}

} // namespace

cplx eval_scalar(const SpaceSpec& space, const ScalarSymbol& s, const DomainPoint& z) {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Polynomial& p) {
            cplx acc{};
            const cplx c1 = std::conj(z.z1);
            const cplx c2 = std::conj(z.z2);
            for (const Monomial& m : p.terms)
              acc += m.coeff * ipow(z.z1, m.p1) * ipow(c1, m.q1) * ipow(z.z2, m.p2) * ipow(c2, m.q2);
            return acc;
          },
          [&](const BallIndicator& b) {
            double dist = 0.0;
            if (b.metric == BallMetric::Intrinsic) {
              dist = metric(space, b.center, z);
            } else {
              dist = std::abs(z.z1 - b.center.z1);
              if (space.kind == SpaceKind::Bidisc) dist = std::max(dist, std::abs(z.z2 - b.center.z2));
            }
            return dist < b.radius ? b.value : cplx{};
          },
          [&](const Callable& c) { return c.fn(z); },
      },
      s);
}

bool is_zero(const ScalarSymbol& s) {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.value == cplx{}; },
                        [](const Polynomial& p) {
                          return std::all_of(p.terms.begin(), p.terms.end(),
                                             [](const Monomial& m) { return m.coeff == cplx{}; });
                        },
                        [](const BallIndicator& b) { return b.value == cplx{} || b.radius <= 0.0; },
                        [](const Callable& c) { return !c.fn; },
                    },
                    s);
}

MatrixSymbol::MatrixSymbol(SpaceSpec space, int dim) : space_(space), dim_(dim) {
  if (dim_ != space_.component_dim)
    throw MismatchError(fmt::format("symbol dimension {} differs from component dimension {}", dim_,
                                    space_.component_dim));
  entries_.assign(static_cast<std::size_t>(dim_ * dim_), Constant{});
}

MatrixSymbol MatrixSymbol::zero(const SpaceSpec& space) { return {space, space.component_dim}; }

MatrixSymbol MatrixSymbol::identity(const SpaceSpec& space, cplx scale) {
  MatrixSymbol u(space, space.component_dim);
  for (int i = 0; i < u.dim_; ++i) u.set(i, i, Constant{scale});
  return u;
}

MatrixSymbol MatrixSymbol::constant(const SpaceSpec& space, const Eigen::MatrixXcd& value) {
  MatrixSymbol u(space, space.component_dim);
  if (value.rows() != u.dim_ || value.cols() != u.dim_) throw MismatchError("constant symbol has the wrong shape");
  for (int i = 0; i < u.dim_; ++i)
    for (int k = 0; k < u.dim_; ++k) u.set(i, k, Constant{value(i, k)});
  return u;
}

MatrixSymbol MatrixSymbol::unit(const SpaceSpec& space, int i, int k, ScalarSymbol value) {
  MatrixSymbol u(space, space.component_dim);
  if (i < 0 || k < 0 || i >= u.dim_ || k >= u.dim_) throw PreconditionError("matrix unit index out of range");
  u.set(i, k, std::move(value));
  return u;
}

MatrixSymbol MatrixSymbol::scalar_times_identity(const SpaceSpec& space, ScalarSymbol s, int components) {
  MatrixSymbol u(space, space.component_dim);
  const int n = components < 0 ? u.dim_ : std::min(components, u.dim_);
  for (int i = 0; i < n; ++i) u.set(i, i, s);
  return u;
}

Eigen::MatrixXcd MatrixSymbol::eval(const DomainPoint& z) const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) m(i, k) = eval_scalar(space_, entry(i, k), z);
  return m;
}

namespace {

ScalarSymbol conjugate(const ScalarSymbol& s) {
  return std::visit(overloaded{
                        [](const Constant& c) -> ScalarSymbol { return Constant{std::conj(c.value)}; },
                        [](const Polynomial& p) -> ScalarSymbol {
                          Polynomial out;
                          for (const Monomial& m : p.terms)
                            out.terms.push_back({std::conj(m.coeff), m.q1, m.p1, m.q2, m.p2});
                          return out;
                        },
                        [](const BallIndicator& b) -> ScalarSymbol {
                          BallIndicator out = b;
                          out.value = std::conj(b.value);
                          return out;
                        },
                        [&](const Callable& c) -> ScalarSymbol {
                          auto fn = c.fn;
                          return Callable{[fn](const DomainPoint& z) { return std::conj(fn(z)); }};
                        },
                    },
                    s);
}

} // namespace

MatrixSymbol MatrixSymbol::adjoint() const {
  MatrixSymbol out(space_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) out.set(i, k, conjugate(entry(k, i)));
  return out;
}

MatrixSymbol MatrixSymbol::compose_involution(const DomainPoint& a) const {
  check_point(space_, a);
  MatrixSymbol out(space_, dim_);
  const SpaceSpec space = space_;
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) {
      const ScalarSymbol& s = entry(i, k);
      if (std::holds_alternative<Constant>(s)) {
        out.set(i, k, s);
      } else if (const auto* b = std::get_if<BallIndicator>(&s); b && b->metric == BallMetric::Intrinsic) {
        BallIndicator moved = *b;
        moved.center = involution(space, a, b->center);
        out.set(i, k, moved);
      } else if (b && space.kind != SpaceKind::Bidisc && ball_factor_disc(space, *b, 0)) {
        const EuclideanDisc img = move_disc(detail::factor(space, 0), a.z1, *ball_factor_disc(space, *b, 0));
        out.set(i, k, BallIndicator{DomainPoint{img.center}, img.radius, BallMetric::Euclidean, b->value});
      } else {
        out.set(i, k, Callable{[space, s, a](const DomainPoint& z) {
                  return eval_scalar(space, s, involution(space, a, z));
                }});
      }
    }
  }
  return out;
}

bool MatrixSymbol::is_analytic_polynomial() const {
  for (const ScalarSymbol& s : entries_) {
    if (std::holds_alternative<Constant>(s)) continue;
    const auto* p = std::get_if<Polynomial>(&s);
    if (p == nullptr) return false;
    for (const Monomial& m : p->terms)
      if (m.coeff != cplx{} && (m.q1 != 0 || m.q2 != 0)) return false;
  }
  return true;
}

int MatrixSymbol::band() const {
  int b = 0;
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k)
      if (!is_zero(entry(i, k))) b = std::max({b, i + 1, k + 1});
  return b;
}

bool MatrixSymbol::has_callable() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const ScalarSymbol& e) { return std::holds_alternative<Callable>(e); });
}

int MatrixSymbol::polynomial_degree() const {
  int deg = 0;
  for (const ScalarSymbol& s : entries_)
    if (const auto* p = std::get_if<Polynomial>(&s))
      for (const Monomial& m : p->terms) deg = std::max(deg, m.p1 + m.q1 + m.p2 + m.q2);
  return deg;
}

std::vector<double> MatrixSymbol::radial_breakpoints() const {
  std::vector<double> out;
  for (const ScalarSymbol& s : entries_) {
    const auto* b = std::get_if<BallIndicator>(&s);
    if (b == nullptr || !is_origin(b->center) || b->radius <= 0.0) continue;
    if (b->metric == BallMetric::Euclidean || space_.kind == SpaceKind::Fock) out.push_back(b->radius);
    else out.push_back(std::tanh(b->radius));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double MatrixSymbol::sup_norm(const QuadratureRule& rule) const {
  double sup = 0.0;
  for (const DomainPoint& z : rule.nodes) {
    const Eigen::MatrixXcd m = eval(z);
    sup = std::max(sup, Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0));
  }
  return sup;
}

ScalarSymbol component_polynomial(const SpaceSpec& space, const Eigen::VectorXcd& flat, int component,
                                  bool conj) {
  const int d = space.component_dim;
  const int n = space.truncation_order;
  if (flat.size() != space.dim()) throw MismatchError("coefficient vector does not match the space");
  Polynomial p;
  for (int m = 0; m < space.modes(); ++m) {
    const cplx c = flat[m * d + component];
    if (c == cplx{}) continue;
    const cplx coeff = c * basis_normalizer(space, m);
    const int a = space.kind == SpaceKind::Bidisc ? m / n : m;
    const int b = space.kind == SpaceKind::Bidisc ? m % n : 0;
    if (conj) p.terms.push_back({std::conj(coeff), 0, a, 0, b});
    else p.terms.push_back({coeff, a, 0, b, 0});
  }
  return p;
}

} // namespace bergman
