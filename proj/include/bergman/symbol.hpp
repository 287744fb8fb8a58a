#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "bergman/space.hpp"

namespace bergman {

struct QuadratureRule;

/// coeff · z1^p1 · conj(z1)^q1 · z2^p2 · conj(z2)^q2
struct Monomial {
  cplx coeff{};
  int p1 = 0;
  int q1 = 0;
  int p2 = 0;
  int q2 = 0;
};

struct Polynomial {
  std::vector<Monomial> terms;
};

enum class BallMetric { Intrinsic, Euclidean };

/// value · 1_{B(center, radius)} in the chosen metric.
struct BallIndicator {
  DomainPoint center;
  double radius = 0.0;
  BallMetric metric = BallMetric::Intrinsic;
  cplx value{1.0, 0.0};
};

struct Constant {
  cplx value{};
};

/// Opaque pointwise function; produced by composition with involutions.
struct Callable {
  std::function<cplx(const DomainPoint&)> fn;
};

using ScalarSymbol = std::variant<Constant, Polynomial, BallIndicator, Callable>;

/// Euclidean disc {|w − center| < radius} in one complex variable.
struct EuclideanDisc {
  cplx center{};
  double radius = 0.0;
};

/// The factor-`variable` disc of a ball indicator (balls are polydiscs on
/// the Bidisc). Empty if the ball leaves the domain.
std::optional<EuclideanDisc> ball_factor_disc(const SpaceSpec& space, const BallIndicator& b, int variable);

cplx eval_scalar(const SpaceSpec& space, const ScalarSymbol& s, const DomainPoint& z);
bool is_zero(const ScalarSymbol& s);

/// d×d matrix-valued symbol, entry (i, k) = ⟨u(z) e_k, e_i⟩.
class MatrixSymbol {
public:
  MatrixSymbol(SpaceSpec space, int dim);

  static MatrixSymbol zero(const SpaceSpec& space);
  static MatrixSymbol identity(const SpaceSpec& space, cplx scale = 1.0);
  static MatrixSymbol constant(const SpaceSpec& space, const Eigen::MatrixXcd& value);
  /// value · E_{i,k}
  static MatrixSymbol unit(const SpaceSpec& space, int i, int k, ScalarSymbol value);
  /// u(z) = s(z) · I on the first `components` diagonal entries (all if < 0).
  static MatrixSymbol scalar_times_identity(const SpaceSpec& space, ScalarSymbol s, int components = -1);

  const SpaceSpec& space() const { return space_; }
  int dim() const { return dim_; }

  const ScalarSymbol& entry(int i, int k) const { return entries_[static_cast<std::size_t>(i * dim_ + k)]; }
  void set(int i, int k, ScalarSymbol s) { entries_[static_cast<std::size_t>(i * dim_ + k)] = std::move(s); }

  Eigen::MatrixXcd eval(const DomainPoint& z) const;
  /// Conjugate-transpose symbol.
  MatrixSymbol adjoint() const;
  /// z ↦ u(φ_a(z)). Intrinsic balls stay balls (φ_a is an isometry), other
  /// non-constant entries become opaque callables.
  MatrixSymbol compose_involution(const DomainPoint& a) const;

  /// Every entry a polynomial in z only (or a constant).
  bool is_analytic_polynomial() const;
  /// Smallest d' with all entries outside the leading d'×d' block zero.
  int band() const;
  /// Some entry is an opaque callable.
  bool has_callable() const;
  /// Largest total polynomial degree among entries (0 for none).
  int polynomial_degree() const;
  /// Radii of indicator balls centred at the origin, as Euclidean radii, used
  /// to align radial quadrature panels.
  std::vector<double> radial_breakpoints() const;
  /// max over rule nodes of the operator norm of u(node).
  double sup_norm(const QuadratureRule& rule) const;

private:
  SpaceSpec space_;
  int dim_;
  std::vector<ScalarSymbol> entries_;
};

/// ScalarSymbol for component `component` of a coefficient function: the
/// analytic polynomial Σ_m c_{m,k} e_m(z), or its conjugate.
ScalarSymbol component_polynomial(const SpaceSpec& space, const Eigen::VectorXcd& flat_coeffs, int component,
                                  bool conjugate);

} // namespace bergman
