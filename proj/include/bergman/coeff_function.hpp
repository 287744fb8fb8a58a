#pragma once

#include <Eigen/Core>
#include <json.hpp>

#include "bergman/space.hpp"

namespace bergman {

struct QuadratureRule;

/// A d-finite ℓ²-valued analytic function f = Σ c_{m,k} e_m ⊗ e_k, stored
/// mode-major: flat index m·d + k.
class CoeffFunction {
public:
  using Coeffs = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit CoeffFunction(SpaceSpec space);
  CoeffFunction(SpaceSpec space, Eigen::VectorXcd flat);

  static CoeffFunction from_coeffs(SpaceSpec space, const Coeffs& modes_by_components);
  static CoeffFunction basis(SpaceSpec space, int mode, int component);

  const SpaceSpec& space() const { return space_; }
  const Eigen::VectorXcd& flat() const { return flat_; }
  Coeffs coeffs() const;
  cplx coeff(int mode, int component) const { return flat_[mode * space_.component_dim + component]; }

  /// Component values at z.
  Eigen::VectorXcd eval(const DomainPoint& z) const;
  /// Values at every node of a rule: nodes × d.
  Eigen::MatrixXcd eval_on(const QuadratureRule& rule) const;

  /// Highest per-variable mode index carrying a nonzero coefficient (−1 for 0).
  int degree() const;

  CoeffFunction& operator+=(const CoeffFunction& other);
  CoeffFunction& operator*=(cplx s);

private:
  SpaceSpec space_;
  Eigen::VectorXcd flat_;
};

CoeffFunction operator+(CoeffFunction a, const CoeffFunction& b);
CoeffFunction operator*(cplx s, CoeffFunction a);

cplx inner(const CoeffFunction& f, const CoeffFunction& g);
double norm(const CoeffFunction& f);

/// Truncated K_z ⊗ e_k: coefficient conj(e_m(z)) in component k.
CoeffFunction kernel_as_coeffs(const SpaceSpec& space, const DomainPoint& z, int component);
/// Truncated kernel renormalized to unit norm.
CoeffFunction unit_kernel_coeffs(const SpaceSpec& space, const DomainPoint& z, int component);

/// Quadrature realization of the Bergman projection applied to grid data
/// (nodes × d samples).
CoeffFunction project_grid_function(const QuadratureRule& rule, const Eigen::MatrixXcd& samples);

void to_json(nlohmann::json& j, const CoeffFunction& f);
CoeffFunction coeff_function_from_json(const nlohmann::json& j);

} // namespace bergman
