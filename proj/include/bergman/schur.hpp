#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace bergman {

struct QuadratureRule;

/// Nonnegative matrix kernel sampled on a discrete measure space:
/// entry(x, y, i, k) = ⟨M(x, y) e_k, e_i⟩, x weighted by μ, y by ν.
class MatrixKernelSample {
public:
  MatrixKernelSample(std::vector<double> x_weights, std::vector<double> y_weights, int dim);
  /// Both variables on the σ-weights of a rule.
  MatrixKernelSample(const QuadratureRule& rule, int dim);

  int dim() const { return dim_; }
  std::size_t x_count() const { return mu_.size(); }
  std::size_t y_count() const { return nu_.size(); }
  const std::vector<double>& x_weights() const { return mu_; }
  const std::vector<double>& y_weights() const { return nu_; }

  double& at(std::size_t x, std::size_t y, int i, int k) { return entries_[index(x, y, i, k)]; }
  double at(std::size_t x, std::size_t y, int i, int k) const { return entries_[index(x, y, i, k)]; }
  std::span<const double> entries() const { return entries_; }

  /// Throws if any weight is nonpositive or any entry negative.
  void validate() const;

private:
  std::size_t index(std::size_t x, std::size_t y, int i, int k) const {
    return ((x * nu_.size() + y) * dim_ + i) * dim_ + k;
  }

  std::vector<double> mu_;
  std::vector<double> nu_;
  int dim_;
  std::vector<double> entries_;
};

struct SchurResult {
  double c1 = 0.0;
  double c2 = 0.0;
  double bound = 0.0;
};

/// Smallest admissible constants of the matrix Schur test for test function
/// h (one value per node; x and y share the node set when sizes agree).
SchurResult schur_test(const MatrixKernelSample& sample, std::span<const double> h_x,
                       std::span<const double> h_y, double p);
SchurResult schur_test(const MatrixKernelSample& sample, std::span<const double> h, double p);

/// The discretized operator (Tf)(x) = Σ_y ν_y M(x, y) f(y) as a map
/// L²(ν, ℂ^d) → L²(μ, ℂ^d), written in orthonormal coordinates.
Eigen::MatrixXd discretized_operator(const MatrixKernelSample& sample);
double discretized_operator_norm(const MatrixKernelSample& sample);

} // namespace bergman
