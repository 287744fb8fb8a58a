#include "bergman/schur.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

MatrixKernelSample::MatrixKernelSample(std::vector<double> x_weights, std::vector<double> y_weights, int dim)
    : mu_(std::move(x_weights)), nu_(std::move(y_weights)), dim_(dim) {
  if (dim_ < 1) throw PreconditionError("kernel dimension must be >= 1");
  entries_.assign(mu_.size() * nu_.size() * dim_ * dim_, 0.0);
}

MatrixKernelSample::MatrixKernelSample(const QuadratureRule& rule, int dim)
    : MatrixKernelSample(rule.sigma_weights, rule.sigma_weights, dim) {}

void MatrixKernelSample::validate() const {
  for (double w : mu_)
    if (!(w > 0.0)) throw PreconditionError("x-measure weights must be positive");
  for (double w : nu_)
    if (!(w > 0.0)) throw PreconditionError("y-measure weights must be positive");
  for (double e : entries_)
    if (!(e >= 0.0)) throw PreconditionError("Schur test needs non-negative kernel entries");
}

SchurResult schur_test(const MatrixKernelSample& sample, std::span<const double> h_x,
                       std::span<const double> h_y, double p) {
  if (!(p > 1.0)) throw PreconditionError("Schur exponent p must exceed 1");
  sample.validate();
  if (h_x.size() != sample.x_count() || h_y.size() != sample.y_count())
    throw MismatchError("test function size does not match the node count");
  for (double v : h_x)
    if (!(v > 0.0)) throw PreconditionError("test function must be positive");
  for (double v : h_y)
    if (!(v > 0.0)) throw PreconditionError("test function must be positive");

  const double q = p / (p - 1.0);
  const int d = sample.dim();
  const auto& mu = sample.x_weights();
  const auto& nu = sample.y_weights();
  SchurResult out;
  for (std::size_t x = 0; x < sample.x_count(); ++x) {
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t y = 0; y < sample.y_count(); ++y) {
        double row = 0.0;
        for (int k = 0; k < d; ++k) row += sample.at(x, y, i, k);
        acc += nu[y] * std::pow(h_y[y], q) * row;
      }
      out.c1 = std::max(out.c1, acc / std::pow(h_x[x], q));
    }
  }
  for (std::size_t y = 0; y < sample.y_count(); ++y) {
    for (int k = 0; k < d; ++k) {
      double acc = 0.0;
      for (std::size_t x = 0; x < sample.x_count(); ++x) {
        double col = 0.0;
        for (int i = 0; i < d; ++i) col += sample.at(x, y, i, k);
        acc += mu[x] * std::pow(h_x[x], p) * col;
      }
      out.c2 = std::max(out.c2, acc / std::pow(h_y[y], p));
    }
  }
  out.bound = std::pow(out.c1, 1.0 / q) * std::pow(out.c2, 1.0 / p);
  return out;
}

SchurResult schur_test(const MatrixKernelSample& sample, std::span<const double> h, double p) {
  if (sample.x_count() != sample.y_count())
    throw MismatchError("a single test function needs matching x and y node sets");
  return schur_test(sample, h, h, p);
}

Eigen::MatrixXd discretized_operator(const MatrixKernelSample& sample) {
  const int d = sample.dim();
  const auto nx = static_cast<Eigen::Index>(sample.x_count());
  const auto ny = static_cast<Eigen::Index>(sample.y_count());
  Eigen::MatrixXd a(nx * d, ny * d);
  for (Eigen::Index x = 0; x < nx; ++x) {
    const double sx = std::sqrt(sample.x_weights()[x]);
    for (Eigen::Index y = 0; y < ny; ++y) {
      const double sy = std::sqrt(sample.y_weights()[y]);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) a(x * d + i, y * d + k) = sx * sample.at(x, y, i, k) * sy;
    }
  }
  return a;
}

double discretized_operator_norm(const MatrixKernelSample& sample) {
  const Eigen::MatrixXd a = discretized_operator(sample);
  if (a.size() == 0) return 0.0;
  return Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

} // namespace bergman
