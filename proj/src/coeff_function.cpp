#include "bergman/coeff_function.hpp"

#include <cmath>
#include <fmt/format.h>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/serialize.hpp"

namespace bergman {

CoeffFunction::CoeffFunction(SpaceSpec space) : space_(space), flat_(Eigen::VectorXcd::Zero(space.dim())) {
  space_.validate();
}

CoeffFunction::CoeffFunction(SpaceSpec space, Eigen::VectorXcd flat) : space_(space), flat_(std::move(flat)) {
  space_.validate();
  if (flat_.size() != space_.dim())
    throw MismatchError(fmt::format("coefficient vector has {} entries, space needs {}", flat_.size(),
                                    space_.dim()));
}

CoeffFunction CoeffFunction::from_coeffs(SpaceSpec space, const Coeffs& c) {
  if (c.rows() != space.modes() || c.cols() != space.component_dim)
    throw MismatchError(fmt::format("coefficient array is {}x{}, space needs {}x{}", c.rows(), c.cols(),
                                    space.modes(), space.component_dim));
  Eigen::VectorXcd flat = Eigen::Map<const Eigen::VectorXcd>(c.data(), c.size());
  return {space, std::move(flat)};
}

CoeffFunction CoeffFunction::basis(SpaceSpec space, int mode, int component) {
  if (mode < 0 || mode >= space.modes() || component < 0 || component >= space.component_dim)
    throw PreconditionError("basis index out of range");
  CoeffFunction f(space);
  f.flat_[mode * space.component_dim + component] = 1.0;
  return f;
}

CoeffFunction::Coeffs CoeffFunction::coeffs() const {
  return Eigen::Map<const Coeffs>(flat_.data(), space_.modes(), space_.component_dim);
}

Eigen::VectorXcd CoeffFunction::eval(const DomainPoint& z) const {
  const Eigen::VectorXcd b = basis_values(space_, z);
  return coeffs().transpose() * b;
}

Eigen::MatrixXcd CoeffFunction::eval_on(const QuadratureRule& rule) const {
  if (!rule.space.same_geometry(space_) || rule.space.truncation_order != space_.truncation_order)
    throw MismatchError("rule and function live on different spaces");
  return basis_matrix(rule) * coeffs();
}

int CoeffFunction::degree() const {
  const int d = space_.component_dim;
  const int n = space_.truncation_order;
  int deg = -1;
  for (int m = 0; m < space_.modes(); ++m) {
    for (int k = 0; k < d; ++k) {
      if (flat_[m * d + k] == cplx{}) continue;
      const int mdeg = space_.kind == SpaceKind::Bidisc ? std::max(m / n, m % n) : m;
      deg = std::max(deg, mdeg);
    }
  }
  return deg;
}

CoeffFunction& CoeffFunction::operator+=(const CoeffFunction& other) {
  if (other.space_ != space_) throw MismatchError("adding functions from different spaces");
  flat_ += other.flat_;
  return *this;
}

CoeffFunction& CoeffFunction::operator*=(cplx s) {
  flat_ *= s;
  return *this;
}

CoeffFunction operator+(CoeffFunction a, const CoeffFunction& b) { return a += b; }
CoeffFunction operator*(cplx s, CoeffFunction a) { return a *= s; }

cplx inner(const CoeffFunction& f, const CoeffFunction& g) {
  if (f.space() != g.space()) throw MismatchError("inner product across different spaces");
  // Σ f·conj(g) in fixed index order.
  cplx acc{};
  for (Eigen::Index i = 0; i < f.flat().size(); ++i) acc += f.flat()[i] * std::conj(g.flat()[i]);
  return acc;
}

double norm(const CoeffFunction& f) { return f.flat().norm(); }

CoeffFunction kernel_as_coeffs(const SpaceSpec& space, const DomainPoint& z, int component) {
  check_admissible(space, z);
  if (component < 0 || component >= space.component_dim)
    throw PreconditionError(fmt::format("component {} outside 0..{}", component, space.component_dim - 1));
  const Eigen::VectorXcd b = basis_values(space, z);
  CoeffFunction::Coeffs c = CoeffFunction::Coeffs::Zero(space.modes(), space.component_dim);
  c.col(component) = b.conjugate();
  return CoeffFunction::from_coeffs(space, c);
}

CoeffFunction unit_kernel_coeffs(const SpaceSpec& space, const DomainPoint& z, int component) {
  CoeffFunction k = kernel_as_coeffs(space, z, component);
  const double n = norm(k);
  return (1.0 / n) * std::move(k);
}

CoeffFunction project_grid_function(const QuadratureRule& rule, const Eigen::MatrixXcd& samples) {
  if (samples.rows() != static_cast<Eigen::Index>(rule.size()) ||
      samples.cols() != rule.space.component_dim)
    throw MismatchError(fmt::format("samples are {}x{}, rule needs {}x{}", samples.rows(), samples.cols(),
                                    rule.size(), rule.space.component_dim));
  const Eigen::MatrixXcd b = basis_matrix(rule);
  const Eigen::Map<const Eigen::VectorXd> w(rule.sigma_weights.data(), rule.size());
  const CoeffFunction::Coeffs c = b.adjoint() * (w.asDiagonal() * samples);
  return CoeffFunction::from_coeffs(rule.space, c);
}

void to_json(nlohmann::json& j, const CoeffFunction& f) {
  j = nlohmann::json{{"space", f.space()},
                     {"shape", {f.space().modes(), f.space().component_dim}},
                     {"re", nlohmann::json::array()},
                     {"im", nlohmann::json::array()}};
  for (Eigen::Index i = 0; i < f.flat().size(); ++i) {
    j["re"].push_back(f.flat()[i].real());
    j["im"].push_back(f.flat()[i].imag());
  }
}

CoeffFunction coeff_function_from_json(const nlohmann::json& j) {
  const SpaceSpec space = j.at("space").get<SpaceSpec>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size() || static_cast<int>(re.size()) != space.dim())
    throw MismatchError("coefficient arrays do not match the space dimension");
  Eigen::VectorXcd flat(space.dim());
  for (int i = 0; i < space.dim(); ++i) flat[i] = {re[i].get<double>(), im[i].get<double>()};
  return {space, std::move(flat)};
}

} // namespace bergman
