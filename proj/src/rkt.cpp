#include "bergman/rkt.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/coeff_function.hpp"
#include "bergman/errors.hpp"
#include "bergman/translation.hpp"

namespace bergman {

double rkt_threshold(double kappa) {
  if (!(kappa < 2.0)) throw PreconditionError("kappa must be below 2");
  return (4.0 - kappa) / (2.0 - kappa);
}

namespace {

RktReport make_report(const SpaceSpec& space, double p, std::span<const DomainPoint> z_grid, int dim) {
  if (!(p > 1.0)) throw PreconditionError("exponent p must exceed 1");
  RktReport rep;
  rep.p = p;
  rep.kappa = space.kappa_value();
  rep.p_threshold = rkt_threshold(rep.kappa);
  rep.admissible = p > rep.p_threshold;
  rep.dim = dim;
  rep.z.assign(z_grid.begin(), z_grid.end());
  for (const DomainPoint& z : z_grid) check_admissible(space, z);
  return rep;
}

void push(RktSide& side, double v) {
  side.values.push_back(v);
  side.sup = std::max(side.sup, v);
}

void check_rule(const SpaceSpec& space, const QuadratureRule& rule) {
  if (!rule.space.same_geometry(space)) throw MismatchError("rule belongs to a different space");
}

// Nodes mapped through φ_z.
std::vector<DomainPoint> moved_nodes(const SpaceSpec& space, const DomainPoint& z, const QuadratureRule& rule) {
  std::vector<DomainPoint> out;
  out.reserve(rule.size());
  for (const DomainPoint& u : rule.nodes) out.push_back(involution(space, z, u));
  return out;
}

// {∫ (Σ_k |(U_z g)_k|)^p dσ}^{1/p}, with U_z g taken in coefficient space
// (compressed translation) and sampled on the rule.
double translated_lp(const CoeffFunction& g, const Eigen::MatrixXcd& translate, const Eigen::MatrixXcd& basis,
                     const QuadratureRule& rule, double p) {
  const Eigen::MatrixXcd values = basis * (translate * g.coeffs());
  double acc = 0.0;
  for (Eigen::Index n = 0; n < values.rows(); ++n)
    acc += rule.sigma_weights[static_cast<std::size_t>(n)] * std::pow(values.row(n).cwiseAbs().sum(), p);
  return std::pow(acc, 1.0 / p);
}

} // namespace

RktReport rkt_boundedness_check(const OperatorMatrix& t, const OperatorMatrix& t_adjoint, double p,
                                std::span<const DomainPoint> z_grid, const QuadratureRule& rule) {
  const SpaceSpec& space = t.space();
  if (t_adjoint.space() != space) throw MismatchError("operator and adjoint live on different spaces");
  check_rule(space, rule);
  const int d = space.component_dim;
  RktReport rep = make_report(space, p, z_grid, d);
  const Eigen::MatrixXcd basis = basis_matrix(rule);
  const int n = space.truncation_order;
  for (const DomainPoint& z : z_grid) {
    const Eigen::MatrixXcd translate = translation_block(space, z, n, n);
    for (int i = 0; i < d; ++i) {
      const CoeffFunction k = unit_kernel_coeffs(space, z, i);
      push(rep.primary, translated_lp(t_adjoint.apply(k), translate, basis, rule, p));
      push(rep.mirror, translated_lp(t.apply(k), translate, basis, rule, p));
    }
  }
  return rep;
}

RktReport rkt_toeplitz_symbol_check(const MatrixSymbol& f, double p, std::span<const DomainPoint> z_grid,
                                    const QuadratureRule& rule) {
  const SpaceSpec& space = f.space();
  check_rule(space, rule);
  const int d = f.dim();
  RktReport rep = make_report(space, p, z_grid, d);
  for (const DomainPoint& z : z_grid) {
    const auto moved = moved_nodes(space, z, rule);
    // norms(i, k) = ‖F_ik ∘ φ_z‖_{L^p(σ)}
    Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const Eigen::MatrixXcd v = f.eval(moved[n]);
      norms += rule.sigma_weights[n] * v.cwiseAbs().array().pow(p).matrix();
    }
    norms = norms.array().pow(1.0 / p).matrix();
    for (int i = 0; i < d; ++i) {
      push(rep.primary, norms.row(i).sum());
      push(rep.mirror, norms.col(i).sum());
    }
  }
  return rep;
}

RktReport rkt_product_check(const MatrixSymbol& f, const MatrixSymbol& g, double p,
                            std::span<const DomainPoint> z_grid, const QuadratureRule& rule) {
  const SpaceSpec& space = f.space();
  if (!g.space().same_geometry(space) || g.dim() != f.dim()) throw MismatchError("symbols live on different spaces");
  if (!f.is_analytic_polynomial() || !g.is_analytic_polynomial())
    throw PreconditionError("product check needs analytic polynomial entries");
  check_rule(space, rule);
  const int d = f.dim();
  RktReport rep = make_report(space, p, z_grid, d);
  for (const DomainPoint& z : z_grid) {
    const auto moved = moved_nodes(space, z, rule);
    const Eigen::MatrixXcd gz = g.eval(z);
    const Eigen::MatrixXcd fz = f.eval(z);
    // ⟨G^*(z)e_k, F^*(v)e_i⟩ = Σ_l conj(G_kl(z))·F_il(v) = (F(v)·G(z)^*)_{ik}
    Eigen::MatrixXd primary = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd mirror = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const Eigen::MatrixXcd fv = f.eval(moved[n]);
      const Eigen::MatrixXcd gv = g.eval(moved[n]);
      primary += rule.sigma_weights[n] * (fv * gz.adjoint()).cwiseAbs().array().pow(p).matrix();
      mirror += rule.sigma_weights[n] * (gv * fz.adjoint()).cwiseAbs().array().pow(p).matrix();
    }
    primary = primary.array().pow(1.0 / p).matrix();
    mirror = mirror.array().pow(1.0 / p).matrix();
    for (int k = 0; k < d; ++k) {
      push(rep.primary, primary.col(k).sum());
      push(rep.mirror, mirror.col(k).sum());
    }
  }
  return rep;
}

RktReport hankel_rkt_check(const MatrixSymbol& f, double p, std::span<const DomainPoint> z_grid,
                           const QuadratureRule& rule) {
  const SpaceSpec& space = f.space();
  check_rule(space, rule);
  const int d = f.dim();
  RktReport rep = make_report(space, p, z_grid, d);
  for (const DomainPoint& z : z_grid) {
    const auto moved = moved_nodes(space, z, rule);
    const Eigen::MatrixXcd fz = f.eval(z);
    Eigen::VectorXd primary = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd mirror = Eigen::VectorXd::Zero(d);
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const Eigen::MatrixXcd diff = fz - f.eval(moved[n]);
      const Eigen::VectorXd rows = diff.cwiseAbs().rowwise().sum();
      const Eigen::VectorXd cols = diff.cwiseAbs().colwise().sum().transpose();
      primary += rule.sigma_weights[n] * rows.array().pow(p).matrix();
      mirror += rule.sigma_weights[n] * cols.array().pow(p).matrix();
    }
    for (int i = 0; i < d; ++i) {
      push(rep.primary, std::pow(primary[i], 1.0 / p));
      push(rep.mirror, std::pow(mirror[i], 1.0 / p));
    }
  }
  return rep;
}

} // namespace bergman
