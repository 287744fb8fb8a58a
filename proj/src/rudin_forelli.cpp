#include "bergman/rudin_forelli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"

namespace bergman {

QuadratureRule rudin_forelli_rule(const SpaceSpec& space, int angular) {
  return build_rule(space, 64, angular);
}

std::vector<DomainPoint> default_z_grid(const SpaceSpec& space) {
  const std::vector<double> radii = space.kind == SpaceKind::Fock ? std::vector<double>{0.0, 1.0, 2.0, 3.0}
                                                                  : std::vector<double>{0.0, 0.3, 0.6, 0.8, 0.9};
  std::vector<DomainPoint> grid;
  for (double rad : radii) {
    if (rad == 0.0) {
      grid.emplace_back(cplx{});
      continue;
    }
    for (int j = 0; j < 8; ++j) {
      const cplx z = std::polar(rad, 2.0 * M_PI * j / 8.0);
      grid.push_back(space.kind == SpaceKind::Bidisc ? DomainPoint{z, z} : DomainPoint{z});
    }
  }
  return grid;
}

RudinForelliResult rudin_forelli(const SpaceSpec& space, double r, double s, std::span<const DomainPoint> z_grid,
                                 const QuadratureRule& rule) {
  if (!rule.space.same_geometry(space)) throw MismatchError("rule belongs to a different space");
  RudinForelliResult out;
  out.r = r;
  out.s = s;
  out.z.assign(z_grid.begin(), z_grid.end());
  if (!rudin_forelli_integrable(space, r)) {
    out.divergent = true;
    return out;
  }
  std::vector<double> log_norm_w(rule.size());
  for (std::size_t n = 0; n < rule.size(); ++n) log_norm_w[n] = log_kernel_norm_sq(space, rule.nodes[n]);

  out.ratio_min = std::numeric_limits<double>::infinity();
  out.ratio_max = 0.0;
  for (const DomainPoint& z : z_grid) {
    check_point(space, z);
    const double log_nz = log_kernel_norm_sq(space, z);
    double acc_i = 0.0;
    double acc_j = 0.0;
    for (std::size_t n = 0; n < rule.size(); ++n) {
      const double lk = log_abs_kernel(space, z, rule.nodes[n]);
      const double base = -0.5 * r * log_norm_w[n];
      acc_i += rule.lambda_weights[n] * std::exp(0.5 * (r + s) * lk - 0.5 * s * log_nz + base);
      acc_j += rule.lambda_weights[n] * std::exp(0.5 * (r - s) * lk + base);
    }
    out.i_values.push_back(acc_i);
    out.j_values.push_back(acc_j);
    out.ratio.push_back(acc_j / acc_i);
    out.sup_i = std::max(out.sup_i, acc_i);
    out.sup_j = std::max(out.sup_j, acc_j);
    out.ratio_min = std::min(out.ratio_min, acc_j / acc_i);
    out.ratio_max = std::max(out.ratio_max, acc_j / acc_i);
  }
  if (z_grid.empty()) out.ratio_min = 0.0;
  return out;
}

RudinForelliResult rudin_forelli(const SpaceSpec& space, double r, double s, std::span<const DomainPoint> z_grid) {
  return rudin_forelli(space, r, s, z_grid, rudin_forelli_rule(space));
}

std::vector<RudinForelliSweepRow> rudin_forelli_sweep(const SpaceSpec& space, std::span<const double> r_values,
                                                      std::span<const double> s_values,
                                                      std::span<const DomainPoint> z_grid,
                                                      const QuadratureRule& rule) {
  std::vector<RudinForelliSweepRow> rows;
  for (double r : r_values)
    for (double s : s_values) {
      const RudinForelliResult res = rudin_forelli(space, r, s, z_grid, rule);
      rows.push_back({r, s, res.divergent, res.sup_i});
    }
  return rows;
}

double empirical_kappa(const SpaceSpec& space, std::span<const double> r_values) {
  double best = std::numeric_limits<double>::infinity();
  for (double r : r_values)
    if (rudin_forelli_integrable(space, r)) best = std::min(best, r);
  return best;
}

} // namespace bergman
