#pragma once

#include <span>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/space.hpp"

namespace bergman {

struct RudinForelliResult {
  double r = 0.0;
  double s = 0.0;
  bool divergent = false;
  std::vector<DomainPoint> z;
  // I(z) = ∫ |⟨K_z,K_w⟩|^{(r+s)/2} / (‖K_z‖^s ‖K_w‖^r) dλ(w)
  std::vector<double> i_values;
  // J(z) = ∫ |⟨K_z,K_w⟩|^{(r−s)/2} / ‖K_w‖^r dλ(w)
  std::vector<double> j_values;
  std::vector<double> ratio;  // J/I
  double sup_i = 0.0;
  double sup_j = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
};

/// Evaluates both kernel-power integrals on `rule` in log space. A pair (r, s)
/// failing the boundary integrability check yields `divergent` and no values.
RudinForelliResult rudin_forelli(const SpaceSpec& space, double r, double s, std::span<const DomainPoint> z_grid,
                                 const QuadratureRule& rule);
RudinForelliResult rudin_forelli(const SpaceSpec& space, double r, double s, std::span<const DomainPoint> z_grid);

/// 64 Gauss nodes per radial panel times `angular` equispaced angles.
QuadratureRule rudin_forelli_rule(const SpaceSpec& space, int angular = 256);

/// Disc: radii {0, .3, .6, .8, .9}; Fock: {0, 1, 2, 3}; 8 angles per nonzero
/// radius. Bidisc points sit on the diagonal.
std::vector<DomainPoint> default_z_grid(const SpaceSpec& space);

struct RudinForelliSweepRow {
  double r = 0.0;
  double s = 0.0;
  bool divergent = false;
  double sup_i = 0.0;
};

/// Grid scan over (r, s) reporting which pairs are integrable and their sup.
std::vector<RudinForelliSweepRow> rudin_forelli_sweep(const SpaceSpec& space, std::span<const double> r_values,
                                                      std::span<const double> s_values,
                                                      std::span<const DomainPoint> z_grid,
                                                      const QuadratureRule& rule);

/// Smallest r on `r_values` that passes the integrability check; its value
/// is the empirical κ reported for the space.
double empirical_kappa(const SpaceSpec& space, std::span<const double> r_values);

} // namespace bergman
