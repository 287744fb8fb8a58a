#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "bergman/operator_matrix.hpp"

namespace bergman {

/// d×d matrix ⟨T k_z e_k, k_z e_i⟩ with truncated kernels renormalized to
/// unit norm.
Eigen::MatrixXcd berezin(const OperatorMatrix& t, const DomainPoint& z);

struct BerezinProfile {
  std::vector<double> radii;
  std::vector<double> angles;
  // transforms[r * angles + a]
  std::vector<Eigen::MatrixXcd> transforms;
  std::vector<double> max_entry;  // per radius, over angles and (i, k)
  double threshold = 0.0;
  bool decaying = false;
};

/// Decaying means strictly decreasing over the last three radii and below
/// `threshold` at the last one.
BerezinProfile berezin_decay_profile(const OperatorMatrix& t, std::span<const double> radii,
                                     std::span<const double> angles, double threshold);

/// Equispaced angles 2πj/count.
std::vector<double> uniform_angles(int count);

struct InjectivityReport {
  int operator_dim = 0;   // (N·d)²
  int sample_count = 0;   // points · d²
  int rank = 0;
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  bool full_rank = false;
};

/// Numerical rank of T ↦ (T̃(z))_{z ∈ points} over all operators on the
/// truncation `n_small` with `d` components.
InjectivityReport berezin_injectivity_probe(const SpaceSpec& space, int d, int n_small,
                                            std::span<const DomainPoint> points, double rel_tol = 1e-10);
/// Same with the default grid of radii {0.2, 0.4, …} × equispaced angles.
InjectivityReport berezin_injectivity_probe(const SpaceSpec& space, int d, int n_small);

/// At least `count` points: ⌈√count⌉ radii in (0, 0.6] (Fock: up to the
/// admissible radius) times as many angles.
std::vector<DomainPoint> injectivity_grid(const SpaceSpec& space, int count);

} // namespace bergman
