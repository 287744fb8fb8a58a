#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bergman/coeff_function.hpp"
#include "bergman/operator_matrix.hpp"

namespace bergman {

/// N·d basis probes followed by `random_count` seeded random unit probes.
std::vector<CoeffFunction> default_probe_set(const SpaceSpec& space, int random_count = 8, std::uint64_t seed = 2024);

struct EssentialNormReport {
  std::vector<double> shells;       // radii, increasing
  std::vector<double> angles;
  // per_probe[s * probes + j] = max over angles of ‖T^z f_j‖ at shell s
  std::vector<double> per_probe;
  std::size_t probe_count = 0;
  std::vector<double> lower_profile;  // max over probes per shell
  double estimate = 0.0;              // outermost shell value
  bool monotone_tail = false;         // last two shells non-increasing
  int proxy_rank = 0;
  double singular_value_proxy = 0.0;  // σ_{rank+1}(T)
};

/// ‖U_z T U_z^* f‖ in the compressed algebra over shells × angles × probes.
EssentialNormReport essential_norm_estimate(const OperatorMatrix& t, std::span<const double> shells,
                                            std::span<const double> angles, std::span<const CoeffFunction> probes);
EssentialNormReport essential_norm_estimate(const OperatorMatrix& t, std::span<const double> shells,
                                            std::span<const double> angles);

} // namespace bergman
