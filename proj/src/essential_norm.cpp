#include "bergman/essential_norm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/translation.hpp"

namespace bergman {

std::vector<CoeffFunction> default_probe_set(const SpaceSpec& space, int random_count, std::uint64_t seed) {
  std::vector<CoeffFunction> probes;
  for (int m = 0; m < space.modes(); ++m)
    for (int k = 0; k < space.component_dim; ++k) probes.push_back(CoeffFunction::basis(space, m, k));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int j = 0; j < random_count; ++j) {
    Eigen::VectorXcd v(space.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {gauss(rng), gauss(rng)};
    v /= v.norm();
    probes.emplace_back(space, v);
  }
  return probes;
}

EssentialNormReport essential_norm_estimate(const OperatorMatrix& t, std::span<const double> shells,
                                            std::span<const double> angles, std::span<const CoeffFunction> probes) {
  if (shells.empty() || angles.empty() || probes.empty())
    throw PreconditionError("essential norm estimate needs shells, angles and probes");
  if (!std::is_sorted(shells.begin(), shells.end())) throw PreconditionError("shell radii must increase");
  const SpaceSpec& space = t.space();
  Eigen::MatrixXcd probe_matrix(space.dim(), static_cast<Eigen::Index>(probes.size()));
  for (std::size_t j = 0; j < probes.size(); ++j) {
    if (probes[j].space() != space) throw MismatchError("probe lives on a different space");
    probe_matrix.col(static_cast<Eigen::Index>(j)) = probes[j].flat();
  }

  EssentialNormReport rep;
  rep.shells.assign(shells.begin(), shells.end());
  rep.angles.assign(angles.begin(), angles.end());
  rep.probe_count = probes.size();
  for (double r : shells) {
    std::vector<double> best(probes.size(), 0.0);
    for (double a : angles) {
      const cplx z = std::polar(r, a);
      const DomainPoint pt = space.kind == SpaceKind::Bidisc ? DomainPoint{z, z} : DomainPoint{z};
      const Eigen::MatrixXcd images = conjugate_compressed(t, pt).matrix() * probe_matrix;
      for (std::size_t j = 0; j < probes.size(); ++j)
        best[j] = std::max(best[j], images.col(static_cast<Eigen::Index>(j)).norm());
    }
    rep.per_probe.insert(rep.per_probe.end(), best.begin(), best.end());
    rep.lower_profile.push_back(*std::max_element(best.begin(), best.end()));
  }
  rep.estimate = rep.lower_profile.back();
  const std::size_t n = rep.lower_profile.size();
  rep.monotone_tail = n < 2 || rep.lower_profile[n - 1] <= rep.lower_profile[n - 2];
  rep.proxy_rank = space.modes() / 2 * space.component_dim;
  const Eigen::VectorXd sv = singular_values(t.matrix());
  rep.singular_value_proxy = rep.proxy_rank < sv.size() ? sv(rep.proxy_rank) : 0.0;
  return rep;
}

EssentialNormReport essential_norm_estimate(const OperatorMatrix& t, std::span<const double> shells,
                                            std::span<const double> angles) {
  const auto probes = default_probe_set(t.space());
  return essential_norm_estimate(t, shells, angles, probes);
}

} // namespace bergman
