#include "bergman/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include <Eigen/SVD>

#include "bergman/errors.hpp"

namespace bergman {

Eigen::MatrixXcd berezin(const OperatorMatrix& t, const DomainPoint& z) {
  const SpaceSpec& space = t.space();
  check_admissible(space, z);
  const int d = space.component_dim;
  const int modes = space.modes();
  Eigen::VectorXcd k = basis_values(space, z).conjugate();
  k /= k.norm();
  // (T k e_k)_{(m', i)}, contracted against conj(k[m']).
  Eigen::MatrixXcd out(d, d);
  const Eigen::MatrixXcd& m = t.matrix();
  for (int kk = 0; kk < d; ++kk) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(space.dim());
    for (int mm = 0; mm < modes; ++mm) col += k[mm] * m.col(mm * d + kk);
    for (int i = 0; i < d; ++i) {
      cplx acc{};
      for (int mp = 0; mp < modes; ++mp) acc += col[mp * d + i] * std::conj(k[mp]);
      out(i, kk) = acc;
    }
  }
  return out;
}

std::vector<double> uniform_angles(int count) {
  if (count < 1) throw PreconditionError("angle count must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) a[j] = 2.0 * M_PI * j / count;
  return a;
}

namespace {

DomainPoint polar_point(const SpaceSpec& space, double r, double theta) {
  const cplx z = std::polar(r, theta);
  return space.kind == SpaceKind::Bidisc ? DomainPoint{z, z} : DomainPoint{z};
}

} // namespace

BerezinProfile berezin_decay_profile(const OperatorMatrix& t, std::span<const double> radii,
                                     std::span<const double> angles, double threshold) {
  if (radii.empty() || angles.empty()) throw PreconditionError("profile needs radii and angles");
  BerezinProfile p;
  p.radii.assign(radii.begin(), radii.end());
  p.angles.assign(angles.begin(), angles.end());
  p.threshold = threshold;
  for (double r : radii) {
    double mx = 0.0;
    for (double a : angles) {
      Eigen::MatrixXcd b = berezin(t, polar_point(t.space(), r, a));
      mx = std::max(mx, b.cwiseAbs().maxCoeff());
      p.transforms.push_back(std::move(b));
    }
    p.max_entry.push_back(mx);
  }
  const std::size_t n = p.max_entry.size();
  bool decreasing = true;
  for (std::size_t i = n >= 3 ? n - 2 : 1; i < n; ++i)
    if (!(p.max_entry[i] < p.max_entry[i - 1])) decreasing = false;
  p.decaying = n >= 2 && decreasing && p.max_entry.back() < threshold;
  return p;
}

std::vector<DomainPoint> injectivity_grid(const SpaceSpec& space, int count) {
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
  // Fock basis functions are tiny near the origin; spread over the admissible disc
  const double rmax = space.kind == SpaceKind::Fock ? space.admissible() : std::min(0.6, space.admissible());
  std::vector<DomainPoint> pts;
  for (int i = 1; i <= side; ++i)
    for (int j = 0; j < side; ++j) pts.push_back(polar_point(space, rmax * i / side, 2.0 * M_PI * (j + 0.5 * i) / side));
  return pts;
}

InjectivityReport berezin_injectivity_probe(const SpaceSpec& space, int d, int n_small,
                                            std::span<const DomainPoint> points, double rel_tol) {
  const SpaceSpec small = space.with_truncation(n_small).with_components(d);
  small.validate();
  if (small.dim() > 8) throw PreconditionError(fmt::format("probe limited to N·d <= 8 (got {})", small.dim()));
  const int dim = small.dim();
  const int unknowns = dim * dim;
  // each point contributes a d×d transform
  if (static_cast<int>(points.size()) * d * d < unknowns)
    throw PreconditionError(fmt::format("grid has {} points, needs at least {}", points.size(), n_small * n_small));
  InjectivityReport rep;
  rep.operator_dim = unknowns;
  rep.sample_count = static_cast<int>(points.size()) * d * d;
  Eigen::MatrixXcd map(rep.sample_count, unknowns);
  for (int c = 0; c < unknowns; ++c) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
    e(c / dim, c % dim) = 1.0;
    const OperatorMatrix t(small, e);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const Eigen::MatrixXcd b = berezin(t, points[p]);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) map(static_cast<Eigen::Index>(p) * d * d + i * d + k, c) = b(i, k);
    }
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(map).singularValues();
  rep.largest_singular_value = sv(0);
  rep.smallest_singular_value = sv(sv.size() - 1);
  rep.rank = static_cast<int>((sv.array() > rel_tol * sv(0)).count());
  rep.full_rank = rep.rank == unknowns;
  return rep;
}

InjectivityReport berezin_injectivity_probe(const SpaceSpec& space, int d, int n_small) {
  const int dim = n_small * d * (space.kind == SpaceKind::Bidisc ? n_small : 1);
  const auto grid = injectivity_grid(space, std::max(9, dim * dim));
  return berezin_injectivity_probe(space, d, n_small, grid);
}

} // namespace bergman
