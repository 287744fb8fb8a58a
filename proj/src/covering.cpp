#include "bergman/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Largest distance between two points at hyperbolic radius h whose angles
// differ by at most dt.
double chord(double h, double dt) {
  const double rho = std::tanh(h);
  const cplx a{rho, 0.0};
  const cplx b = std::polar(rho, std::min(dt, M_PI));
  return std::atanh(std::min(1.0, std::abs((a - b) / (1.0 - std::conj(a) * b))));
}

int sectors_for(double h_out, double r) {
  int s = 1;
  while (chord(h_out, 2.0 * M_PI / s) > 2.0 * r) {
    s *= 2;
    if (s > (1 << 24)) throw PreconditionError("covering needs too many sectors");
  }
  // Refine downwards between s/2 and s.
  int lo = std::max(1, s / 2);
  int hi = s;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (chord(h_out, 2.0 * M_PI / mid) <= 2.0 * r) hi = mid;
    else lo = mid + 1;
  }
  return hi;
}

double angle_of(cplx z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * M_PI;
  if (a >= 2.0 * M_PI) a = 0.0;
  return a;
}

double square_distance(const Cell& c, cplx z) {
  const double dx = std::max({c.x0 - z.real(), 0.0, z.real() - c.x1});
  const double dy = std::max({c.y0 - z.imag(), 0.0, z.imag() - c.y1});
  return std::hypot(dx, dy);
}

void finish(Covering& cov) {
  const std::size_t n = cov.rule.size();
  cov.multiplicity.assign(n, 0);
  for (const auto& g : cov.enlargement_nodes)
    for (int y : g) ++cov.multiplicity[static_cast<std::size_t>(y)];
  cov.measured_multiplicity = n == 0 ? 0 : *std::max_element(cov.multiplicity.begin(), cov.multiplicity.end());
}

} // namespace

Covering build_covering(const QuadratureRule& rule, double r) {
  if (!(r > 0.0)) throw PreconditionError("covering radius must be positive");
  const SpaceSpec& space = rule.space;
  if (space.kind == SpaceKind::Bidisc) throw PreconditionError("coverings are implemented for one-variable spaces");
  Covering cov;
  cov.space = space;
  cov.r = r;
  cov.rule = rule;
  const std::size_t n = rule.size();
  std::map<std::tuple<int, int>, int> index;
  cov.cell_of_node.assign(n, -1);

  if (space.kind == SpaceKind::BergmanDisc) {
    double h_max = 0.0;
    for (const auto& z : rule.nodes) h_max = std::max(h_max, std::atanh(std::abs(z.z1)));
    const double width = 2.0 * r;
    std::map<int, int> sectors;
    for (std::size_t x = 0; x < n; ++x) {
      const cplx z = rule.nodes[x].z1;
      const double h = std::atanh(std::abs(z));
      const int a = static_cast<int>(std::floor(h / width));
      int s = 0;
      int count = 1;
      if (a > 0) {
        auto it = sectors.find(a);
        if (it == sectors.end()) it = sectors.emplace(a, sectors_for(std::min(width * (a + 1), h_max), r)).first;
        count = it->second;
        s = std::min(count - 1, static_cast<int>(std::floor(angle_of(z) / (2.0 * M_PI / count))));
      }
      auto [it, inserted] = index.try_emplace({a, s}, static_cast<int>(cov.cells.size()));
      if (inserted) {
        Cell c;
        c.annulus = a;
        c.sector = s;
        c.inner = width * a;
        c.outer = std::min(width * (a + 1), h_max);
        c.theta0 = 2.0 * M_PI * s / count;
        c.theta1 = 2.0 * M_PI * (s + 1) / count;
        cov.cells.push_back(c);
        cov.cell_nodes.emplace_back();
      }
      cov.cell_of_node[x] = it->second;
      cov.cell_nodes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(x));
    }
    // Node-level enlargement: nearest node of F_j within r.
    cov.enlargement_nodes.resize(cov.cells.size());
    for (std::size_t j = 0; j < cov.cells.size(); ++j) {
      for (std::size_t y = 0; y < n; ++y) {
        bool near = cov.cell_of_node[y] == static_cast<int>(j);
        for (std::size_t q = 0; !near && q < cov.cell_nodes[j].size(); ++q)
          near = metric(space, rule.nodes[static_cast<std::size_t>(cov.cell_nodes[j][q])], rule.nodes[y]) <= r;
        if (near) cov.enlargement_nodes[j].push_back(static_cast<int>(y));
      }
    }
  } else {
    const double side = 2.0 * std::sqrt(2.0) * r;
    for (std::size_t x = 0; x < n; ++x) {
      const cplx z = rule.nodes[x].z1;
      const int ix = static_cast<int>(std::floor(z.real() / side));
      const int iy = static_cast<int>(std::floor(z.imag() / side));
      auto [it, inserted] = index.try_emplace({ix, iy}, static_cast<int>(cov.cells.size()));
      if (inserted) {
        Cell c;
        c.annulus = ix;
        c.sector = iy;
        c.x0 = ix * side;
        c.x1 = (ix + 1) * side;
        c.y0 = iy * side;
        c.y1 = (iy + 1) * side;
        cov.cells.push_back(c);
        cov.cell_nodes.emplace_back();
      }
      cov.cell_of_node[x] = it->second;
      cov.cell_nodes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(x));
    }
    cov.enlargement_nodes.resize(cov.cells.size());
    for (std::size_t j = 0; j < cov.cells.size(); ++j)
      for (std::size_t y = 0; y < n; ++y)
        if (square_distance(cov.cells[j], rule.nodes[y].z1) <= r) cov.enlargement_nodes[j].push_back(static_cast<int>(y));
  }
  finish(cov);
  return cov;
}

Covering single_cell_covering(const QuadratureRule& rule) {
  Covering cov;
  cov.space = rule.space;
  cov.r = std::numeric_limits<double>::infinity();
  cov.rule = rule;
  cov.cells.emplace_back();
  const int n = static_cast<int>(rule.size());
  cov.cell_of_node.assign(rule.size(), 0);
  cov.cell_nodes.emplace_back();
  for (int x = 0; x < n; ++x) cov.cell_nodes[0].push_back(x);
  cov.enlargement_nodes = cov.cell_nodes;
  finish(cov);
  return cov;
}

CoveringCheck verify_covering(const Covering& cov) {
  CoveringCheck chk;
  const std::size_t n = cov.rule.size();
  std::vector<int> hits(n, 0);
  for (const auto& cell : cov.cell_nodes)
    for (int x : cell) ++hits[static_cast<std::size_t>(x)];
  chk.partition = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  chk.covered = std::all_of(cov.multiplicity.begin(), cov.multiplicity.end(), [](int m) { return m >= 1; });
  chk.enlargements_contain_cells = true;
  for (std::size_t j = 0; j < cov.cells.size(); ++j) {
    const auto& g = cov.enlargement_nodes[j];
    for (int x : cov.cell_nodes[j])
      if (!std::binary_search(g.begin(), g.end(), x)) chk.enlargements_contain_cells = false;
  }
  for (const auto& cell : cov.cell_nodes)
    for (std::size_t a = 0; a < cell.size(); ++a)
      for (std::size_t b = a + 1; b < cell.size(); ++b)
        chk.max_diameter = std::max(chk.max_diameter, metric(cov.space, cov.rule.nodes[static_cast<std::size_t>(cell[a])],
                                                             cov.rule.nodes[static_cast<std::size_t>(cell[b])]));
  chk.diameter_bound = chk.max_diameter <= 4.0 * cov.r;
  chk.measured_multiplicity = cov.measured_multiplicity;
  return chk;
}

double localization_error(const OperatorMatrix& t, const Covering& cov) {
  const SpaceSpec& space = t.space();
  if (!cov.space.same_geometry(space) || cov.space.truncation_order != space.truncation_order)
    throw MismatchError("covering and operator live on different spaces");
  const int d = space.component_dim;
  const int modes = space.modes();
  const auto& rule = cov.rule;
  const Eigen::MatrixXcd basis = basis_matrix(rule);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(space.dim(), space.dim());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (std::size_t j = 0; j < cov.cells.size(); ++j) {
    // T_{1_G} = Σ_{y∈G} w_y conj(b_y) b_yᵀ ⊗ I_d
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(modes, modes);
    for (int y : cov.enlargement_nodes[j]) {
      const auto row = basis.row(y);
      s.noalias() += rule.sigma_weights[static_cast<std::size_t>(y)] * (row.adjoint() * row);
    }
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (int a = 0; a < modes; ++a)
      for (int b = 0; b < modes; ++b)
        for (int k = 0; k < d; ++k) proj(a * d + k, b * d + k) = s(a, b);
    const Eigen::MatrixXcd tail = t.matrix() * (id - proj);
    const auto& cell = cov.cell_nodes[j];
    Eigen::MatrixXcd rows(static_cast<Eigen::Index>(cell.size()) * d, space.dim());
    for (std::size_t q = 0; q < cell.size(); ++q) {
      const int x = cell[q];
      const double sw = std::sqrt(rule.sigma_weights[static_cast<std::size_t>(x)]);
      for (int k = 0; k < d; ++k) {
        Eigen::RowVectorXcd sel = Eigen::RowVectorXcd::Zero(space.dim());
        for (int m = 0; m < modes; ++m) sel[m * d + k] = basis(x, m);
        rows.row(static_cast<Eigen::Index>(q) * d + k) = sw * (sel * tail);
      }
    }
    gram.noalias() += rows.adjoint() * rows;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

} // namespace bergman
