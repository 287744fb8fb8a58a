#pragma once

#include <vector>

#include "bergman/operator_matrix.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// One cell F_j. Disc cells are hyperbolic annular sectors
/// (inner ≤ 𝔡(0,z) < outer, theta0 ≤ arg z < theta1); Fock cells are squares
/// [x0, x1) × [y0, y1).
struct Cell {
  int annulus = 0;
  int sector = 0;
  double inner = 0.0;
  double outer = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

/// Cells are realized on the nodes of a quadrature rule; cells without nodes
/// are dropped. Enlargements G_j = {nodes y : 𝔡(y, F_j) ≤ r}.
struct Covering {
  SpaceSpec space;
  double r = 0.0;
  QuadratureRule rule;
  std::vector<Cell> cells;
  std::vector<int> cell_of_node;
  std::vector<std::vector<int>> cell_nodes;
  std::vector<std::vector<int>> enlargement_nodes;
  std::vector<int> multiplicity;  // per node
  int measured_multiplicity = 0;
};

Covering build_covering(const QuadratureRule& rule, double r);
/// F_1 = G_1 = all nodes.
Covering single_cell_covering(const QuadratureRule& rule);

struct CoveringCheck {
  bool partition = false;        // every node in exactly one cell
  bool covered = false;          // every node in at least one enlargement
  bool enlargements_contain_cells = false;
  double max_diameter = 0.0;     // max over cells of node-pair 𝔡-distances
  bool diameter_bound = false;   // max_diameter ≤ 4r
  int measured_multiplicity = 0;
};

CoveringCheck verify_covering(const Covering& cov);

/// Discretized norm of T − Σ_j M_{1_{F_j}} T T_{1_{G_j}} as a map from the
/// truncated space into L²(σ) sampled on the covering's rule.
double localization_error(const OperatorMatrix& t, const Covering& cov);

} // namespace bergman
