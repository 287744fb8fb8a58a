#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

struct AxiomCheck {
  std::string name;
  std::string statement;
  double value = 0.0;      // measured residual (or violation count)
  double tolerance = 0.0;
  bool pass = false;
};

struct AxiomSuiteOptions {
  int random_pairs = 1000;
  std::uint64_t seed = 2024;
  double reproducing_tol = 1e-8;
  double involution_tol = 1e-12;
  double exact_identity_tol = 1e-10;
  double orthonormality_tol = 1e-10;
  double metric_tol = 1e-10;
};

/// Points along a ray that approach the boundary (disc: 1 − 2^{−j}, j = 3..12;
/// Fock: radius j, j = 1..10).
std::vector<double> boundary_shells(const SpaceSpec& space);

/// Invariant checks of a model space on a quadrature rule: σ-mass,
/// orthonormal basis, reproducing property, involutivity, the exact
/// kernel/involution identity, metric invariance, weak-null decay and
/// kernel-norm growth.
std::vector<AxiomCheck> verify_axioms(const QuadratureRule& rule, const AxiomSuiteOptions& options = {});

} // namespace bergman
