#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/space.hpp"
#include "bergman/symbol.hpp"

namespace lab {

struct QuadratureSettings {
  int radial = 0;   // 0 selects the per-space default
  int angular = 0;
};

struct ExperimentConfig {
  nlohmann::json source;  // the document as read, echoed into reports
  bergman::SpaceSpec space;
  QuadratureSettings quadrature;
  std::map<std::string, bergman::MatrixSymbol> symbols;
  // The operator under study is the product of the Toeplitz operators of these
  // symbols, left to right; empty means the identity.
  std::vector<std::string> operator_factors;
  // Optional pair (F, G) for the analytic product check of `rkt`.
  std::vector<std::string> product_pair;

  std::vector<bergman::DomainPoint> z_grid;  // empty selects the default grid
  std::vector<double> radii{0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> shells{0.5, 0.7, 0.9};
  int angle_count = 8;

  double p = 4.0;
  double threshold = 0.05;
  std::vector<double> covering_radii{0.5, 1.0, 2.0, 4.0};
  double rf_r = 3.0;
  double rf_s = 3.0;
  std::vector<double> rf_r_values;
  std::vector<double> rf_s_values;
  int rank1_pairs = 10;
  int rank1_degree = 4;
  double rank1_tolerance = 1e-6;
  std::filesystem::path kernel_file;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates a configuration document. Every referenced symbol
/// must be defined and every point must lie in the domain; violations throw
/// bergman::PreconditionError or bergman::DomainError.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Scalar entries: a number, {re, im} or [re, im] (constant);
/// {"poly": [[c, p, q], ...]} for Σ c z^p conj(z)^q ([c, p1, q1, p2, q2] on
/// the bidisc); {"ball": {center, radius, metric, value}}.
bergman::ScalarSymbol parse_scalar(const bergman::SpaceSpec& space, const nlohmann::json& j);

/// Matrix symbols: "identity"; {"identity": c}; {"diagonal": scalar,
/// "components": k}; {"matrix": [[scalar, ...], ...]} filling the leading
/// block; {"entries": [{"row", "col", "value"}, ...]}.
bergman::MatrixSymbol parse_symbol(const bergman::SpaceSpec& space, const nlohmann::json& j);

} // namespace lab
