#include "config.hpp"

#include <fstream>
#include <set>

#include "bergman/errors.hpp"
#include "bergman/serialize.hpp"

namespace lab {

using bergman::PreconditionError;
using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError("config: " + what);
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items())
    require(known.contains(key), "unknown key '" + key + "' in " + where);
}

std::vector<double> positive_list(const json& j, const std::string& name) {
  require(j.is_array() && !j.empty(), name + " must be a nonempty array");
  std::vector<double> out;
  for (const json& v : j) {
    require(v.is_number() && v.get<double>() > 0.0, name + " entries must be positive numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

bergman::Monomial parse_monomial(const bergman::SpaceSpec& space, const json& t) {
  const std::size_t arity = space.variables() == 2 ? 5 : 3;
  require(t.is_array() && t.size() == arity, "polynomial terms must have " + std::to_string(arity) + " entries");
  bergman::Monomial m;
  m.coeff = bergman::complex_from_json(t[0]);
  const auto power = [&](std::size_t i) {
    require(t[i].is_number_integer() && t[i].get<int>() >= 0, "exponents must be nonnegative integers");
    return t[i].get<int>();
  };
  m.p1 = power(1);
  m.q1 = power(2);
  if (arity == 5) {
    m.p2 = power(3);
    m.q2 = power(4);
  }
  return m;
}

bool is_complex_literal(const json& j) {
  return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) ||
         (j.is_object() && (j.contains("re") || j.contains("im")) && j.size() <= 2);
}

int checked_index(const json& j, int dim, const std::string& name) {
  require(j.is_number_integer(), name + " must be an integer");
  const int v = j.get<int>();
  require(v >= 0 && v < dim, name + " out of range");
  return v;
}

} // namespace

bergman::ScalarSymbol parse_scalar(const bergman::SpaceSpec& space, const json& j) {
  if (is_complex_literal(j)) return bergman::Constant{bergman::complex_from_json(j)};
  require(j.is_object() && j.size() == 1, "scalar symbol must be a constant, {\"poly\": ...} or {\"ball\": ...}");
  if (j.contains("poly")) {
    const json& terms = j.at("poly");
    require(terms.is_array(), "poly must be an array of terms");
    bergman::Polynomial p;
    for (const json& t : terms) p.terms.push_back(parse_monomial(space, t));
    return p;
  }
  if (j.contains("ball")) {
    const json& b = j.at("ball");
    reject_unknown(b, {"center", "radius", "metric", "value"}, "ball");
    bergman::BallIndicator ball;
    if (b.contains("center")) {
      const json& c = b.at("center");
      ball.center = is_complex_literal(c) ? bergman::DomainPoint{bergman::complex_from_json(c)}
                                          : c.get<bergman::DomainPoint>();
    }
    require(b.contains("radius") && b.at("radius").is_number() && b.at("radius").get<double>() > 0.0,
            "ball radius must be a positive number");
    ball.radius = b.at("radius").get<double>();
    const std::string metric = b.value("metric", "intrinsic");
    require(metric == "intrinsic" || metric == "euclidean", "ball metric must be intrinsic or euclidean");
    ball.metric = metric == "intrinsic" ? bergman::BallMetric::Intrinsic : bergman::BallMetric::Euclidean;
    if (b.contains("value")) ball.value = bergman::complex_from_json(b.at("value"));
    bergman::check_point(space, ball.center);
    return ball;
  }
  throw PreconditionError("config: unknown scalar symbol form " + j.dump());
}

bergman::MatrixSymbol parse_symbol(const bergman::SpaceSpec& space, const json& j) {
  const int d = space.component_dim;
  if (j.is_string()) {
    require(j.get<std::string>() == "identity", "unknown symbol keyword '" + j.get<std::string>() + "'");
    return bergman::MatrixSymbol::identity(space);
  }
  require(j.is_object() && !j.empty(), "symbol must be \"identity\" or an object");
  if (j.contains("identity")) {
    reject_unknown(j, {"identity"}, "identity symbol");
    return bergman::MatrixSymbol::identity(space, bergman::complex_from_json(j.at("identity")));
  }
  if (j.contains("diagonal")) {
    reject_unknown(j, {"diagonal", "components"}, "diagonal symbol");
    const int k = j.value("components", -1);
    require(k <= d, "diagonal components exceed the component dimension");
    return bergman::MatrixSymbol::scalar_times_identity(space, parse_scalar(space, j.at("diagonal")), k);
  }
  bergman::MatrixSymbol u = bergman::MatrixSymbol::zero(space);
  if (j.contains("matrix")) {
    reject_unknown(j, {"matrix"}, "matrix symbol");
    const json& rows = j.at("matrix");
    require(rows.is_array() && static_cast<int>(rows.size()) <= d, "matrix has more rows than components");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].is_array() && static_cast<int>(rows[i].size()) <= d, "matrix row longer than components");
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        u.set(static_cast<int>(i), static_cast<int>(k), parse_scalar(space, rows[i][k]));
    }
    return u;
  }
  if (j.contains("entries")) {
    reject_unknown(j, {"entries"}, "entries symbol");
    require(j.at("entries").is_array(), "entries must be an array");
    for (const json& e : j.at("entries")) {
      reject_unknown(e, {"row", "col", "value"}, "symbol entry");
      u.set(checked_index(e.at("row"), d, "row"), checked_index(e.at("col"), d, "col"),
            parse_scalar(space, e.at("value")));
    }
    return u;
  }
  throw PreconditionError("config: unknown symbol form " + j.dump());
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  require(doc.is_object(), "top level must be an object");
  reject_unknown(doc, {"space", "quadrature", "symbols", "operator", "grids", "diagnostics", "seed"}, "config");
  ExperimentConfig c;
  c.source = doc;
  require(doc.contains("space"), "missing space block");
  reject_unknown(doc.at("space"),
                 {"kind", "alpha", "alpha2", "truncation_order", "component_dim", "fock_cutoff_radius",
                  "admissible_radius", "kappa"},
                 "space");
  c.space = doc.at("space").get<bergman::SpaceSpec>();

  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    reject_unknown(q, {"radial", "angular"}, "quadrature");
    c.quadrature.radial = q.value("radial", 0);
    c.quadrature.angular = q.value("angular", 0);
    require(c.quadrature.radial >= 0 && c.quadrature.angular >= 0, "quadrature orders must be nonnegative");
    require((c.quadrature.radial == 0) == (c.quadrature.angular == 0), "give both quadrature orders or neither");
  }

  if (doc.contains("symbols")) {
    require(doc.at("symbols").is_object(), "symbols must be an object of named symbols");
    for (const auto& [name, value] : doc.at("symbols").items()) c.symbols.emplace(name, parse_symbol(c.space, value));
  }
  const auto defined = [&](const std::string& name) {
    require(c.symbols.contains(name), "undefined symbol '" + name + "'");
    return name;
  };
  if (doc.contains("operator")) {
    const json& op = doc.at("operator");
    if (op.is_string()) {
      c.operator_factors.push_back(defined(op.get<std::string>()));
    } else {
      require(op.is_array(), "operator must be a symbol name or an array of names");
      for (const json& name : op) c.operator_factors.push_back(defined(name.get<std::string>()));
    }
  }

  if (doc.contains("grids")) {
    const json& g = doc.at("grids");
    reject_unknown(g, {"z", "radii", "shells", "angles"}, "grids");
    if (g.contains("z")) {
      require(g.at("z").is_array() && !g.at("z").empty(), "grids.z must be a nonempty array");
      for (const json& z : g.at("z")) {
        const bergman::DomainPoint p =
            is_complex_literal(z) ? bergman::DomainPoint{bergman::complex_from_json(z)} : z.get<bergman::DomainPoint>();
        bergman::check_admissible(c.space, p);
        c.z_grid.push_back(p);
      }
    }
    if (g.contains("radii")) c.radii = positive_list(g.at("radii"), "grids.radii");
    if (g.contains("shells")) c.shells = positive_list(g.at("shells"), "grids.shells");
    c.angle_count = g.value("angles", c.angle_count);
    require(c.angle_count >= 1, "grids.angles must be positive");
  }
  for (double r : c.radii) bergman::check_admissible(c.space, bergman::DomainPoint{r});
  for (double r : c.shells) bergman::check_admissible(c.space, bergman::DomainPoint{r});

  if (doc.contains("diagnostics")) {
    const json& d = doc.at("diagnostics");
    reject_unknown(d,
                   {"p", "threshold", "covering_radii", "rf_r", "rf_s", "rf_r_values", "rf_s_values", "rank1_pairs",
                    "rank1_degree", "rank1_tolerance", "kernel_file", "product"},
                   "diagnostics");
    c.p = d.value("p", c.p);
    require(c.p >= 1.0, "p must be at least 1");
    c.threshold = d.value("threshold", c.threshold);
    require(c.threshold > 0.0, "threshold must be positive");
    if (d.contains("covering_radii")) c.covering_radii = positive_list(d.at("covering_radii"), "covering_radii");
    c.rf_r = d.value("rf_r", c.rf_r);
    c.rf_s = d.value("rf_s", c.rf_s);
    if (d.contains("rf_r_values")) c.rf_r_values = positive_list(d.at("rf_r_values"), "rf_r_values");
    if (d.contains("rf_s_values")) c.rf_s_values = positive_list(d.at("rf_s_values"), "rf_s_values");
    c.rank1_pairs = d.value("rank1_pairs", c.rank1_pairs);
    c.rank1_degree = d.value("rank1_degree", c.rank1_degree);
    c.rank1_tolerance = d.value("rank1_tolerance", c.rank1_tolerance);
    require(c.rank1_pairs >= 1 && c.rank1_degree >= 0, "rank1 pairs/degree out of range");
    if (d.contains("kernel_file")) {
      const std::filesystem::path k = d.at("kernel_file").get<std::string>();
      c.kernel_file = k.is_absolute() ? k : base_dir / k;
    }
    if (d.contains("product")) {
      const json& pr = d.at("product");
      require(pr.is_array() && pr.size() == 2, "diagnostics.product must name two symbols");
      for (const json& name : pr) c.product_pair.push_back(defined(name.get<std::string>()));
    }
  }
  if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw PreconditionError("config: " + path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

} // namespace lab
