#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>

#include "bergman/axioms.hpp"
#include "bergman/berezin.hpp"
#include "bergman/covering.hpp"
#include "bergman/errors.hpp"
#include "bergman/essential_norm.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rkt.hpp"
#include "bergman/rudin_forelli.hpp"
#include "bergman/schur.hpp"
#include "bergman/serialize.hpp"
#include "bergman/toeplitz.hpp"

namespace lab {

using bergman::DomainPoint;
using bergman::OperatorMatrix;
using bergman::QuadratureRule;
using nlohmann::json;

namespace {

std::string num(double v) { return format_number(v); }
std::string num(int v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

const std::vector<std::string> kPointHeader{"z1_re", "z1_im", "z2_re", "z2_im"};

std::vector<std::string> point_fields(const DomainPoint& z) {
  return {num(z.z1.real()), num(z.z1.imag()), num(z.z2.real()), num(z.z2.imag())};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int scaled(int order, double scale) { return std::max(1, static_cast<int>(std::lround(order * scale))); }

QuadratureRule rule_for(const ExperimentConfig& c, const RunOptions& o) {
  if (c.quadrature.radial > 0)
    return bergman::build_rule(c.space, scaled(c.quadrature.radial, o.resolution_scale),
                               scaled(c.quadrature.angular, o.resolution_scale));
  return bergman::default_rule(c.space, o.resolution_scale);
}

std::vector<DomainPoint> grid_for(const ExperimentConfig& c) {
  return c.z_grid.empty() ? bergman::default_z_grid(c.space) : c.z_grid;
}

json points_json(std::span<const DomainPoint> pts) {
  json out = json::array();
  for (const DomainPoint& z : pts) out.push_back(z);
  return out;
}

Report kernel(const ExperimentConfig& c, const RunOptions&) {
  Report r;
  r.check = "space.kernel";
  r.statement = "Kernel norms, intrinsic distance to the origin, measure densities and truncation tails on a grid";
  r.table.header = concat(kPointHeader, {"kernel_norm", "log_kernel_norm_sq", "distance_to_origin", "sigma_density",
                                         "lambda_density", "kernel_tail"});
  const std::vector<DomainPoint> grid = grid_for(c);
  double max_tail = 0.0;
  for (const DomainPoint& z : grid) {
    const double tail = bergman::kernel_tail(c.space, z);
    max_tail = std::max(max_tail, tail);
    r.table.rows.push_back(concat(
        point_fields(z), {num(bergman::kernel_norm(c.space, z)), num(bergman::log_kernel_norm_sq(c.space, z)),
                          num(bergman::metric(c.space, DomainPoint{}, z)), num(bergman::sigma_density(c.space, z)),
                          num(bergman::lambda_density(c.space, z)), num(tail)}));
  }
  r.results = json{{"points", grid.size()},
                   {"admissible_radius", c.space.admissible()},
                   {"certified_radius", bergman::certified_radius(c.space, 1e-10)},
                   {"kappa", c.space.kappa_value()},
                   {"max_kernel_tail", max_tail}};
  return r;
}

Report toeplitz(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "toeplitz.norm_bound";
  r.statement = "The Toeplitz operator of a bounded symbol is the compression of multiplication by the symbol, with "
                "norm at most the symbol's sup norm";
  const OperatorMatrix t = build_operator(c, o.resolution_scale);
  const QuadratureRule fine = bergman::default_rule(c.space, 2.0 * o.resolution_scale);
  double bound = 1.0;
  for (const std::string& name : c.operator_factors) bound *= c.symbols.at(name).sup_norm(fine);
  const double norm = t.norm();
  r.status = norm <= bound + 1e-8 ? Status::Pass : Status::Fail;
  r.results = json{{"factors", c.operator_factors},
                   {"norm", norm},
                   {"symbol_sup_bound", bound},
                   {"matrix", bergman::matrix_json(t.matrix())}};
  r.table.header = {"row", "col", "re", "im"};
  const Eigen::MatrixXcd& m = t.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (m(i, k) != bergman::cplx{})
        r.table.rows.push_back({std::to_string(i), std::to_string(k), num(m(i, k).real()), num(m(i, k).imag())});
  return r;
}

Report berezin(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "berezin.boundary_decay";
  r.statement = "Berezin transform over radial shells; vanishing at the boundary signals compactness within the "
                "Toeplitz algebra";
  const OperatorMatrix t = build_operator(c, o.resolution_scale);
  const std::vector<double> angles = bergman::uniform_angles(c.angle_count);
  const bergman::BerezinProfile p = bergman::berezin_decay_profile(t, c.radii, angles, c.threshold);
  r.results = json{{"radii", p.radii},
                   {"angles", p.angles.size()},
                   {"max_entry", p.max_entry},
                   {"threshold", p.threshold},
                   {"decaying", p.decaying}};
  r.table.header = {"radius", "angle", "max_abs_entry"};
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    for (std::size_t a = 0; a < p.angles.size(); ++a)
      r.table.rows.push_back({num(p.radii[i]), num(p.angles[a]),
                              num(p.transforms[i * p.angles.size() + a].cwiseAbs().maxCoeff())});
  return r;
}

void add_rkt_rows(Table& table, const std::string& quantity, const bergman::RktSide& side,
                  std::span<const DomainPoint> grid, int dim) {
  for (std::size_t z = 0; z < grid.size(); ++z)
    for (int i = 0; i < dim; ++i)
      table.rows.push_back(concat(concat({quantity}, point_fields(grid[z])),
                                  {std::to_string(i), num(side.values[z * static_cast<std::size_t>(dim) + i])}));
}

json rkt_json(const bergman::RktReport& rep) {
  return json{{"adjoint_side_sup", rep.primary.sup}, {"operator_side_sup", rep.mirror.sup}};
}

Report rkt(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "rkt.boundedness";
  r.statement = "Reproducing-kernel integrals of the translated operator and its adjoint are uniformly bounded; for "
                "Toeplitz and Hankel operators they are dominated by symbol integrals";
  const OperatorMatrix t = build_operator(c, o.resolution_scale);
  const QuadratureRule rule = rule_for(c, o);
  const std::vector<DomainPoint> grid = grid_for(c);
  const bergman::RktReport op = bergman::rkt_boundedness_check(t, t.adjoint(), c.p, grid, rule);
  r.table.header = concat(concat({"quantity"}, kPointHeader), {"component", "value"});
  add_rkt_rows(r.table, "operator_adjoint", op.primary, grid, op.dim);
  add_rkt_rows(r.table, "operator", op.mirror, grid, op.dim);
  r.results = json{{"p", op.p},
                   {"kappa", op.kappa},
                   {"p_threshold", op.p_threshold},
                   {"p_admissible", op.admissible},
                   {"z", points_json(grid)},
                   {"operator", rkt_json(op)}};
  if (c.operator_factors.size() == 1) {
    const bergman::MatrixSymbol& u = c.symbols.at(c.operator_factors.front());
    const bergman::RktReport sym = bergman::rkt_toeplitz_symbol_check(u, c.p, grid, rule);
    const bergman::RktReport hank = bergman::hankel_rkt_check(u, c.p, grid, rule);
    add_rkt_rows(r.table, "symbol_adjoint", sym.primary, grid, sym.dim);
    add_rkt_rows(r.table, "symbol", sym.mirror, grid, sym.dim);
    add_rkt_rows(r.table, "hankel", hank.primary, grid, hank.dim);
    add_rkt_rows(r.table, "hankel_adjoint", hank.mirror, grid, hank.dim);
    r.results["symbol"] = rkt_json(sym);
    r.results["hankel"] = rkt_json(hank);
  }
  if (c.product_pair.size() == 2) {
    const bergman::RktReport prod = bergman::rkt_product_check(c.symbols.at(c.product_pair[0]),
                                                               c.symbols.at(c.product_pair[1]), c.p, grid, rule);
    add_rkt_rows(r.table, "product", prod.primary, grid, prod.dim);
    add_rkt_rows(r.table, "product_mirror", prod.mirror, grid, prod.dim);
    r.results["product"] = rkt_json(prod);
  }
  return r;
}

Report essnorm(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "essential_norm.translation_limit";
  r.statement = "Lower estimate of the essential norm from translated operators acting on probes near the boundary";
  const OperatorMatrix t = build_operator(c, o.resolution_scale);
  const bergman::EssentialNormReport e =
      bergman::essential_norm_estimate(t, c.shells, bergman::uniform_angles(c.angle_count));
  r.results = json{{"shells", e.shells},
                   {"probes", e.probe_count},
                   {"lower_profile", e.lower_profile},
                   {"estimate", e.estimate},
                   {"monotone_tail", e.monotone_tail},
                   {"proxy_rank", e.proxy_rank},
                   {"singular_value_proxy", e.singular_value_proxy},
                   {"threshold", c.threshold},
                   {"below_threshold", e.estimate < c.threshold}};
  r.table.header = {"shell", "lower_profile"};
  for (std::size_t s = 0; s < e.shells.size(); ++s) r.table.rows.push_back({num(e.shells[s]), num(e.lower_profile[s])});
  return r;
}

Report rf(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "rudin_forelli.uniform_bound";
  r.statement = "Kernel-power integrals are bounded uniformly in the base point for integrable exponents";
  const QuadratureRule rule = bergman::rudin_forelli_rule(c.space, scaled(256, o.resolution_scale));
  const std::vector<DomainPoint> grid = grid_for(c);
  const bergman::RudinForelliResult res = bergman::rudin_forelli(c.space, c.rf_r, c.rf_s, grid, rule);
  r.results = json{{"r", res.r},
                   {"s", res.s},
                   {"divergent", res.divergent},
                   {"sup_i", res.sup_i},
                   {"sup_j", res.sup_j},
                   {"ratio_min", res.ratio_min},
                   {"ratio_max", res.ratio_max}};
  r.table.header = concat(kPointHeader, {"I", "J", "ratio"});
  for (std::size_t i = 0; i < res.i_values.size(); ++i)
    r.table.rows.push_back(
        concat(point_fields(res.z[i]), {num(res.i_values[i]), num(res.j_values[i]), num(res.ratio[i])}));
  if (!c.rf_r_values.empty()) {
    const std::vector<double>& s_values = c.rf_s_values.empty() ? c.rf_r_values : c.rf_s_values;
    json sweep = json::array();
    for (const auto& row : bergman::rudin_forelli_sweep(c.space, c.rf_r_values, s_values, grid, rule))
      sweep.push_back(json{{"r", row.r}, {"s", row.s}, {"divergent", row.divergent}, {"sup_i", row.sup_i}});
    r.results["sweep"] = sweep;
    r.results["empirical_kappa"] = bergman::empirical_kappa(c.space, c.rf_r_values);
  }
  return r;
}

std::vector<double> number_array(const json& j, const std::string& name) {
  if (!j.is_array()) throw bergman::PreconditionError("kernel file: " + name + " must be an array");
  return j.get<std::vector<double>>();
}

Report schur(const ExperimentConfig& c, const RunOptions&) {
  Report r;
  r.check = "schur.matrix_test";
  r.statement = "A nonnegative matrix kernel admitting Schur test functions defines an operator bounded by "
                "C1^(1/q) C2^(1/p)";
  if (c.kernel_file.empty()) throw bergman::PreconditionError("schur: diagnostics.kernel_file is required");
  std::ifstream in(c.kernel_file);
  if (!in) throw bergman::PreconditionError("schur: cannot open " + c.kernel_file.string());
  json k;
  try {
    k = json::parse(in);
  } catch (const json::parse_error& e) {
    throw bergman::PreconditionError(std::string("schur: ") + e.what());
  }
  const std::vector<double> mu = number_array(k.at("x_weights"), "x_weights");
  const std::vector<double> nu = k.contains("y_weights") ? number_array(k.at("y_weights"), "y_weights") : mu;
  const int dim = k.at("dim").get<int>();
  bergman::MatrixKernelSample sample(mu, nu, dim);
  const std::vector<double> entries = number_array(k.at("entries"), "entries");
  if (entries.size() != mu.size() * nu.size() * static_cast<std::size_t>(dim * dim))
    throw bergman::PreconditionError("schur: entries must hold x·y·dim² values");
  std::size_t idx = 0;
  for (std::size_t x = 0; x < mu.size(); ++x)
    for (std::size_t y = 0; y < nu.size(); ++y)
      for (int i = 0; i < dim; ++i)
        for (int kk = 0; kk < dim; ++kk) sample.at(x, y, i, kk) = entries[idx++];
  sample.validate();
  const double p = k.value("p", 2.0);
  const std::vector<double> hx = k.contains("h") ? number_array(k.at("h"), "h") : std::vector<double>(mu.size(), 1.0);
  const std::vector<double> hy =
      k.contains("h_y") ? number_array(k.at("h_y"), "h_y") : (k.contains("h") ? hx : std::vector<double>(nu.size(), 1.0));
  const bergman::SchurResult s = bergman::schur_test(sample, hx, hy, p);
  const double norm = bergman::discretized_operator_norm(sample);
  const bool holds = norm <= s.bound * (1.0 + 1e-12) + 1e-14;
  r.status = holds ? Status::Pass : Status::Fail;
  r.results = json{{"p", p}, {"c1", s.c1}, {"c2", s.c2}, {"bound", s.bound}, {"operator_norm", norm}, {"holds", holds}};
  r.table.header = {"quantity", "value"};
  r.table.rows = {{"c1", num(s.c1)}, {"c2", num(s.c2)}, {"bound", num(s.bound)}, {"operator_norm", num(norm)}};
  return r;
}

Report covering(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "covering.invariants";
  r.statement = "Disjoint cells of diameter at most 4r whose r-enlargements overlap boundedly";
  const QuadratureRule rule = rule_for(c, o);
  r.table.header = {"r", "cells", "max_diameter", "multiplicity", "partition", "covered", "enlargements_contain_cells",
                    "diameter_bound"};
  bool ok = true;
  json rows = json::array();
  for (double radius : c.covering_radii) {
    const bergman::Covering cov = bergman::build_covering(rule, radius);
    const bergman::CoveringCheck ch = bergman::verify_covering(cov);
    const bool row_ok = ch.partition && ch.covered && ch.enlargements_contain_cells && ch.diameter_bound;
    ok = ok && row_ok;
    rows.push_back(json{{"r", radius},
                        {"cells", cov.cells.size()},
                        {"max_diameter", ch.max_diameter},
                        {"multiplicity", ch.measured_multiplicity},
                        {"invariants_hold", row_ok}});
    r.table.rows.push_back({num(radius), std::to_string(cov.cells.size()), num(ch.max_diameter),
                            num(ch.measured_multiplicity), flag(ch.partition), flag(ch.covered),
                            flag(ch.enlargements_contain_cells), flag(ch.diameter_bound)});
  }
  r.status = ok ? Status::Pass : Status::Fail;
  r.results = json{{"nodes", rule.size()}, {"coverings", rows}};
  return r;
}

Report localize(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "localization.error_curve";
  r.statement = "T is approximated by the sum over cells of 1_F T P 1_G, with error shrinking as r grows";
  const OperatorMatrix t = build_operator(c, o.resolution_scale);
  const QuadratureRule rule = rule_for(c, o);
  std::vector<double> radii = c.covering_radii;
  std::sort(radii.begin(), radii.end());
  std::vector<double> errors;
  for (double radius : radii) errors.push_back(bergman::localization_error(t, bergman::build_covering(rule, radius)));
  bool non_increasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i) non_increasing = non_increasing && errors[i] <= errors[i - 1] + 1e-12;
  r.status = non_increasing ? Status::Pass : Status::Fail;
  r.results = json{{"r", radii},
                   {"errors", errors},
                   {"non_increasing", non_increasing},
                   {"single_cell_error", bergman::localization_error(t, bergman::single_cell_covering(rule))}};
  r.table.header = {"r", "error"};
  for (std::size_t i = 0; i < radii.size(); ++i) r.table.rows.push_back({num(radii[i]), num(errors[i])});
  return r;
}

bergman::CoeffFunction random_polynomial(const bergman::SpaceSpec& space, std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> normal;
  bergman::CoeffFunction::Coeffs coeffs = bergman::CoeffFunction::Coeffs::Zero(space.modes(), space.component_dim);
  for (int m = 0; m <= std::min(degree, space.modes() - 1); ++m)
    for (int k = 0; k < space.component_dim; ++k) coeffs(m, k) = bergman::cplx{normal(rng), normal(rng)};
  return bergman::CoeffFunction::from_coeffs(space, coeffs);
}

Report rank1(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "rank_one.toeplitz_products";
  r.statement = "Every rank-one operator f⊗g with polynomial f, g is a finite sum of products of Toeplitz operators";
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  r.table.header = {"pair", "deviation"};
  for (int i = 0; i < c.rank1_pairs; ++i) {
    const bergman::CoeffFunction f = random_polynomial(c.space, rng, c.rank1_degree);
    const bergman::CoeffFunction g = random_polynomial(c.space, rng, c.rank1_degree);
    const double dev = bergman::spectral_norm(bergman::rank_one_toeplitz_sum(f, g).matrix() -
                                              bergman::rank_one(f, g).matrix());
    worst = std::max(worst, dev);
    r.table.rows.push_back({std::to_string(i), num(dev)});
  }
  r.status = worst <= c.rank1_tolerance ? Status::Pass : Status::Fail;
  r.results = json{{"pairs", c.rank1_pairs},
                   {"degree", c.rank1_degree},
                   {"max_deviation", worst},
                   {"tolerance", c.rank1_tolerance}};
  return r;
}

Report verify_axioms(const ExperimentConfig& c, const RunOptions& o) {
  Report r;
  r.check = "space.axioms";
  r.statement = "Model-space invariants: reproducing property, involutions, metric invariance, kernel identity and "
                "boundary behaviour of normalized kernels";
  bergman::AxiomSuiteOptions opts;
  opts.seed = o.seed;
  const std::vector<bergman::AxiomCheck> checks = bergman::verify_axioms(rule_for(c, o), opts);
  bool ok = true;
  json list = json::array();
  r.table.header = {"name", "value", "tolerance", "pass", "statement"};
  for (const bergman::AxiomCheck& ch : checks) {
    ok = ok && ch.pass;
    list.push_back(json{{"name", ch.name}, {"value", ch.value}, {"tolerance", ch.tolerance}, {"pass", ch.pass}});
    r.table.rows.push_back({ch.name, num(ch.value), num(ch.tolerance), flag(ch.pass), ch.statement});
  }
  r.status = ok ? Status::Pass : Status::Fail;
  r.results = json{{"checks", list}, {"all_pass", ok}};
  return r;
}

using Runner = std::function<Report(const ExperimentConfig&, const RunOptions&)>;

const std::map<std::string_view, Runner>& runners() {
  static const std::map<std::string_view, Runner> table{
      {"kernel", kernel},     {"toeplitz", toeplitz}, {"berezin", berezin}, {"rkt", rkt},
      {"essnorm", essnorm},   {"rf", rf},             {"schur", schur},     {"covering", covering},
      {"localize", localize}, {"rank1", rank1},       {"verify-axioms", verify_axioms}};
  return table;
}

} // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{"kernel", "toeplitz", "berezin", "rkt",   "essnorm",      "rf",
                                                   "schur",  "covering", "localize", "rank1", "verify-axioms"};
  return names;
}

OperatorMatrix build_operator(const ExperimentConfig& config, double resolution_scale) {
  OperatorMatrix t = OperatorMatrix::identity(config.space);
  for (const std::string& name : config.operator_factors)
    t = t * bergman::toeplitz_matrix(config.space, config.symbols.at(name), resolution_scale);
  return t;
}

Report run_command(std::string_view name, const ExperimentConfig& config, const RunOptions& options) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw bergman::PreconditionError("unknown command '" + std::string(name) + "'");
  Report r = it->second(config, options);
  r.command = std::string(name);
  return r;
}

} // namespace lab
