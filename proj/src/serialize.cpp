#include "bergman/serialize.hpp"

#include "bergman/errors.hpp"

namespace bergman {

using nlohmann::json;

void to_json(json& j, const SpaceSpec& s) {
  j = json{{"kind", std::string(to_string(s.kind))},
           {"alpha", s.alpha},
           {"truncation_order", s.truncation_order},
           {"component_dim", s.component_dim}};
  if (s.kind == SpaceKind::Bidisc) j["alpha2"] = s.alpha2;
  // Automatic values stay implicit so a round trip reproduces the input.
  if (s.fock_cutoff_radius > 0.0) j["fock_cutoff_radius"] = s.fock_cutoff_radius;
  if (s.admissible_radius > 0.0) j["admissible_radius"] = s.admissible_radius;
  if (s.kappa >= 0.0) j["kappa"] = s.kappa;
}

void from_json(const json& j, SpaceSpec& s) {
  s = SpaceSpec{};
  s.kind = space_kind_from_string(j.at("kind").get<std::string>());
  s.alpha = j.value("alpha", 0.0);
  s.alpha2 = j.value("alpha2", s.kind == SpaceKind::Bidisc ? s.alpha : 0.0);
  s.truncation_order = j.value("truncation_order", 32);
  s.component_dim = j.value("component_dim", 4);
  s.fock_cutoff_radius = j.value("fock_cutoff_radius", 0.0);
  s.admissible_radius = j.value("admissible_radius", 0.0);
  s.kappa = j.value("kappa", -1.0);
  s.validate();
}

json complex_json(cplx c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

void to_json(json& j, const DomainPoint& z) {
  j = json::array({complex_json(z.z1)});
  if (z.z2 != cplx{}) j.push_back(complex_json(z.z2));
}

void from_json(const json& j, DomainPoint& z) {
  if (j.is_array() && !j.empty() && !j[0].is_number()) {
    z.z1 = complex_from_json(j[0]);
    z.z2 = j.size() > 1 ? complex_from_json(j[1]) : cplx{};
    return;
  }
  z = DomainPoint{complex_from_json(j)};
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.contains("im") ? j.at("im") : json::array();
  if (static_cast<Eigen::Index>(re.size()) != rows * cols ||
      (!im.empty() && static_cast<Eigen::Index>(im.size()) != rows * cols))
    throw MismatchError("matrix payload size does not match its shape");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto i = static_cast<std::size_t>(r * cols + c);
      m(r, c) = {re[i].get<double>(), im.empty() ? 0.0 : im[i].get<double>()};
    }
  return m;
}

} // namespace bergman
