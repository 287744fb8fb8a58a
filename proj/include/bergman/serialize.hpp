#pragma once

#include <complex>

#include <Eigen/Core>
#include <json.hpp>

#include "bergman/space.hpp"

namespace bergman {

void to_json(nlohmann::json& j, const SpaceSpec& s);
void from_json(const nlohmann::json& j, SpaceSpec& s);

void to_json(nlohmann::json& j, const DomainPoint& z);
void from_json(const nlohmann::json& j, DomainPoint& z);

nlohmann::json complex_json(cplx c);
cplx complex_from_json(const nlohmann::json& j);

/// {rows, cols, re: [...], im: [...]} in row-major order.
nlohmann::json matrix_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

} // namespace bergman
