#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/density.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

nlohmann::json read_json_file(const std::string& path);
/// Writes via a temporary file and rename, so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& contents);

nlohmann::json to_json(const Estimate& e);
nlohmann::json to_json(const SpaceParams& p);
nlohmann::json to_json(const QuadratureSpec& q);
nlohmann::json to_json(const DensityReport& d);

/// Values files: either a bare array of [re, im] pairs or {"values": [...]}.
std::vector<complex> values_from_json(const nlohmann::json& j);
nlohmann::json values_to_json(const std::vector<complex>& v);

/// JSON number for p, with infinity spelled "inf".
nlohmann::json exponent_to_json(double p);

}  // namespace bergman
