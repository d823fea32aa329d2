#include "bergman/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bergman {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw precondition_error("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw precondition_error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw precondition_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw precondition_error("cannot rename onto '" + path + "'");
}

json exponent_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

json to_json(const Estimate& e) {
  json j{{"value", std::isfinite(e.value) ? json(e.value) : json("inf")},
         {"stderr", std::isfinite(e.std_error) ? json(e.std_error) : json("inf")},
         {"samples_used", e.samples_used}};
  if (!e.diagnostic.empty()) j["diagnostic"] = e.diagnostic;
  return j;
}

json to_json(const SpaceParams& p) {
  return {{"n", p.n}, {"p", exponent_to_json(p.p)}, {"alpha", p.alpha}, {"kind", to_string(p.kind())},
          {"beta", p.beta()}};
}

json to_json(const QuadratureSpec& q) {
  json j{{"method", to_string(q.method)}, {"samples", q.samples}, {"angular_budget", q.angular_budget}, {"seed", q.seed},
         {"target_rel_tol", q.target_rel_tol}};
  if (q.pole) j["pole"] = point_to_json(*q.pole);
  return j;
}

json to_json(const DensityReport& d) {
  json prof = json::array();
  for (const auto& [r, v] : d.r_profile) prof.push_back({{"r", r}, {"sup_value", v}});
  return {{"density", d.density}, {"r_profile", prof}, {"z_argmax", point_to_json(d.z_argmax)},
          {"trend_slope", d.trend_slope}, {"note", d.note}};
}

std::vector<complex> values_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("values") : j;
  if (!arr.is_array()) throw precondition_error("values must be an array of [re, im] pairs");
  std::vector<complex> v;
  for (const auto& e : arr) v.push_back(complex_from_json(e));
  return v;
}

json values_to_json(const std::vector<complex>& v) {
  json a = json::array();
  for (auto c : v) a.push_back(complex_to_json(c));
  return {{"values", a}};
}

}  // namespace bergman
