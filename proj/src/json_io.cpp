#include "stringlab/json_io.hpp"

#include <stdexcept>

namespace stringlab {

using nlohmann::json;

Coefficient coefficient_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "step") {
    return Coefficient::step(j.at("breakpoints").get<std::vector<double>>(),
                             j.at("values").get<std::vector<double>>());
  }
  if (type == "grid") {
    return Coefficient::grid(j.at("samples").get<std::vector<double>>());
  }
  if (type == "family") {
    std::map<std::string, double> params;
    for (auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
    return Coefficient::family(j.at("name").get<std::string>(), params);
  }
  if (type == "blend") {
    return Coefficient::blend(j.at("wa").get<double>(), coefficient_from_json(j.at("a")),
                              j.at("wb").get<double>(), coefficient_from_json(j.at("b")));
  }
  if (type == "product") {
    return Coefficient::product(coefficient_from_json(j.at("a")), coefficient_from_json(j.at("b")));
  }
  throw std::invalid_argument("unknown coefficient type: " + type);
}

json coefficient_to_json(const Coefficient& c) {
  if (c.is_step()) {
    return json{{"type", "step"}, {"breakpoints", *c.step_breakpoints()}, {"values", *c.step_values()}};
  }
  if (const auto* s = c.grid_samples()) {
    return json{{"type", "grid"}, {"samples", *s}};
  }
  if (const auto* name = c.family_name()) {
    json params = json::object();
    for (const auto& [k, v] : *c.family_params()) params[k] = v;
    return json{{"type", "family"}, {"name", *name}, {"params", params}};
  }
  // composite nodes are emitted as a dense grid resample; exact structure is
  // only needed for the three primary representations
  std::vector<double> samples(1025);
  for (int i = 0; i <= 1024; ++i) samples[static_cast<std::size_t>(i)] = c(i / 1024.0);
  return json{{"type", "grid"}, {"samples", samples}};
}

Density density_from_json(const json& j) { return Density(coefficient_from_json(j)); }
json density_to_json(const Density& d) { return coefficient_to_json(d.as_coefficient()); }

CoefficientSet coefficient_set_from_json(const json& j) {
  CoefficientSet cs;
  cs.p = density_from_json(j.at("p"));
  cs.q = coefficient_from_json(j.at("q"));
  cs.rho = density_from_json(j.at("rho"));
  return cs;
}

json coefficient_set_to_json(const CoefficientSet& cs) {
  return json{{"p", density_to_json(cs.p)}, {"q", coefficient_to_json(cs.q)}, {"rho", density_to_json(cs.rho)}};
}

json classification_to_json(const Classification& c) {
  json j{{"kind", to_string(c.kind)}, {"sign_change_count", c.sign_change_count}};
  if (c.x0) j["x0"] = *c.x0;
  if (c.sign_change) j["sign_change"] = *c.sign_change;
  return j;
}

}  // namespace stringlab
