#pragma once

#include <json.hpp>

#include "stringlab/density.hpp"

namespace stringlab {

/// JSON density/coefficient spec:
///   {"type":"step","breakpoints":[...],"values":[...]}
///   {"type":"grid","samples":[...]}                     uniform on [0,1]
///   {"type":"family","name":"...","params":{...}}
/// Composite nodes round-trip structurally:
///   {"type":"blend","wa":..,"a":{..},"wb":..,"b":{..}}
Coefficient coefficient_from_json(const nlohmann::json& j);
nlohmann::json coefficient_to_json(const Coefficient& c);

Density density_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const Density& d);

/// {"p":{...},"q":{...},"rho":{...}}
CoefficientSet coefficient_set_from_json(const nlohmann::json& j);
nlohmann::json coefficient_set_to_json(const CoefficientSet& cs);

nlohmann::json classification_to_json(const Classification& c);

}  // namespace stringlab
