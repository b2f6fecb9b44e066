#pragma once

#include <nlohmann/json.hpp>

#include "tue/model.hpp"

namespace tue {

/// {"n": …, "alpha": …, "t": […], "u": […]}
nlohmann::json params_to_json(const ParameterSet& params);

/// Inverse of params_to_json; missing or mistyped keys raise ValidationError.
ParameterSet params_from_json(const nlohmann::json& j);

}  // namespace tue
