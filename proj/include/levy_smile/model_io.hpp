#pragma once

#include <json.hpp>

#include "levy_smile/levy_core.hpp"

namespace levy_smile {

// Flat object with exactly the keys c_plus, c_minus, lambda_plus, lambda_minus,
// alpha_plus, alpha_minus, sigma, r. Missing or unknown keys raise ConfigError.
TemperedStableParams model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const TemperedStableParams& p);

}  // namespace levy_smile
