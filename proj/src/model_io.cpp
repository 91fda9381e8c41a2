#include "levy_smile/model_io.hpp"

#include <array>
#include <string_view>

#include "levy_smile/errors.hpp"

namespace levy_smile {

namespace {

struct Field {
  std::string_view key;
  double TemperedStableParams::*member;
};

constexpr std::array<Field, 8> kFields{{
    {"c_plus", &TemperedStableParams::c_plus},
    {"c_minus", &TemperedStableParams::c_minus},
    {"lambda_plus", &TemperedStableParams::lambda_plus},
    {"lambda_minus", &TemperedStableParams::lambda_minus},
    {"alpha_plus", &TemperedStableParams::alpha_plus},
    {"alpha_minus", &TemperedStableParams::alpha_minus},
    {"sigma", &TemperedStableParams::sigma},
    {"r", &TemperedStableParams::r},
}};

}  // namespace

TemperedStableParams model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : kFields) known = known || f.key == key;
    if (!known) throw ConfigError("unknown model key '" + key + "'");
  }
  TemperedStableParams p;
  for (const auto& f : kFields) {
    const auto it = j.find(std::string(f.key));
    if (it == j.end()) throw ConfigError("missing model key '" + std::string(f.key) + "'");
    if (!it->is_number()) throw ConfigError("model key '" + std::string(f.key) + "' must be a number");
    p.*f.member = it->get<double>();
  }
  return p;
}

nlohmann::json model_to_json(const TemperedStableParams& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kFields) j[std::string(f.key)] = p.*f.member;
  return j;
}

}  // namespace levy_smile
