#pragma once

#include <json.hpp>

#include "qtrunc/laurent_series.hpp"
#include "qtrunc/report.hpp"

namespace qtrunc {

// Canonical rendering: { "valuation": v, "bound": N, "coeffs": [ ... ] } with
// coefficients as decimal strings, so arbitrary precision survives JSON. The
// zero series renders with valuation 0 and an empty coefficient list.
inline nlohmann::json series_to_json(const LaurentSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(c.str());
  return nlohmann::json{{"valuation", s.is_zero() ? 0 : s.valuation()},
                        {"bound", s.bound()},
                        {"coeffs", std::move(coeffs)}};
}

inline LaurentSeries series_from_json(const nlohmann::json& j) {
  std::vector<Integer> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
  return LaurentSeries::from_coefficients(j.at("valuation").get<std::int64_t>(),
                                          std::move(coeffs), j.at("bound").get<std::int64_t>());
}

// Report JSON. elapsed_ms is zeroed unless include_timing is set: identical
// invocations must produce byte-identical report streams.
inline nlohmann::json report_to_json(const VerificationReport& r, bool include_timing = false) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : r.params) {
    if (std::holds_alternative<std::int64_t>(value))
      params[key] = std::get<std::int64_t>(value);
    else
      params[key] = std::get<std::string>(value);
  }
  nlohmann::json j{{"check", r.check},
                   {"params", std::move(params)},
                   {"status", to_string(r.status)},
                   {"elapsed_ms", include_timing ? r.elapsed_ms : 0}};
  if (r.first_violation) {
    j["first_violation"] = nlohmann::json{{"exponent", r.first_violation->exponent},
                                          {"coefficient", r.first_violation->coefficient.str()}};
  }
  return j;
}

inline std::string report_line(const VerificationReport& r, bool include_timing = false) {
  return report_to_json(r, include_timing).dump();
}

}  // namespace qtrunc
