#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "qtrunc/integer.hpp"

namespace qtrunc {

// Thrown when a check is invoked outside a theorem's hypothesis (e.g. S >= R/2)
// or with structurally invalid parameters. The CLI maps it to exit code 2; a
// scan maps it to a "skipped" report instead of aborting the sweep.
struct hypothesis_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown for malformed requests that cannot be attributed to a grid point
// (unknown check name, missing required parameter). Always a usage error.
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

// Smallest witness of a failed check. For coefficient checks `exponent` is the
// exponent of q; window-style checks (lemma21, corollary) store the index n or
// the window start there and put the remaining identifiers into params.
struct Violation {
  std::int64_t exponent = 0;
  Integer coefficient;

  bool operator==(const Violation&) const = default;
};

using ParamValue = std::variant<std::int64_t, std::string>;

inline std::string param_to_string(const ParamValue& v) {
  if (std::holds_alternative<std::int64_t>(v))
    return std::to_string(std::get<std::int64_t>(v));
  return std::get<std::string>(v);
}

// Outcome record of one verification. params must pin every input needed to
// reproduce the run; status == fail iff first_violation is present.
struct VerificationReport {
  std::string check;
  std::map<std::string, ParamValue> params;
  CheckStatus status = CheckStatus::pass;
  std::optional<Violation> first_violation;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return status == CheckStatus::pass; }

  static VerificationReport make_pass(std::string check,
                                      std::map<std::string, ParamValue> params) {
    VerificationReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = CheckStatus::pass;
    return r;
  }

  static VerificationReport make_fail(std::string check,
                                      std::map<std::string, ParamValue> params,
                                      Violation v) {
    VerificationReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = CheckStatus::fail;
    r.first_violation = std::move(v);
    return r;
  }

  static VerificationReport make_skipped(std::string check,
                                         std::map<std::string, ParamValue> params,
                                         std::string reason = {}) {
    VerificationReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    if (!reason.empty()) r.params["reason"] = std::move(reason);
    r.status = CheckStatus::skipped;
    return r;
  }
};

}  // namespace qtrunc
