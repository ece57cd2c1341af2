#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qtrunc/combinatorics.hpp"
#include "qtrunc/identities.hpp"
#include "qtrunc/json_io.hpp"
#include "qtrunc/product_grammar.hpp"
#include "qtrunc/truncation.hpp"

namespace qtrunc {

// One fully-bound check invocation: the check name plus its integer and string
// parameters. This is the unit both `verify` and `scan` evaluate.
struct CheckRequest {
  std::string check;
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, std::string> strs;

  std::int64_t require_int(const std::string& key) const {
    auto it = ints.find(key);
    if (it == ints.end()) throw usage_error("missing required parameter --" + key);
    return it->second;
  }
  std::int64_t int_or(const std::string& key, std::int64_t fallback) const {
    auto it = ints.find(key);
    return it == ints.end() ? fallback : it->second;
  }
  std::string require_str(const std::string& key) const {
    auto it = strs.find(key);
    if (it == strs.end()) throw usage_error("missing required parameter --" + key);
    return it->second;
  }
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "quintuple", "consequence", "thm11", "thm12", "thm13", "thm14",  "thm15",
      "thm16",     "thm17",       "lemma32", "lemma42", "lemma33", "lemma43",
      "partsign",  "entry951",    "entry941", "lemma21", "pppgf", "corollary", "sign"};
  return names;
}

// Evaluates one request. Throws usage_error for unknown checks or missing
// parameters and hypothesis_error for parameter values outside a check's
// hypothesis; the series engine's domain errors propagate as-is.
inline VerificationReport run_check(const CheckRequest& req) {
  const std::string& c = req.check;
  const std::int64_t N = req.int_or("N", 100);

  if (c == "quintuple")
    return check_quintuple(req.require_int("R"), req.require_int("S"), N);
  if (c == "consequence") {
    const std::string fam = req.require_str("family");
    if (fam == "3n1") return check_consequence(ConsequenceFamily::three_n_plus_one, N);
    if (fam == "6n1") return check_consequence(ConsequenceFamily::six_n_plus_one, N);
    throw usage_error("unknown family '" + fam + "' (expected 3n1 or 6n1)");
  }
  if (c == "thm11")
    return verify_thm11(req.require_int("R"), req.require_int("S"), req.require_int("k"), N);
  if (c == "thm12")
    return verify_thm12(req.require_int("R"), req.require_int("S"), req.require_int("k"), N);
  if (c == "thm13")
    return verify_thm13(req.require_int("R"), req.require_int("S"), req.require_int("a"),
                        req.require_int("b"), N);
  if (c == "thm14") return verify_thm14(req.require_int("k"), N);
  if (c == "thm15") return verify_thm15(req.require_int("k"), N);
  if (c == "thm16") return verify_thm16(req.require_int("a"), req.require_int("b"), N);
  if (c == "thm17") return verify_thm17(req.require_int("a"), req.require_int("b"), N);
  if (c == "lemma32")
    return check_partial_sum_lemma(PartialSumFamily::three_n_plus_one, req.require_int("k"), N);
  if (c == "lemma42")
    return check_partial_sum_lemma(PartialSumFamily::six_n_plus_one, req.require_int("k"), N);
  if (c == "lemma33")
    return check_decomposition_identity(DecompositionSplit::A_split, req.require_int("k"), N);
  if (c == "lemma43")
    return check_decomposition_identity(DecompositionSplit::C_split, req.require_int("k"), N);
  if (c == "partsign") {
    DecompositionTag tag;
    const std::string part = req.require_str("part");
    if (!decomposition_tag_from_string(part, tag))
      throw usage_error("unknown part '" + part + "'");
    return check_part_sign({tag, req.require_int("k")}, N);
  }
  if (c == "entry951") return ramanujan_entry_check(RamanujanEntry::entry951, req.require_int("j"), N);
  if (c == "entry941") return ramanujan_entry_check(RamanujanEntry::entry941, req.require_int("j"), N);
  if (c == "lemma21") {
    const auto f = lemma21_generate(static_cast<std::uint64_t>(req.require_int("seed")),
                                    req.int_or("K", 8), req.int_or("magnitude", 20));
    VerificationReport r = lemma21_check(f);
    r.params["seed"] = req.require_int("seed");
    r.params["magnitude"] = req.int_or("magnitude", 20);
    return r;
  }
  if (c == "pppgf") return check_ppp_generating_function(N);
  if (c == "corollary")
    return check_corollary(req.require_int("n"),
                           {req.require_int("a"), req.require_int("b")});
  if (c == "sign") {
    // Exploratory: sign-check an arbitrary product expression.
    const LaurentSeries s = expand(parse_product_expr(req.require_str("expr")), N);
    const std::string dir = req.strs.count("direction") ? req.strs.at("direction") : "nonneg";
    if (dir != "nonneg" && dir != "nonpos")
      throw usage_error("direction must be nonneg or nonpos");
    VerificationReport r = sign_check(
        s, req.int_or("from", s.is_zero() ? 0 : s.valuation()),
        dir == "nonneg" ? SignDirection::nonneg : SignDirection::nonpos);
    r.params["expr"] = req.require_str("expr");
    return r;
  }
  throw usage_error("unknown check '" + c + "'");
}

inline VerificationReport run_check_timed(const CheckRequest& req) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r = run_check(req);
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

// Inclusive integer range for one scanned parameter.
struct GridRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct ScanSpec {
  std::string check;
  std::map<std::string, GridRange> grids;  // key order fixes the report order
  std::map<std::string, std::int64_t> fixed_ints;
  std::map<std::string, std::string> fixed_strs;
  int jobs = 1;
};

// Grid points in lexicographic order of the (alphabetically sorted) scanned
// parameter tuple, the last parameter varying fastest.
inline std::vector<CheckRequest> expand_grid(const ScanSpec& spec) {
  if (spec.jobs < 1) throw usage_error("parallelism must be >= 1");
  for (const auto& [key, r] : spec.grids)
    if (r.lo > r.hi) return {};  // an empty range empties the whole grid
  std::vector<CheckRequest> points;
  CheckRequest base{spec.check, spec.fixed_ints, spec.fixed_strs};
  std::function<void(std::map<std::string, GridRange>::const_iterator)> rec =
      [&](std::map<std::string, GridRange>::const_iterator it) {
        if (it == spec.grids.end()) {
          points.push_back(base);
          return;
        }
        auto next = std::next(it);
        for (std::int64_t v = it->second.lo; v <= it->second.hi; ++v) {
          base.ints[it->first] = v;
          rec(next);
        }
      };
  rec(spec.grids.begin());
  return points;
}

// Runs fn(i) for i in [0, count) on `jobs` worker threads.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (count == 0) return;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct ScanResult {
  std::vector<VerificationReport> reports;  // in grid order, independent of scheduling
  std::int64_t pass = 0;
  std::int64_t fail = 0;
  std::int64_t skipped = 0;

  bool all_passed() const { return fail == 0; }
};

// Evaluates every grid point, distributing independent points across workers.
// A point outside the check's hypothesis yields a skipped report; a failing
// point never suppresses later reports. A malformed spec (unknown check,
// missing parameter) is a usage error for the whole scan.
inline ScanResult run_scan(const ScanSpec& spec) {
  if (std::find(known_checks().begin(), known_checks().end(), spec.check) ==
      known_checks().end())
    throw usage_error("unknown check '" + spec.check + "'");
  const std::vector<CheckRequest> points = expand_grid(spec);
  ScanResult result;
  result.reports.resize(points.size());
  std::mutex usage_mu;
  std::string usage_message;
  parallel_for(points.size(), spec.jobs, [&](std::size_t i) {
    try {
      result.reports[i] = run_check_timed(points[i]);
    } catch (const hypothesis_error& e) {
      std::map<std::string, ParamValue> params;
      for (const auto& [key, v] : points[i].ints) params[key] = v;
      for (const auto& [key, v] : points[i].strs) params[key] = v;
      result.reports[i] =
          VerificationReport::make_skipped(points[i].check, std::move(params), e.what());
    } catch (const usage_error& e) {
      std::lock_guard<std::mutex> lock(usage_mu);
      if (usage_message.empty()) usage_message = e.what();
    }
  });
  if (!usage_message.empty()) throw usage_error(usage_message);
  for (const auto& r : result.reports) {
    switch (r.status) {
      case CheckStatus::pass: ++result.pass; break;
      case CheckStatus::fail: ++result.fail; break;
      case CheckStatus::skipped: ++result.skipped; break;
    }
  }
  return result;
}

inline nlohmann::json scan_summary_json(const ScanResult& r) {
  return nlohmann::json{{"summary",
                         {{"points", r.reports.size()},
                          {"pass", r.pass},
                          {"fail", r.fail},
                          {"skipped", r.skipped}}}};
}

}  // namespace qtrunc
