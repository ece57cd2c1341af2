// qtrunc: exact expansion and batch verification of truncated q-series.
//
// Subcommands:
//   expand  <expr> --N <n>          exact series JSON of a Pochhammer product
//   verify  <check> [params]        one verification, report JSON on stdout
//   scan    <check> [param ranges]  parameter sweep, NDJSON stream + summary
//   oracle  --n <limit>             partition/overpartition/triplet CSV
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
// parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qtrunc/combinatorics.hpp"
#include "qtrunc/json_io.hpp"
#include "qtrunc/product_grammar.hpp"
#include "qtrunc/scan.hpp"

namespace {

constexpr std::int64_t kLargeNGuardrail = 1000;

struct IntFlag {
  std::string name;
  std::optional<std::int64_t> value;
};

// "lo:hi" or a single integer.
qtrunc::GridRange parse_range(const std::string& text, const std::string& flag) {
  const auto split = text.find(':', 1);  // a leading '-' is part of lo
  try {
    if (split == std::string::npos) {
      const std::int64_t v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, split)), std::stoll(text.substr(split + 1))};
  } catch (const std::exception&) {
    throw qtrunc::usage_error("--" + flag + ": expected an integer or lo:hi range, got '" +
                              text + "'");
  }
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw qtrunc::usage_error("cannot open output file '" + path + "'");
  return file;
}

void enforce_guardrail(std::int64_t N, bool allow_large) {
  if (N > kLargeNGuardrail && !allow_large)
    throw qtrunc::usage_error("N > " + std::to_string(kLargeNGuardrail) +
                              " is quadratic-cost territory; pass --allow-large to confirm");
}

int run(int argc, char** argv) {
  CLI::App app{"exact truncated q-series engine and theorem checker"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags (--out, --timing, --allow-large) after a subcommand

  std::string out_path;
  bool timing = false;
  bool allow_large = false;
  app.add_flag("--timing", timing, "emit measured elapsed_ms instead of 0");
  app.add_option("--out", out_path, "write primary output to a file instead of stdout");
  app.add_flag("--allow-large", allow_large, "permit truncation orders above 1000");

  // ---- expand ----
  auto* expand_cmd = app.add_subcommand("expand", "expand a product expression");
  std::string expr;
  std::int64_t expand_n = 100;
  expand_cmd->add_option("expr", expr, "product expression, e.g. \"(q^-1; q^3)_inf\"")
      ->required();
  expand_cmd->add_option("--N", expand_n, "truncation bound (default 100)");

  // ---- verify / scan ----
  auto* verify_cmd = app.add_subcommand("verify", "run one verification");
  auto* scan_cmd = app.add_subcommand("scan", "sweep a parameter grid");
  std::string check_name, scan_check_name;
  verify_cmd->add_option("check,--check", check_name, "check identifier");
  scan_cmd->add_option("check,--check", scan_check_name, "check identifier");

  std::vector<IntFlag> verify_ints{{"N", {}}, {"R", {}}, {"S", {}}, {"k", {}}, {"a", {}},
                                   {"b", {}}, {"j", {}}, {"K", {}}, {"magnitude", {}},
                                   {"seed", {}}, {"n", {}}, {"from", {}}};
  for (auto& f : verify_ints)
    verify_cmd->add_option("--" + f.name, [&f](const std::vector<std::string>& v) {
      f.value = std::stoll(v[0]);
      return true;
    }, "integer parameter " + f.name);
  std::string verify_part, verify_family, verify_expr, verify_direction;
  verify_cmd->add_option("--part", verify_part, "decomposition part (A, B, A1, ..., C4)");
  verify_cmd->add_option("--family", verify_family, "consequence family (3n1 or 6n1)");
  verify_cmd->add_option("--expr", verify_expr, "product expression for the sign check");
  verify_cmd->add_option("--direction", verify_direction, "nonneg or nonpos");

  std::map<std::string, std::string> scan_ranges;
  for (const char* name : {"N", "R", "S", "k", "a", "b", "j", "K", "magnitude", "seed", "n",
                           "from"})
    scan_cmd->add_option("--" + std::string(name),
                         [&scan_ranges, name](const std::vector<std::string>& v) {
                           scan_ranges[name] = v[0];
                           return true;
                         },
                         std::string("integer value or lo:hi range for ") + name);
  std::string scan_part, scan_family, scan_expr, scan_direction;
  scan_cmd->add_option("--part", scan_part, "decomposition part");
  scan_cmd->add_option("--family", scan_family, "consequence family");
  scan_cmd->add_option("--expr", scan_expr, "product expression for the sign check");
  scan_cmd->add_option("--direction", scan_direction, "nonneg or nonpos");
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  scan_cmd->add_option("--jobs", jobs, "worker threads (default: hardware concurrency)");

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "export the count table as CSV");
  std::int64_t oracle_n = 100;
  oracle_cmd->add_option("--n", oracle_n, "largest n in the table")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::ofstream out_file;
  std::ostream& out = open_output(out_path, out_file);

  if (expand_cmd->parsed()) {
    enforce_guardrail(expand_n, allow_large);
    const auto series = qtrunc::expand(qtrunc::parse_product_expr(expr), expand_n);
    out << qtrunc::series_to_json(series).dump() << "\n";
    return 0;
  }

  if (verify_cmd->parsed()) {
    if (check_name.empty()) throw qtrunc::usage_error("verify needs a check name (see --help)");
    qtrunc::CheckRequest req;
    req.check = check_name;
    for (const auto& f : verify_ints)
      if (f.value) req.ints[f.name] = *f.value;
    if (!verify_part.empty()) req.strs["part"] = verify_part;
    if (!verify_family.empty()) req.strs["family"] = verify_family;
    if (!verify_expr.empty()) req.strs["expr"] = verify_expr;
    if (!verify_direction.empty()) req.strs["direction"] = verify_direction;
    enforce_guardrail(req.int_or("N", 100), allow_large);
    const auto report = qtrunc::run_check_timed(req);
    out << qtrunc::report_line(report, timing) << "\n";
    if (report.status == qtrunc::CheckStatus::fail) return 1;
    return 0;
  }

  if (scan_cmd->parsed()) {
    if (scan_check_name.empty()) throw qtrunc::usage_error("scan needs a check name (see --help)");
    qtrunc::ScanSpec spec;
    spec.check = scan_check_name;
    spec.jobs = jobs;
    for (const auto& [name, text] : scan_ranges) {
      const auto range = parse_range(text, name);
      if (range.lo == range.hi)
        spec.fixed_ints[name] = range.lo;
      else
        spec.grids[name] = range;
    }
    if (!scan_part.empty()) spec.fixed_strs["part"] = scan_part;
    if (!scan_family.empty()) spec.fixed_strs["family"] = scan_family;
    if (!scan_expr.empty()) spec.fixed_strs["expr"] = scan_expr;
    if (!scan_direction.empty()) spec.fixed_strs["direction"] = scan_direction;
    const auto grid_n = spec.grids.count("N") ? spec.grids.at("N").hi
                                              : spec.fixed_ints.count("N")
                                                    ? spec.fixed_ints.at("N")
                                                    : 100;
    enforce_guardrail(grid_n, allow_large);
    const auto result = qtrunc::run_scan(spec);
    for (const auto& r : result.reports) out << qtrunc::report_line(r, timing) << "\n";
    out << qtrunc::scan_summary_json(result).dump() << "\n";
    return result.all_passed() ? 0 : 1;
  }

  if (oracle_cmd->parsed()) {
    const qtrunc::CountTable table(oracle_n);
    out << table.to_csv();
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qtrunc::usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const qtrunc::hypothesis_error& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return 2;
  } catch (const qtrunc::parse_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
