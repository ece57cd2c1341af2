// Acceptance suite: every release gate in one binary, one line per criterion.
// All checks are exact (tolerance zero); a single coefficient out of place
// anywhere fails the run.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "qtrunc/combinatorics.hpp"
#include "qtrunc/identities.hpp"
#include "qtrunc/json_io.hpp"
#include "qtrunc/scan.hpp"
#include "qtrunc/truncation.hpp"

using namespace qtrunc;

namespace {

int g_failures = 0;

// Admissible quintuple parameters with R <= 12: 1 <= S < R/2.
std::vector<std::pair<std::int64_t, std::int64_t>> rs_grid() {
  std::vector<std::pair<std::int64_t, std::int64_t>> grid;
  for (std::int64_t R = 3; R <= 12; ++R)
    for (std::int64_t S = 1; 2 * S < R; ++S) grid.push_back({R, S});
  return grid;
}

class FailureLog {
 public:
  void note(const std::string& what) {
    std::lock_guard<std::mutex> lock(mu_);
    if (first_.empty()) first_ = what;
    ++count_;
  }
  void note_report(const VerificationReport& r) {
    if (!r.passed()) note(report_line(r));
  }
  bool ok() const { return count_ == 0; }
  const std::string& first() const { return first_; }

 private:
  std::mutex mu_;
  std::string first_;
  int count_ = 0;
};

void criterion(int index, const std::string& name, const std::function<void(FailureLog&)>& body) {
  FailureLog log;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(log);
  } catch (const std::exception& e) {
    log.note(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %2d: %s (%.1fs)\n", log.ok() ? "PASS" : "FAIL", index, name.c_str(),
              secs);
  if (!log.ok()) {
    std::printf("       first failure: %s\n", log.first().c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

const int kJobs = std::max(1u, std::thread::hardware_concurrency());

}  // namespace

int main() {
  const auto grid = rs_grid();

  criterion(1, "quintuple identity, R <= 12, exact through q^300", [&](FailureLog& log) {
    parallel_for(grid.size(), kJobs, [&](std::size_t i) {
      log.note_report(check_quintuple(grid[i].first, grid[i].second, 300));
    });
  });

  criterion(2, "consequence identities through q^500 with low-order spot values",
            [&](FailureLog& log) {
    log.note_report(check_consequence(ConsequenceFamily::three_n_plus_one, 500));
    log.note_report(check_consequence(ConsequenceFamily::six_n_plus_one, 500));
    const auto [lhs, rhs] = consequence_sides(ConsequenceFamily::six_n_plus_one, 4);
    for (const auto& side : {lhs, rhs}) {
      if (side.coefficient(0) != 1 || side.coefficient(2) != -5 || side.coefficient(4) != 7)
        log.note("6n+1 spot values 1, -5q^2, 7q^4 not reproduced");
    }
  });

  criterion(3, "unilateral truncations thm11/thm12, (R,S) grid, k <= 8, N = 200", [&](FailureLog& log) {
    std::vector<std::pair<std::size_t, std::int64_t>> points;  // (grid index, k)
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::int64_t k = 0; k <= 8; ++k) points.push_back({i, k});
    parallel_for(points.size(), kJobs, [&](std::size_t p) {
      const auto [i, k] = points[p];
      log.note_report(verify_thm11(grid[i].first, grid[i].second, k, 200));
      if (k >= 1) log.note_report(verify_thm12(grid[i].first, grid[i].second, k, 200));
    });
  });

  criterion(4, "bilateral windows thm13, a,b in [-6,6], (R,S) grid, N = 150", [&](FailureLog& log) {
    std::vector<std::tuple<std::size_t, std::int64_t, std::int64_t>> points;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::int64_t a = -6; a <= 6; ++a)
        for (std::int64_t b = -6; b <= 6; ++b) points.push_back({i, a, b});
    parallel_for(points.size(), kJobs, [&](std::size_t p) {
      const auto [i, a, b] = points[p];
      log.note_report(verify_thm13(grid[i].first, grid[i].second, a, b, 150));
    });
  });

  criterion(5, "thm14/thm15 (k <= 10) and thm16/thm17 (a,b in [-6,6]) at N = 300",
            [&](FailureLog& log) {
    parallel_for(11, kJobs, [&](std::size_t k) {
      log.note_report(verify_thm14(static_cast<std::int64_t>(k), 300));
      log.note_report(verify_thm15(static_cast<std::int64_t>(k), 300));
    });
    std::vector<std::pair<std::int64_t, std::int64_t>> windows;
    for (std::int64_t a = -6; a <= 6; ++a)
      for (std::int64_t b = -6; b <= 6; ++b) windows.push_back({a, b});
    parallel_for(windows.size(), kJobs, [&](std::size_t w) {
      log.note_report(verify_thm16(windows[w].first, windows[w].second, 300));
      log.note_report(verify_thm17(windows[w].first, windows[w].second, 300));
    });
  });

  criterion(6, "partial-sum lemmas and decomposition identities, k = 1..6, q^200",
            [&](FailureLog& log) {
    parallel_for(6, kJobs, [&](std::size_t i) {
      const std::int64_t k = static_cast<std::int64_t>(i) + 1;
      log.note_report(check_partial_sum_lemma(PartialSumFamily::three_n_plus_one, k, 200));
      log.note_report(check_partial_sum_lemma(PartialSumFamily::six_n_plus_one, k, 200));
      log.note_report(check_decomposition_identity(DecompositionSplit::A_split, k, 200));
      log.note_report(check_decomposition_identity(DecompositionSplit::C_split, k, 200));
    });
  });

  criterion(7, "sign lemmas for all decomposition parts, k = 1..6, q^200", [&](FailureLog& log) {
    using T = DecompositionTag;
    const std::vector<T> parts{T::A1, T::A2, T::A3, T::B,  T::A,
                               T::C1, T::C2, T::C3, T::C4, T::D, T::C};
    std::vector<std::pair<T, std::int64_t>> points;
    for (T t : parts)
      for (std::int64_t k = 1; k <= 6; ++k) points.push_back({t, k});
    parallel_for(points.size(), kJobs, [&](std::size_t p) {
      log.note_report(check_part_sign({points[p].first, points[p].second}, 200));
    });
  });

  criterion(8, "Ramanujan entries entry951/entry941 at a = q^j, j = 1..6, q^150",
            [&](FailureLog& log) {
    parallel_for(6, kJobs, [&](std::size_t i) {
      const std::int64_t j = static_cast<std::int64_t>(i) + 1;
      log.note_report(ramanujan_entry_check(RamanujanEntry::entry951, j, 150));
      log.note_report(ramanujan_entry_check(RamanujanEntry::entry941, j, 150));
    });
  });

  criterion(9, "counting oracles: reference values, enumeration vs series, q^200",
            [&](FailureLog& log) {
    if (enumerate_overpartitions(3) != 8) log.note("overpartitions of 3 != 8");
    if (triplet_count(2) != 18) log.note("ppp(2) != 18");
    ProductExpr op_gf;
    op_gf.mul(poch_inf(FactorSign::plus, 1, 1));
    op_gf.mul(poch_inf(FactorSign::minus, 1, 1, -1));
    const auto op_series = expand(op_gf, 12);
    for (std::int64_t n = 0; n <= 12; ++n) {
      if (op_series.coefficient(n) != enumerate_overpartitions(n))
        log.note("overpartition enumeration disagrees with the generating function at n = " +
                 std::to_string(n));
      triplet_count(n);  // asserts enumeration == convolution internally
    }
    log.note_report(check_ppp_generating_function(200));
  });

  criterion(10, "corollary windows a,b in [-8,8], n <= 60, plus halved-series agreement",
            [&](FailureLog& log) {
    const std::int64_t n_max = 60;
    const CountTable table(n_max);
    std::vector<std::pair<std::int64_t, std::int64_t>> windows;
    for (std::int64_t a = -8; a <= 8; ++a)
      for (std::int64_t b = -8; b <= 8; ++b) windows.push_back({a, b});
    parallel_for(windows.size(), kJobs, [&](std::size_t w) {
      const auto [a, b] = windows[w];
      log.note_report(check_corollary(n_max, {a, b}));
      // Same numbers must fall out of the series route with q^2 -> q.
      const auto halved =
          halved_exponents(bilateral_series(TheoremFamily::six_n_plus_one(), {a, b}, 2 * n_max));
      for (std::int64_t n = 0; n <= n_max; ++n) {
        Integer sum = 0;
        for (std::int64_t i = a; i <= b; ++i)
          sum += Integer(6 * i + 1) * table.ppp_or_zero(n - i * (3 * i + 1) / 2);
        sum *= sg(a + b);
        if (halved.coefficient(n) != sum) {
          log.note("corollary sum disagrees with the halved series at n = " + std::to_string(n) +
                   " window (" + std::to_string(a) + "," + std::to_string(b) + ")");
          break;
        }
      }
    });
  });

  criterion(11, "property suites: ring axioms, invert, truncation, term signs, windows",
            [&](FailureLog& log) {
    std::mt19937_64 rng(0xACCE57);
    const auto random_series = [&rng]() {
      if (rng() % 12 == 0) return LaurentSeries::zero(static_cast<std::int64_t>(rng() % 20));
      const std::int64_t val = static_cast<std::int64_t>(rng() % 11) - 5;
      const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 12);
      std::vector<Integer> coeffs;
      for (std::int64_t i = 0; i < len; ++i)
        coeffs.emplace_back(static_cast<std::int64_t>(rng() % 19) - 9);
      return LaurentSeries::from_coefficients(val, std::move(coeffs), val + len - 1);
    };

    for (int trial = 0; trial < 500; ++trial) {
      const auto a = random_series(), b = random_series(), c = random_series();
      if (!matches((a + b) + c, a + (b + c))) log.note("associativity failed");
      if (!matches(a * (b + c), a * b + a * c)) log.note("distributivity failed");
      if (!matches(a * b, b * a)) log.note("commutativity failed");
    }

    for (int trial = 0; trial < 200; ++trial) {
      auto s = random_series();
      while (s.is_zero()) s = random_series();
      auto coeffs = s.coefficients();
      coeffs[0] = rng() % 2 == 0 ? 1 : -1;
      s = LaurentSeries::from_coefficients(s.valuation(), std::move(coeffs), s.bound());
      if (!(s * invert(s)).is_one()) log.note("invert round-trip failed");
    }

    for (int trial = 0; trial < 300; ++trial) {
      const auto a = random_series(), b = random_series();
      const std::int64_t m =
          std::min(a.bound(), b.bound()) - static_cast<std::int64_t>(rng() % 4);
      if (truncated_to(a + b, m) != truncated_to(a, m) + truncated_to(b, m))
        log.note("truncation coherence (add) failed");
      const auto full = a * b, cut = truncated_to(a, m) * truncated_to(b, m);
      const std::int64_t agree = std::min(full.bound(), cut.bound());
      if (!matches(truncated_to(full, agree), truncated_to(cut, agree)))
        log.note("truncation coherence (mul) failed");
    }

    std::vector<TheoremFamily> fams{TheoremFamily::three_n_plus_one(),
                                    TheoremFamily::six_n_plus_one()};
    for (const auto& [R, S] : grid) fams.push_back(TheoremFamily::quintuple(R, S));
    parallel_for(fams.size(), kJobs, [&](std::size_t f) {
      for (std::int64_t n = -8; n <= 8; ++n) {
        const auto t = term_series(fams[f], n, 100);
        const auto dir = n >= 0 ? SignDirection::nonneg : SignDirection::nonpos;
        if (first_sign_violation(t, t.is_zero() ? 0 : t.valuation(), dir))
          log.note(std::string("term sign structure failed for ") + fams[f].name() + " at n = " +
                   std::to_string(n));
      }
    });

    std::atomic<std::int64_t> harness_failures{0};
    parallel_for(10000, kJobs, [&](std::size_t seed) {
      const std::int64_t K = 1 + static_cast<std::int64_t>(seed % 12);
      const auto f = lemma21_generate(seed, K, 10 + static_cast<std::int64_t>(seed % 17));
      if (!lemma21_check(f).passed()) ++harness_failures;
    });
    if (harness_failures != 0)
      log.note("window harness: " + std::to_string(harness_failures.load()) + " failures");
  });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
