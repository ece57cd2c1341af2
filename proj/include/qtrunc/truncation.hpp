#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>
#include <vector>

#include "qtrunc/laurent_series.hpp"
#include "qtrunc/pochhammer.hpp"
#include "qtrunc/report.hpp"

namespace qtrunc {

// Sg(x): +1 on nonnegative integers, -1 on negative integers.
inline int sg(std::int64_t x) { return x >= 0 ? +1 : -1; }

// Bilateral index window [a, b]; a > b is the empty sum.
struct TruncationWindow {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

// The three series families whose truncations the theorems are about:
//   quintuple_rs     sum_n q^{n(3n+1)R/2}(q^{3nS} - q^{-(3n+1)S})
//                      over (q^{-S},q^{R+S},q^R;q^R)_inf (q^{R-2S},q^{R+2S};q^{2R})_inf
//   three_n_plus_one sum_n (3n+1)q^{3n^2+2n} over (q;q^2)^2 (q^2;q^2) (q^4;q^4)^2
//   six_n_plus_one   sum_n (6n+1)q^{3n^2+n}  over (q^2;q^2)^3 (q^2;q^4)^2
struct TheoremFamily {
  enum class Kind { quintuple_rs, three_n_plus_one, six_n_plus_one };

  Kind kind = Kind::three_n_plus_one;
  std::int64_t R = 0;
  std::int64_t S = 0;

  static TheoremFamily quintuple(std::int64_t R, std::int64_t S) {
    if (S < 1 || 2 * S >= R)
      throw hypothesis_error("quintuple family requires 1 <= S < R/2");
    return TheoremFamily{Kind::quintuple_rs, R, S};
  }
  static TheoremFamily three_n_plus_one() {
    return TheoremFamily{Kind::three_n_plus_one, 0, 0};
  }
  static TheoremFamily six_n_plus_one() {
    return TheoremFamily{Kind::six_n_plus_one, 0, 0};
  }

  // Valuation of the family's product denominator (-S for the quintuple
  // family, from its literal (1 - q^{-S}) factor).
  std::int64_t denominator_valuation() const {
    return kind == Kind::quintuple_rs ? -S : 0;
  }

  const char* name() const {
    switch (kind) {
      case Kind::quintuple_rs: return "quintupleRS";
      case Kind::three_n_plus_one: return "threeNplusOne";
      case Kind::six_n_plus_one: return "sixNplusOne";
    }
    return "?";
  }

  friend auto operator<=>(const TheoremFamily&, const TheoremFamily&) = default;
};

// Product side of the family's identity; doubles as the denominator of every
// truncated series in that family.
inline ProductExpr family_denominator(const TheoremFamily& fam) {
  ProductExpr p;
  switch (fam.kind) {
    case TheoremFamily::Kind::quintuple_rs: {
      const std::int64_t R = fam.R, S = fam.S;
      p.mul(poch_inf(FactorSign::minus, -S, R));
      p.mul(poch_inf(FactorSign::minus, R + S, R));
      p.mul(poch_inf(FactorSign::minus, R, R));
      p.mul(poch_inf(FactorSign::minus, R - 2 * S, 2 * R));
      p.mul(poch_inf(FactorSign::minus, R + 2 * S, 2 * R));
      break;
    }
    case TheoremFamily::Kind::three_n_plus_one:
      p.mul(poch_inf(FactorSign::minus, 1, 2, 2));
      p.mul(poch_inf(FactorSign::minus, 2, 2));
      p.mul(poch_inf(FactorSign::minus, 4, 4, 2));
      break;
    case TheoremFamily::Kind::six_n_plus_one:
      p.mul(poch_inf(FactorSign::minus, 2, 2, 3));
      p.mul(poch_inf(FactorSign::minus, 2, 4, 2));
      break;
  }
  return p;
}

// Monomials of the n-th summand of the family's bilateral sum.
inline std::vector<std::pair<Integer, std::int64_t>> term_numerator(const TheoremFamily& fam,
                                                                    std::int64_t n) {
  switch (fam.kind) {
    case TheoremFamily::Kind::quintuple_rs: {
      // n(3n+1) is even for every integer n.
      const std::int64_t base = (n * (3 * n + 1) / 2) * fam.R;
      return {{Integer(1), base + 3 * n * fam.S}, {Integer(-1), base - (3 * n + 1) * fam.S}};
    }
    case TheoremFamily::Kind::three_n_plus_one:
      return {{Integer(3 * n + 1), 3 * n * n + 2 * n}};
    case TheoremFamily::Kind::six_n_plus_one:
      return {{Integer(6 * n + 1), 3 * n * n + n}};
  }
  return {};
}

// Valuation of term_series(fam, n, .): numerator valuation plus the valuation
// gained by inverting the denominator. For the quintuple family this matches
// the closed forms (3n+1)(nR/2 - S) + S for n >= 0 and (3n+1)(nR/2 + S) for
// n < 0.
inline std::int64_t term_series_valuation(const TheoremFamily& fam, std::int64_t n) {
  const auto monos = term_numerator(fam, n);
  std::int64_t v = monos[0].second;
  for (const auto& [c, e] : monos) v = std::min(v, e);
  return v - fam.denominator_valuation();
}

namespace detail {

// Shared cache of inverted family denominators: they are the hot object of
// every theorem check and depend only on (family, N). Read-only after
// insertion, safe to share across threads.
inline std::shared_ptr<const LaurentSeries> family_inverse_denominator(const TheoremFamily& fam,
                                                                       std::int64_t N) {
  using Key = std::tuple<TheoremFamily::Kind, std::int64_t, std::int64_t, std::int64_t>;
  static std::map<Key, std::shared_ptr<const LaurentSeries>> cache;
  static std::mutex mu;
  const Key key{fam.kind, fam.R, fam.S, N};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto inv = std::make_shared<const LaurentSeries>(invert(expand(family_denominator(fam), N)));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(inv)).first->second;
}

}  // namespace detail

// The n-th summand divided by the family's full product denominator, exact
// through q^N. Each term is divided individually (not summed first): that is
// what makes the per-term sign structure a testable statement.
inline LaurentSeries term_series(const TheoremFamily& fam, std::int64_t n, std::int64_t N) {
  if (term_series_valuation(fam, n) > N) return LaurentSeries::zero(N);
  const std::int64_t s_off = -fam.denominator_valuation();  // S for quintuple, else 0
  const std::int64_t num_bound = N + s_off;
  LaurentSeries num = LaurentSeries::zero(num_bound);
  for (const auto& [c, e] : term_numerator(fam, n))
    if (e <= num_bound) num = num + LaurentSeries::monomial(c, e, num_bound);
  const auto inv = detail::family_inverse_denominator(fam, N);
  return truncated_to(num * *inv, N);
}

// Plain sum of term series over [a, b] (no Sg prefactor); empty when a > b.
inline LaurentSeries sum_terms(const TheoremFamily& fam, std::int64_t a, std::int64_t b,
                               std::int64_t N) {
  LaurentSeries acc = LaurentSeries::zero(N);
  for (std::int64_t n = a; n <= b; ++n) acc = acc + term_series(fam, n, N);
  return acc;
}

// Sg(a+b) * sum_{n=a}^{b} term_series(fam, n, N).
inline LaurentSeries bilateral_series(const TheoremFamily& fam, TruncationWindow w,
                                      std::int64_t N) {
  LaurentSeries s = sum_terms(fam, w.a, w.b, N);
  return sg(w.a + w.b) < 0 ? -s : s;
}

namespace detail {

inline VerificationReport report_sign(std::string check, std::map<std::string, ParamValue> params,
                                      const LaurentSeries& s, std::int64_t from,
                                      SignDirection dir) {
  if (!s.is_zero() && from <= s.bound()) {
    if (auto v = first_sign_violation(s, from, dir))
      return VerificationReport::make_fail(std::move(check), std::move(params), *std::move(v));
  }
  return VerificationReport::make_pass(std::move(check), std::move(params));
}

}  // namespace detail

// Theorem checks. The unilateral theorems assert a sign over the whole series;
// the bilateral ones only control exponents >= 1, so their constant term is
// reported in params["q0"] but never asserted.

inline VerificationReport verify_thm11(std::int64_t R, std::int64_t S, std::int64_t k,
                                       std::int64_t N) {
  if (k < 0) throw hypothesis_error("thm11 requires k >= 0");
  const auto fam = TheoremFamily::quintuple(R, S);
  LaurentSeries s = sum_terms(fam, -k, k, N);
  const std::int64_t from = s.is_zero() ? 0 : s.valuation();
  return detail::report_sign("thm11", {{"R", R}, {"S", S}, {"k", k}, {"N", N}}, s, from,
                             SignDirection::nonneg);
}

inline VerificationReport verify_thm12(std::int64_t R, std::int64_t S, std::int64_t k,
                                       std::int64_t N) {
  if (k < 1) throw hypothesis_error("thm12 requires k >= 1");
  const auto fam = TheoremFamily::quintuple(R, S);
  LaurentSeries s = LaurentSeries::monomial(-1, 0, N) + sum_terms(fam, -k, k - 1, N);
  const std::int64_t from = s.is_zero() ? 0 : s.valuation();
  return detail::report_sign("thm12", {{"R", R}, {"S", S}, {"k", k}, {"N", N}}, s, from,
                             SignDirection::nonpos);
}

inline VerificationReport verify_thm14(std::int64_t k, std::int64_t N) {
  if (k < 0) throw hypothesis_error("thm14 requires k >= 0");
  LaurentSeries s = sum_terms(TheoremFamily::three_n_plus_one(), -k, k, N);
  const std::int64_t from = s.is_zero() ? 0 : s.valuation();
  return detail::report_sign("thm14", {{"k", k}, {"N", N}}, s, from, SignDirection::nonneg);
}

inline VerificationReport verify_thm15(std::int64_t k, std::int64_t N) {
  if (k < 0) throw hypothesis_error("thm15 requires k >= 0");
  LaurentSeries s = sum_terms(TheoremFamily::six_n_plus_one(), -k, k, N);
  const std::int64_t from = s.is_zero() ? 0 : s.valuation();
  return detail::report_sign("thm15", {{"k", k}, {"N", N}}, s, from, SignDirection::nonneg);
}

namespace detail {

inline VerificationReport verify_bilateral(std::string check, const TheoremFamily& fam,
                                           std::map<std::string, ParamValue> params,
                                           TruncationWindow w, std::int64_t N) {
  LaurentSeries s = bilateral_series(fam, w, N);
  if (N >= 0) params["q0"] = to_decimal(s.coefficient(0));
  if (N < 1) return VerificationReport::make_pass(std::move(check), std::move(params));
  return report_sign(std::move(check), std::move(params), s, 1, SignDirection::nonneg);
}

}  // namespace detail

inline VerificationReport verify_thm13(std::int64_t R, std::int64_t S, std::int64_t a,
                                       std::int64_t b, std::int64_t N) {
  return detail::verify_bilateral("thm13", TheoremFamily::quintuple(R, S),
                                  {{"R", R}, {"S", S}, {"a", a}, {"b", b}, {"N", N}}, {a, b}, N);
}

inline VerificationReport verify_thm16(std::int64_t a, std::int64_t b, std::int64_t N) {
  return detail::verify_bilateral("thm16", TheoremFamily::three_n_plus_one(),
                                  {{"a", a}, {"b", b}, {"N", N}}, {a, b}, N);
}

inline VerificationReport verify_thm17(std::int64_t a, std::int64_t b, std::int64_t N) {
  return detail::verify_bilateral("thm17", TheoremFamily::six_n_plus_one(),
                                  {{"a", a}, {"b", b}, {"N", N}}, {a, b}, N);
}

// ---------------------------------------------------------------------------
// Signed-window harness (check id lemma21): integer functions f on [-K, K] with
//   (1) Sg(n) f(n) >= 0,
//   (2) sum_{n=-k}^{k-1} f(n) <= 0 and sum_{n=-k}^{k} f(n) >= 0 for 1 <= k <= K,
// for which Sg(a+b) sum_{n=a}^{b} f(n) >= 0 on every window.
// ---------------------------------------------------------------------------

struct SignedF {
  std::int64_t K = 0;
  std::vector<std::int64_t> values;  // values[n + K] = f(n)

  std::int64_t at(std::int64_t n) const { return values[static_cast<std::size_t>(n + K)]; }
};

// Constructive generator: pick f(0) >= 0; for k = 1..K pick
// f(-k) <= -S2(k-1) and then f(k) >= -S1(k), where S1(k) = sum_{-k}^{k-1} f
// and S2(k) = sum_{-k}^{k} f. Both restrictions hold by construction. Slack
// above the forced bounds is drawn uniformly from [0, magnitude]; raw engine
// output is reduced mod (magnitude+1) so a seed reproduces exactly everywhere.
inline SignedF lemma21_generate(std::uint64_t seed, std::int64_t K, std::int64_t magnitude) {
  if (K < 1) throw hypothesis_error("lemma21_generate requires K >= 1");
  if (magnitude < 0) throw hypothesis_error("lemma21_generate requires magnitude >= 0");
  std::mt19937_64 rng(seed);
  const auto draw = [&]() -> std::int64_t {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(magnitude + 1));
  };
  SignedF f;
  f.K = K;
  f.values.assign(static_cast<std::size_t>(2 * K + 1), 0);
  f.values[static_cast<std::size_t>(K)] = draw();        // f(0)
  std::int64_t s2 = f.at(0);                             // S2(0)
  for (std::int64_t k = 1; k <= K; ++k) {
    const std::int64_t f_neg = -s2 - draw();             // f(-k) <= -S2(k-1)
    f.values[static_cast<std::size_t>(K - k)] = f_neg;
    const std::int64_t s1 = s2 + f_neg;                  // S1(k) <= 0
    const std::int64_t f_pos = -s1 + draw();             // f(k) >= -S1(k)
    f.values[static_cast<std::size_t>(K + k)] = f_pos;
    s2 = s1 + f_pos;                                     // S2(k) >= 0
  }
  return f;
}

// Verifies the lemma's conclusion on every window [a,b] within [-K, K],
// empty windows included. Inputs that violate the lemma's restrictions are
// malformed (the hypothesis fails, nothing is being tested) and rejected.
inline VerificationReport lemma21_check(const SignedF& f) {
  if (f.K < 1 || f.values.size() != static_cast<std::size_t>(2 * f.K + 1))
    throw std::invalid_argument("lemma21_check: malformed SignedF");
  const std::int64_t K = f.K;
  for (std::int64_t n = -K; n <= K; ++n)
    if (sg(n) * f.at(n) < 0)
      throw std::invalid_argument("lemma21_check: Sg(n) f(n) >= 0 violated, input malformed");
  std::vector<std::int64_t> prefix(f.values.size() + 1, 0);  // prefix sums over [-K, K]
  for (std::size_t i = 0; i < f.values.size(); ++i) prefix[i + 1] = prefix[i] + f.values[i];
  const auto window_sum = [&](std::int64_t a, std::int64_t b) -> std::int64_t {
    if (a > b) return 0;
    return prefix[static_cast<std::size_t>(b + K + 1)] - prefix[static_cast<std::size_t>(a + K)];
  };
  for (std::int64_t k = 1; k <= K; ++k) {
    if (window_sum(-k, k - 1) > 0 || window_sum(-k, k) < 0)
      throw std::invalid_argument("lemma21_check: partial-sum restriction violated, input malformed");
  }
  std::map<std::string, ParamValue> params{{"K", K}};
  for (std::int64_t a = -K; a <= K; ++a) {
    for (std::int64_t b = -K; b <= K; ++b) {
      const std::int64_t v = sg(a + b) * window_sum(a, b);
      if (v < 0) {
        params["violation_b"] = b;
        return VerificationReport::make_fail("lemma21", std::move(params),
                                             Violation{a, Integer(v)});
      }
    }
  }
  return VerificationReport::make_pass("lemma21", std::move(params));
}

}  // namespace qtrunc
