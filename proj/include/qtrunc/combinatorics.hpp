#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qtrunc/laurent_series.hpp"
#include "qtrunc/pochhammer.hpp"
#include "qtrunc/report.hpp"
#include "qtrunc/truncation.hpp"

namespace qtrunc {

// Exact counts of partitions p(n), overpartitions op(n) and partition triplets
// ppp(n) (one partition plus two overpartitions), built once by dynamic
// programming and then read-only. Counting here is deliberately independent of
// the series engine: these tables are the oracle the engine is checked against.
class CountTable {
 public:
  explicit CountTable(std::int64_t limit) : limit_(limit) {
    if (limit < 0) throw std::domain_error("CountTable limit must be >= 0");
    const auto n = static_cast<std::size_t>(limit + 1);

    // Ordinary partitions: one part size at a time.
    p_.assign(n, Integer(0));
    p_[0] = 1;
    for (std::size_t part = 1; part < n; ++part)
      for (std::size_t v = part; v < n; ++v) p_[v] += p_[v - part];

    // Partitions into distinct parts (each part used at most once).
    std::vector<Integer> distinct(n, Integer(0));
    distinct[0] = 1;
    for (std::size_t part = 1; part < n; ++part)
      for (std::size_t v = n - 1; v >= part; --v) distinct[v] += distinct[v - part];

    // An overpartition is a partition plus a choice of which distinct part
    // values carry the overline; the overlined values form a partition into
    // distinct parts, so op = distinct (*) p.
    op_.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (distinct[i] == 0) continue;
      for (std::size_t v = i; v < n; ++v) op_[v] += distinct[i] * p_[v - i];
    }

    // ppp = p (*) op (*) op.
    std::vector<Integer> op2(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (op_[i] == 0) continue;
      for (std::size_t v = i; v < n; ++v) op2[v] += op_[i] * op_[v - i];
    }
    ppp_.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (p_[i] == 0) continue;
      for (std::size_t v = i; v < n; ++v) ppp_[v] += p_[i] * op2[v - i];
    }
  }

  std::int64_t limit() const { return limit_; }

  const Integer& p(std::int64_t n) const { return at(p_, n); }
  const Integer& op(std::int64_t n) const { return at(op_, n); }
  const Integer& ppp(std::int64_t n) const { return at(ppp_, n); }

  // ppp with the summation convention ppp(m) = 0 for m < 0.
  Integer ppp_or_zero(std::int64_t n) const { return n < 0 ? Integer(0) : ppp(n); }

  std::string to_csv() const {
    std::ostringstream out;
    out << "n,p,op,ppp\n";
    for (std::int64_t n = 0; n <= limit_; ++n)
      out << n << "," << p_[static_cast<std::size_t>(n)].str() << ","
          << op_[static_cast<std::size_t>(n)].str() << ","
          << ppp_[static_cast<std::size_t>(n)].str() << "\n";
    return out.str();
  }

 private:
  const Integer& at(const std::vector<Integer>& v, std::int64_t n) const {
    if (n < 0 || n > limit_) throw std::domain_error("CountTable index out of range");
    return v[static_cast<std::size_t>(n)];
  }

  std::int64_t limit_;
  std::vector<Integer> p_, op_, ppp_;
};

namespace detail {

constexpr std::int64_t kEnumerationLimit = 40;

// Explicit generation of partitions of n with parts <= max_part, choosing
// each part value together with its multiplicity; each partition contributes
// weight(#distinct part values) to the count.
template <class Weight>
std::int64_t enumerate_partitions_weighted(std::int64_t n, std::int64_t max_part,
                                           std::int64_t distinct_so_far, const Weight& weight) {
  if (n == 0) return weight(distinct_so_far);
  std::int64_t total = 0;
  for (std::int64_t part = std::min(n, max_part); part >= 1; --part)
    for (std::int64_t used = part; used <= n; used += part)
      total += enumerate_partitions_weighted(n - used, part - 1, distinct_so_far + 1, weight);
  return total;
}

}  // namespace detail

// Number of partitions of n by explicit generation of non-increasing part
// sequences. Small-n oracle only.
inline std::int64_t enumerate_partitions(std::int64_t n) {
  if (n < 0 || n > detail::kEnumerationLimit)
    throw std::domain_error("enumeration limit exceeded; use the counting path");
  return detail::enumerate_partitions_weighted(n, n, 0, [](std::int64_t) { return 1; });
}

// Number of overpartitions of n: every generated partition admits one
// overline choice per distinct part value (the first occurrence), so it
// contributes 2^{#distinct values}.
inline std::int64_t enumerate_overpartitions(std::int64_t n) {
  if (n < 0 || n > detail::kEnumerationLimit)
    throw std::domain_error("enumeration limit exceeded; use the counting path");
  return detail::enumerate_partitions_weighted(
      n, n, 0, [](std::int64_t distinct) { return std::int64_t(1) << distinct; });
}

// ppp(n) by triple convolution; for n <= 12 the value is additionally
// recomputed by enumerating the triplets and the two counts are asserted
// equal.
inline Integer triplet_count(std::int64_t n) {
  if (n < 0) throw std::domain_error("triplet_count requires n >= 0");
  const CountTable table(n);
  const Integer& value = table.ppp(n);
  if (n <= 12) {
    Integer enumerated = 0;
    for (std::int64_t i = 0; i <= n; ++i)
      for (std::int64_t j = 0; i + j <= n; ++j)
        enumerated += Integer(enumerate_partitions(i)) *
                      Integer(enumerate_overpartitions(j)) *
                      Integer(enumerate_overpartitions(n - i - j));
    if (enumerated != value)
      throw std::logic_error("triplet enumeration disagrees with the convolution table");
  }
  return value;
}

// Coefficients of 1/((q;q)^3 (q;q^2)^2) must reproduce the ppp table.
inline VerificationReport check_ppp_generating_function(std::int64_t N) {
  if (N < 0) throw hypothesis_error("check_ppp_generating_function requires N >= 0");
  ProductExpr gf;
  gf.mul(poch_inf(FactorSign::minus, 1, 1, -3));
  gf.mul(poch_inf(FactorSign::minus, 1, 2, -2));
  const LaurentSeries series = expand(gf, N);
  const CountTable table(N);
  for (std::int64_t n = 0; n <= N; ++n) {
    const Integer diff = series.coefficient(n) - table.ppp(n);
    if (diff != 0)
      return VerificationReport::make_fail("pppgf", {{"N", N}}, Violation{n, diff});
  }
  return VerificationReport::make_pass("pppgf", {{"N", N}});
}

// Triplet-count inequality: Sg(a+b) sum_{i=a}^{b} (6i+1) ppp(n - i(3i+1)/2)
// >= 0. Asserted
// for 1 <= n <= n_max; the n = 0 outcome is only reported (params n0_ok,
// n0_value) because the underlying theorem controls exponents >= 1 only —
// and n = 0 does genuinely fail for windows like (-1, 0).
inline VerificationReport check_corollary(std::int64_t n_max, TruncationWindow w) {
  if (n_max < 0) throw hypothesis_error("check_corollary requires n_max >= 0");
  const CountTable table(n_max);
  const auto window_sum = [&](std::int64_t n) {
    Integer sum = 0;
    for (std::int64_t i = w.a; i <= w.b; ++i) {
      // i(3i+1) is even for every integer i.
      const std::int64_t pent = i * (3 * i + 1);
      if (pent % 2 != 0) throw std::logic_error("i(3i+1) must be even");
      sum += Integer(6 * i + 1) * table.ppp_or_zero(n - pent / 2);
    }
    return Integer(sg(w.a + w.b)) * sum;
  };

  std::map<std::string, ParamValue> params{{"a", w.a}, {"b", w.b}, {"n", n_max}};
  const Integer n0 = window_sum(0);
  params["n0_ok"] = std::int64_t(n0 >= 0 ? 1 : 0);
  params["n0_value"] = to_decimal(n0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const Integer v = window_sum(n);
    if (v < 0)
      return VerificationReport::make_fail("corollary", std::move(params), Violation{n, v});
  }
  return VerificationReport::make_pass("corollary", std::move(params));
}

}  // namespace qtrunc
