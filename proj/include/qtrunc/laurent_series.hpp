#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qtrunc/integer.hpp"
#include "qtrunc/report.hpp"

namespace qtrunc {

enum class SignDirection { nonneg, nonpos };

inline const char* to_string(SignDirection d) {
  return d == SignDirection::nonneg ? "nonneg" : "nonpos";
}

// Exact truncated Laurent series over the integers.
//
// A nonzero series stores the dense coefficient window [valuation, bound]:
// coeffs[i] is the coefficient of q^(valuation + i), coeffs.front() != 0, and
// coeffs.size() == bound - valuation + 1. Every stored coefficient is exact;
// exponents above `bound` are unknown, exponents below `valuation` are zero.
// The canonical zero keeps an empty coefficient vector (its valuation is
// meaningless) but still carries a bound: it is known to vanish through q^bound.
//
// Values are immutable after construction as far as callers are concerned; all
// operations return new series, so instances can be shared across threads.
class LaurentSeries {
 public:
  LaurentSeries() = default;  // the canonical zero, exact through q^0

  static LaurentSeries zero(std::int64_t bound) {
    LaurentSeries s;
    s.bound_ = bound;
    return s;
  }

  static LaurentSeries monomial(Integer c, std::int64_t exponent, std::int64_t bound) {
    if (bound < exponent)
      throw std::domain_error("monomial: bound below exponent, no representable coefficient");
    if (c == 0) return zero(bound);
    LaurentSeries s;
    s.valuation_ = exponent;
    s.bound_ = bound;
    s.coeffs_.assign(static_cast<std::size_t>(bound - exponent + 1), Integer(0));
    s.coeffs_[0] = std::move(c);
    return s;
  }

  static LaurentSeries one(std::int64_t bound) { return monomial(1, 0, bound); }

  // Builds a series from a (possibly short) coefficient window starting at
  // `valuation`; missing trailing coefficients are zero.
  static LaurentSeries from_coefficients(std::int64_t valuation, std::vector<Integer> coeffs,
                                         std::int64_t bound) {
    if (bound < valuation)
      throw std::domain_error("from_coefficients: bound below valuation");
    const auto window = static_cast<std::size_t>(bound - valuation + 1);
    if (coeffs.size() > window)
      throw std::domain_error("from_coefficients: coefficients extend past bound");
    LaurentSeries s;
    s.valuation_ = valuation;
    s.bound_ = bound;
    s.coeffs_ = std::move(coeffs);
    s.coeffs_.resize(window, Integer(0));
    s.normalize();
    return s;
  }

  bool is_zero() const { return coeffs_.empty(); }

  bool is_one() const {
    if (coeffs_.empty() || valuation_ != 0 || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const Integer& c) { return c == 0; });
  }

  std::int64_t valuation() const {
    if (is_zero()) throw std::domain_error("valuation of the zero series");
    return valuation_;
  }

  std::int64_t bound() const { return bound_; }

  // Exact coefficient of q^e. Exponents above the truncation bound are unknown
  // and rejected.
  Integer coefficient(std::int64_t e) const {
    if (e > bound_) throw std::domain_error("coefficient beyond truncation");
    if (is_zero() || e < valuation_) return Integer(0);
    return coeffs_[static_cast<std::size_t>(e - valuation_)];
  }

  const std::vector<Integer>& coefficients() const { return coeffs_; }

  LaurentSeries operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    const std::int64_t bound = std::min(a.bound_, b.bound_);
    if (a.is_zero() && b.is_zero()) return zero(bound);
    if (a.is_zero()) return truncated_to(b, bound);
    if (b.is_zero()) return truncated_to(a, bound);
    const std::int64_t val = std::min(a.valuation_, b.valuation_);
    if (bound < val) return zero(bound);
    LaurentSeries r;
    r.valuation_ = val;
    r.bound_ = bound;
    r.coeffs_.assign(static_cast<std::size_t>(bound - val + 1), Integer(0));
    a.accumulate_into(r);
    b.accumulate_into(r);
    r.normalize();
    return r;
  }

  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-b);
  }

  // Cauchy product. The result bound min(a.bound + b.val, b.bound + a.val) is
  // the largest exponent whose convolution sum involves only stored
  // coefficients, so every kept coefficient stays exact. Schoolbook with a
  // zero-skip on the sparser operand; asymptotically faster convolution is out
  // of scope by design.
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    // A zero operand is only known zero through its bound; the product is
    // provably zero through zero.bound + other.valuation (unknown terms of the
    // zero side sit above its bound and get shifted by at least the other
    // side's valuation).
    if (a.is_zero() && b.is_zero()) return zero(a.bound_ + b.bound_ + 1);
    if (a.is_zero()) return zero(a.bound_ + b.valuation_);
    if (b.is_zero()) return zero(b.bound_ + a.valuation_);
    const std::int64_t val = a.valuation_ + b.valuation_;
    const std::int64_t bound =
        std::min(a.bound_ + b.valuation_, b.bound_ + a.valuation_);
    if (bound < val) return zero(bound);
    const LaurentSeries& outer = a.nonzero_count() <= b.nonzero_count() ? a : b;
    const LaurentSeries& inner = &outer == &a ? b : a;
    LaurentSeries r;
    r.valuation_ = val;
    r.bound_ = bound;
    r.coeffs_.assign(static_cast<std::size_t>(bound - val + 1), Integer(0));
    const std::int64_t window = bound - val;
    for (std::size_t i = 0; i < outer.coeffs_.size(); ++i) {
      if (outer.coeffs_[i] == 0) continue;
      // outer exponent offset i, inner offset j; product offset i + j.
      const std::int64_t jmax =
          std::min<std::int64_t>(static_cast<std::int64_t>(inner.coeffs_.size()) - 1,
                                 window - static_cast<std::int64_t>(i));
      for (std::int64_t j = 0; j <= jmax; ++j) {
        if (inner.coeffs_[static_cast<std::size_t>(j)] == 0) continue;
        r.coeffs_[i + static_cast<std::size_t>(j)] +=
            outer.coeffs_[i] * inner.coeffs_[static_cast<std::size_t>(j)];
      }
    }
    r.normalize();
    return r;
  }

  // Multiplies in place by the binomial (1 + sign*q^e), e >= 1. Exact: the
  // binomial is a polynomial, so the window is unchanged.
  void mul_binomial_inplace(int sign, std::int64_t e) {
    if (e < 1) throw std::domain_error("mul_binomial_inplace: exponent must be >= 1");
    if (sign != 1 && sign != -1)
      throw std::domain_error("mul_binomial_inplace: sign must be +1 or -1");
    if (is_zero()) return;
    const auto n = static_cast<std::int64_t>(coeffs_.size());
    for (std::int64_t i = n - 1; i >= e; --i) {
      const Integer& lower = coeffs_[static_cast<std::size_t>(i - e)];
      if (lower == 0) continue;
      if (sign > 0)
        coeffs_[static_cast<std::size_t>(i)] += lower;
      else
        coeffs_[static_cast<std::size_t>(i)] -= lower;
    }
  }

  friend LaurentSeries truncated_to(const LaurentSeries& s, std::int64_t new_bound) {
    if (new_bound > s.bound_)
      throw std::domain_error("truncated_to: cannot raise the truncation bound");
    if (s.is_zero() || new_bound < s.valuation_) return zero(new_bound);
    LaurentSeries r;
    r.valuation_ = s.valuation_;
    r.bound_ = new_bound;
    r.coeffs_.assign(s.coeffs_.begin(),
                     s.coeffs_.begin() + static_cast<std::size_t>(new_bound - s.valuation_ + 1));
    r.normalize();
    return r;
  }

  // Exact multiplication by q^e (a monomial is exact at every bound).
  friend LaurentSeries shifted(const LaurentSeries& s, std::int64_t e) {
    LaurentSeries r = s;
    r.valuation_ += r.is_zero() ? 0 : e;
    r.bound_ += e;
    return r;
  }

  friend LaurentSeries scaled(const LaurentSeries& s, const Integer& c) {
    if (c == 0) return zero(s.bound_);
    LaurentSeries r = s;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }

  bool operator==(const LaurentSeries&) const = default;

  std::string to_string() const {
    std::ostringstream out;
    if (is_zero()) {
      out << "0";
    } else {
      bool first = true;
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        const std::int64_t e = valuation_ + static_cast<std::int64_t>(i);
        Integer c = coeffs_[i];
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        if (c < 0) c = -c;
        if (c != 1 || e == 0) out << c.str();
        if (e != 0) {
          if (c != 1) out << "*";
          out << "q";
          if (e != 1) out << "^" << e;
        }
      }
    }
    out << " (+O(q^" << bound_ + 1 << "))";
    return out.str();
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = 0;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<std::int64_t>(lead);
    }
  }

  void accumulate_into(LaurentSeries& r) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const std::int64_t e = valuation_ + static_cast<std::int64_t>(i);
      if (e > r.bound_) break;
      r.coeffs_[static_cast<std::size_t>(e - r.valuation_)] += coeffs_[i];
    }
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& c : coeffs_)
      if (c != 0) ++n;
    return n;
  }

  std::int64_t valuation_ = 0;
  std::int64_t bound_ = 0;
  std::vector<Integer> coeffs_;
};

// Multiplicative inverse. Requires a nonzero series whose lowest coefficient
// is +1 or -1 so the inverse stays over the integers. Writing s = q^v * u with
// u(0) = a0 = +-1, the unit inverse satisfies b_0 = a0 and
// b_n = -a0 * sum_{j=1..n} a_j b_{n-j}; u is known through degree bound - v,
// hence the result is exact through bound - 2v with valuation -v.
inline LaurentSeries invert(const LaurentSeries& s) {
  if (s.is_zero()) throw std::domain_error("inverse of the zero series");
  const std::vector<Integer>& a = s.coefficients();
  if (a[0] != 1 && a[0] != -1) throw std::domain_error("non-unit leading coefficient");
  const std::int64_t v = s.valuation();
  const std::int64_t window = s.bound() - v;
  const Integer a0 = a[0];
  std::vector<Integer> b(static_cast<std::size_t>(window + 1), Integer(0));
  b[0] = a0;
  for (std::int64_t n = 1; n <= window; ++n) {
    Integer acc = 0;
    const std::int64_t jmax = std::min<std::int64_t>(n, static_cast<std::int64_t>(a.size()) - 1);
    for (std::int64_t j = 1; j <= jmax; ++j) {
      const Integer& aj = a[static_cast<std::size_t>(j)];
      if (aj == 0) continue;
      acc += aj * b[static_cast<std::size_t>(n - j)];
    }
    if (a0 > 0)
      b[static_cast<std::size_t>(n)] = -acc;
    else
      b[static_cast<std::size_t>(n)] = acc;
  }
  return LaurentSeries::from_coefficients(-v, std::move(b), s.bound() - 2 * v);
}

// First exponent in [from, s.bound] whose coefficient violates the requested
// sign, if any. Exponents below the valuation are zero and satisfy both
// directions.
inline std::optional<Violation> first_sign_violation(const LaurentSeries& s, std::int64_t from,
                                                     SignDirection direction) {
  if (from > s.bound()) throw std::domain_error("sign check window starts beyond truncation");
  if (s.is_zero()) return std::nullopt;
  const std::int64_t start = std::max(from, s.valuation());
  for (std::int64_t e = start; e <= s.bound(); ++e) {
    const Integer c = s.coefficient(e);
    const bool bad = direction == SignDirection::nonneg ? c < 0 : c > 0;
    if (bad) return Violation{e, c};
  }
  return std::nullopt;
}

inline VerificationReport sign_check(const LaurentSeries& s, std::int64_t from,
                                     SignDirection direction) {
  std::map<std::string, ParamValue> params{
      {"from", from}, {"direction", std::string(to_string(direction))}, {"N", s.bound()}};
  if (auto v = first_sign_violation(s, from, direction))
    return VerificationReport::make_fail("sign", std::move(params), *std::move(v));
  return VerificationReport::make_pass("sign", std::move(params));
}

// First exponent (through the common bound) where the two series differ;
// the witness coefficient is lhs - rhs there.
inline std::optional<Violation> first_mismatch(const LaurentSeries& a, const LaurentSeries& b) {
  const LaurentSeries d = a - b;
  if (d.is_zero()) return std::nullopt;
  return Violation{d.valuation(), d.coefficient(d.valuation())};
}

// Coefficient-wise agreement through the common bound min(a.bound, b.bound).
inline bool matches(const LaurentSeries& a, const LaurentSeries& b) {
  return !first_mismatch(a, b).has_value();
}

// Substitutes q^2 -> q. Every odd-exponent coefficient must vanish.
inline LaurentSeries halved_exponents(const LaurentSeries& s) {
  if (s.is_zero()) return LaurentSeries::zero(s.bound() >= 0 ? s.bound() / 2 : (s.bound() - 1) / 2);
  if (s.valuation() % 2 != 0)
    throw std::domain_error("halved_exponents: odd valuation");
  std::vector<Integer> c;
  for (std::int64_t e = s.valuation(); e <= s.bound(); ++e) {
    if (e % 2 == 0) {
      c.push_back(s.coefficient(e));
    } else if (s.coefficient(e) != 0) {
      throw std::domain_error("halved_exponents: nonzero odd-exponent coefficient");
    }
  }
  const std::int64_t new_bound = s.bound() >= 0 ? s.bound() / 2 : -((-s.bound() + 1) / 2);
  return LaurentSeries::from_coefficients(s.valuation() / 2, std::move(c), new_bound);
}

}  // namespace qtrunc
