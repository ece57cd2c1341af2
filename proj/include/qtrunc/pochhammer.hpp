#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qtrunc/laurent_series.hpp"

namespace qtrunc {

// minus encodes factors (1 - q^e), plus encodes (1 + q^e); in the classical
// notation (a; q^m)_n with a = q^e is a `minus` symbol and a = -q^e a `plus`
// symbol.
enum class FactorSign { minus, plus };

// One q-Pochhammer symbol ((+-)q^offset; q^step)_count raised to `power`.
// A negative power divides. `count` empty means the infinite symbol.
struct PochhammerFactor {
  FactorSign sign = FactorSign::minus;
  std::int64_t offset = 1;
  std::int64_t step = 1;
  std::optional<std::int64_t> count;  // nullopt: infinite
  std::int64_t power = 1;

  void validate() const {
    if (step < 1) throw std::domain_error("pochhammer factor: step must be >= 1");
    if (power == 0) throw std::domain_error("pochhammer factor: power must be nonzero");
    if (count && *count < 0) throw std::domain_error("pochhammer factor: negative count");
  }
};

inline PochhammerFactor poch_inf(FactorSign sign, std::int64_t offset, std::int64_t step,
                                 std::int64_t power = 1) {
  return PochhammerFactor{sign, offset, step, std::nullopt, power};
}

inline PochhammerFactor poch_fin(FactorSign sign, std::int64_t offset, std::int64_t step,
                                 std::int64_t count, std::int64_t power = 1) {
  return PochhammerFactor{sign, offset, step, count, power};
}

// Product of Pochhammer symbols with an explicit monomial prefactor, so
// expressions like -q^{-S}(1-q^S)(...) are first-class values.
struct ProductExpr {
  std::vector<PochhammerFactor> factors;
  Integer coeff = 1;
  std::int64_t shift = 0;

  ProductExpr& mul(PochhammerFactor f) {
    factors.push_back(std::move(f));
    return *this;
  }
  ProductExpr& mul(const ProductExpr& other) {
    factors.insert(factors.end(), other.factors.begin(), other.factors.end());
    coeff *= other.coeff;
    shift += other.shift;
    return *this;
  }
  ProductExpr& mul_monomial(Integer c, std::int64_t e) {
    coeff *= c;
    shift += e;
    return *this;
  }
};

namespace detail {

// Enumerates factor exponents of one symbol, capped by `count` and by the
// exponent ceiling. step >= 1 guarantees termination and that only finitely
// many exponents are <= 0.
template <class Fn>
void for_each_factor_exponent(const PochhammerFactor& f, std::int64_t ceiling, Fn&& fn) {
  std::int64_t e = f.offset;
  for (std::int64_t i = 0; !f.count || i < *f.count; ++i, e += f.step) {
    if (e > ceiling) break;
    fn(e);
  }
}

// The binomial 1 + sign*q^e, e <= 0, as a series with the given exactness
// window. For e < 0 and a narrow window the constant term can fall beyond the
// bound; e == 0 collapses to the constant 1 + sign.
inline LaurentSeries binomial_series(int sign, std::int64_t e, std::int64_t window) {
  std::vector<Integer> coeffs(static_cast<std::size_t>(window + 1), Integer(0));
  if (e == 0) {
    coeffs[0] = 1 + sign;
  } else {
    coeffs[0] = sign;
    if (-e <= window) coeffs[static_cast<std::size_t>(-e)] = 1;
  }
  return LaurentSeries::from_coefficients(e, std::move(coeffs), e + window);
}

}  // namespace detail

// Exact expansion of a product expression through q^N.
//
// Strategy: the true valuation V of the product is the monomial shift plus the
// contribution of every factor instance with nonpositive exponent (a binomial
// (1 -+ q^e) with e < 0 has valuation e). All series between here and the final
// product keep an exactness window of W = N - V coefficients above their
// valuation (the window is preserved by multiplication and inversion), so the
// result is exact through V + W = N. Infinite symbols drop the factors with
// exponent > W: those are congruent to 1 within every window in play.
inline LaurentSeries expand(const ProductExpr& p, std::int64_t N) {
  for (const auto& f : p.factors) f.validate();
  if (p.coeff == 0) return LaurentSeries::zero(N);

  std::int64_t valuation = p.shift;
  bool vanishes = false;
  for (const auto& f : p.factors) {
    std::int64_t negative_part = 0;
    detail::for_each_factor_exponent(f, 0, [&](std::int64_t e) {
      if (e == 0 && f.sign == FactorSign::minus) vanishes = true;  // factor (1 - 1)
      negative_part += std::min<std::int64_t>(e, 0);
    });
    valuation += f.power * negative_part;
  }
  if (vanishes) return LaurentSeries::zero(N);
  if (valuation > N) return LaurentSeries::zero(N);
  const std::int64_t window = N - valuation;

  LaurentSeries numerator = LaurentSeries::one(window);
  LaurentSeries denominator = LaurentSeries::one(window);
  bool have_denominator = false;
  for (const auto& f : p.factors) {
    LaurentSeries& target = f.power > 0 ? numerator : denominator;
    if (f.power < 0) have_denominator = true;
    const std::int64_t multiplicity = f.power > 0 ? f.power : -f.power;
    const int sign = f.sign == FactorSign::minus ? -1 : +1;
    detail::for_each_factor_exponent(f, window, [&](std::int64_t e) {
      for (std::int64_t rep = 0; rep < multiplicity; ++rep) {
        if (e >= 1) {
          target.mul_binomial_inplace(sign, e);
        } else {
          // Rare nonpositive-exponent factor (e.g. (1 - q^{-S})); kept literal.
          target = target * detail::binomial_series(sign, e, window);
        }
      }
    });
  }

  LaurentSeries result =
      have_denominator ? numerator * invert(denominator) : std::move(numerator);
  result = shifted(result, p.shift);
  if (p.coeff != 1) result = scaled(result, p.coeff);
  if (result.bound() < N)
    throw std::logic_error("expand: internal bound accounting lost exactness");
  return truncated_to(result, N);
}

inline LaurentSeries pochhammer_finite(FactorSign sign, std::int64_t offset, std::int64_t step,
                                       std::int64_t count, std::int64_t N) {
  ProductExpr p;
  p.mul(poch_fin(sign, offset, step, count));
  return expand(p, N);
}

inline LaurentSeries pochhammer_infinite(FactorSign sign, std::int64_t offset, std::int64_t step,
                                         std::int64_t N) {
  ProductExpr p;
  p.mul(poch_inf(sign, offset, step));
  return expand(p, N);
}

}  // namespace qtrunc
