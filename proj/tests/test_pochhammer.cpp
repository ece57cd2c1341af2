#include "qtrunc/pochhammer.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "qtrunc/product_grammar.hpp"
#include "qtrunc/truncation.hpp"
#include "test_support.hpp"

using namespace qtrunc;
using qtrunc::testing::series_of;

namespace {

// Independent oracle: multiply the binomial factors (1 + sign*q^e) directly
// over a plain exponent->coefficient map, no series machinery involved.
LaurentSeries brute_product(const std::vector<std::pair<int, std::int64_t>>& binomials,
                            std::int64_t N) {
  std::map<std::int64_t, Integer> acc{{0, Integer(1)}};
  for (const auto& [sign, e] : binomials) {
    std::map<std::int64_t, Integer> next = acc;
    for (const auto& [exp, c] : acc) next[exp + e] += sign * c;
    acc = std::move(next);
  }
  std::int64_t lo = acc.begin()->first;
  std::vector<Integer> coeffs(static_cast<std::size_t>(N - lo + 1), Integer(0));
  for (const auto& [exp, c] : acc)
    if (exp <= N) coeffs[static_cast<std::size_t>(exp - lo)] += c;
  return LaurentSeries::from_coefficients(lo, std::move(coeffs), N);
}

}  // namespace

TEST_CASE("pentagonal expansion of (q;q)_inf") {
  const auto s = pochhammer_infinite(FactorSign::minus, 1, 1, 7);
  CHECK(s == series_of(0, {1, -1, -1, 0, 0, 1, 0, 1}, 7));

  std::vector<std::pair<int, std::int64_t>> factors;
  for (std::int64_t e = 1; e <= 7; ++e) factors.push_back({-1, e});
  CHECK(s == brute_product(factors, 7));
}

TEST_CASE("empty products and single factors") {
  CHECK(pochhammer_finite(FactorSign::minus, 1, 1, 0, 3).is_one());
  CHECK(pochhammer_finite(FactorSign::minus, 1, 1, 1, 10) == series_of(0, {1, -1}, 10));
}

TEST_CASE("(-q;q)_inf matches distinct-part counts and the Euler identity") {
  const auto s = pochhammer_infinite(FactorSign::plus, 1, 1, 6);
  CHECK(s == series_of(0, {1, 1, 1, 2, 2, 3, 4}, 6));

  // (-q;q)_inf * (q;q^2)_inf = 1.
  for (std::int64_t n : {40, 300}) {
    const auto lhs = pochhammer_infinite(FactorSign::plus, 1, 1, n) *
                     pochhammer_infinite(FactorSign::minus, 1, 2, n);
    CHECK(lhs.is_one());
  }
}

TEST_CASE("finite even product") {
  // (1-q^2)(1-q^4)(1-q^6) = 1 - q^2 - q^4 + q^8 + q^10 - q^12
  const auto s = pochhammer_finite(FactorSign::minus, 2, 2, 3, 20);
  CHECK(s == brute_product({{-1, 2}, {-1, 4}, {-1, 6}}, 20));
  CHECK(s == series_of(0, {1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1, 0, -1}, 20));
}

TEST_CASE("negative-offset infinite product is exact through the bound") {
  // (q^{-1}; q^3)_inf at N = 4: the surviving factors are
  // (1 - q^-1)(1 - q^2)(1 - q^5); the q^5 factor still matters at q^4 because
  // the product has valuation -1.
  const auto s = expand(ProductExpr{}.mul(poch_inf(FactorSign::minus, -1, 3)), 4);
  CHECK(s.valuation() == -1);
  CHECK(s == brute_product({{-1, -1}, {-1, 2}, {-1, 5}}, 4));
  CHECK(s == series_of(-1, {-1, 1, 1, -1, 0, 1}, 4));
}

TEST_CASE("negative powers expand through invert") {
  ProductExpr p;
  p.mul(poch_inf(FactorSign::minus, 1, 1, -1));
  const auto partitions = expand(p, 9);
  CHECK(partitions == series_of(0, {1, 1, 2, 3, 5, 7, 11, 15, 22, 30}, 9));

  ProductExpr same_times_inverse;
  same_times_inverse.mul(poch_inf(FactorSign::minus, -1, 3));
  same_times_inverse.mul(poch_inf(FactorSign::minus, -1, 3, -1));
  CHECK(expand(same_times_inverse, 10).is_one());
}

TEST_CASE("monomial prefactor") {
  ProductExpr p;
  p.mul_monomial(-1, -2);
  p.mul(poch_fin(FactorSign::minus, 1, 1, 1));  // -q^{-2} (1 - q)
  CHECK(expand(p, 5) == series_of(-2, {-1, 1}, 5));
}

TEST_CASE("splitting an infinite symbol") {
  std::mt19937_64 rng(0xfeed);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t e0 = 1 + static_cast<std::int64_t>(rng() % 5);
    const std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 4);
    const std::int64_t n = static_cast<std::int64_t>(rng() % 6);
    const auto sign = rng() % 2 == 0 ? FactorSign::minus : FactorSign::plus;
    ProductExpr split;
    split.mul(poch_fin(sign, e0, step, n));
    split.mul(poch_inf(sign, e0 + n * step, step));
    CHECK(expand(split, 60) == pochhammer_infinite(sign, e0, step, 60));
  }
}

TEST_CASE("monotone factor elimination") {
  for (std::int64_t n : {10, 25}) {
    const auto small = pochhammer_infinite(FactorSign::minus, 1, 1, n);
    const auto large = pochhammer_infinite(FactorSign::minus, 1, 1, n + 17);
    CHECK(small == truncated_to(large, n));
  }
}

TEST_CASE("vanishing and constant factors") {
  // (q^0; q)_inf contains the factor (1 - 1) = 0.
  CHECK(pochhammer_infinite(FactorSign::minus, 0, 1, 6).is_zero());
  // (-q^0; q^5)_1 = (1 + 1) = 2.
  CHECK(pochhammer_finite(FactorSign::plus, 0, 5, 1, 6) == series_of(0, {2}, 6));
}

TEST_CASE("grammar round trips the quintuple product") {
  const auto p = parse_product_expr(
      "(q^-1; q^3)_inf * (q^4; q^3)_inf * (q^3; q^3)_inf * (q; q^6)_inf * (q^5; q^6)_inf");
  REQUIRE(p.factors.size() == 5);
  const auto direct = family_denominator(TheoremFamily::quintuple(3, 1));
  CHECK(expand(p, 60) == expand(direct, 60));
}

TEST_CASE("grammar forms") {
  CHECK(expand(parse_product_expr("(q; q^1)_0"), 3).is_one());
  CHECK(expand(parse_product_expr("(q; q^1)_inf"), 7) ==
        series_of(0, {1, -1, -1, 0, 0, 1, 0, 1}, 7));
  CHECK(expand(parse_product_expr("(q^-1; q^3)_inf * (q^-1; q^3)_inf^-1"), 10).is_one());
  CHECK(expand(parse_product_expr("(-q; q^1)_inf"), 6) == series_of(0, {1, 1, 1, 2, 2, 3, 4}, 6));
  CHECK(expand(parse_product_expr("(q^2; q^2)_3^2"), 20) ==
        expand(ProductExpr{}.mul(poch_fin(FactorSign::minus, 2, 2, 3, 2)), 20));
}

TEST_CASE("grammar fuzz: parse never crashes, valid inputs expand") {
  std::mt19937_64 gen(0xf022);
  const std::string alphabet = "(q^-; )_*infABC0123456789";
  int survived = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const std::size_t len = gen() % 40;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[gen() % alphabet.size()];
    try {
      const auto p = parse_product_expr(text);
      expand(p, 20);  // whatever parses must also expand
    } catch (const parse_error&) {
    } catch (const std::domain_error&) {
    }
    ++survived;
  }
  CHECK(survived == 2000);
}

TEST_CASE("grammar errors carry positions") {
  const auto check_pos = [](const std::string& text, std::size_t pos) {
    try {
      parse_product_expr(text);
      FAIL("expected parse_error for: " << text);
    } catch (const parse_error& e) {
      CHECK(e.position == pos);
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("position"));
    }
  };
  check_pos("q; q)_inf", 0);              // missing '('
  check_pos("(q: q)_inf", 2);             // ';' expected
  check_pos("(q; q^0)_inf", 4);           // modulus must be >= 1
  check_pos("(q; q)_x", 7);               // subscript
  check_pos("(q; q)_inf^0", 11);          // zero power
  check_pos("(q; q)_inf (q; q)_inf", 11); // missing '*'
}
