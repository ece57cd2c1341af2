#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtrunc/pochhammer.hpp"

namespace qtrunc {

// Parse failure with the 0-based input position it occurred at.
struct parse_error : std::runtime_error {
  parse_error(std::size_t position, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
        position(position) {}
  std::size_t position;
};

namespace detail {

// Recursive-descent reader for the product grammar
//   product := symbol (ws '*' ws symbol)*
//   symbol  := '(' sign? q-power ';' q-power ')' '_' ('inf' | uint) ('^' int)?
//   q-power := 'q' ('^' int)?
// A leading '-' on the base means factors (1 + q^...); no sign means (1 - ...).
class ProductParser {
 public:
  explicit ProductParser(std::string_view text) : text_(text) {}

  ProductExpr parse() {
    ProductExpr p;
    skip_ws();
    p.mul(parse_symbol());
    skip_ws();
    while (!at_end()) {
      expect('*');
      skip_ws();
      p.mul(parse_symbol());
      skip_ws();
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    if (peek() != c)
      throw parse_error(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::int64_t parse_int() {
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    if (peek() < '0' || peek() > '9') throw parse_error(pos_, "expected an integer");
    std::int64_t v = 0;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (std::int64_t(1) << 40)) throw parse_error(start, "integer out of range");
      ++pos_;
    }
    return negative ? -v : v;
  }

  // 'q' with an optional '^exponent'; bare 'q' is q^1.
  std::int64_t parse_q_power() {
    expect('q');
    if (peek() != '^') return 1;
    ++pos_;
    return parse_int();
  }

  PochhammerFactor parse_symbol() {
    expect('(');
    skip_ws();
    FactorSign sign = FactorSign::minus;
    if (peek() == '-') {
      sign = FactorSign::plus;  // base -q^E gives factors (1 + q^...)
      ++pos_;
    }
    const std::int64_t offset = parse_q_power();
    skip_ws();
    expect(';');
    skip_ws();
    const std::size_t step_pos = pos_;
    const std::int64_t step = parse_q_power();
    if (step < 1) throw parse_error(step_pos, "modulus exponent must be >= 1");
    skip_ws();
    expect(')');
    expect('_');
    std::optional<std::int64_t> count;
    if (text_.substr(pos_, 3) == "inf") {
      pos_ += 3;
    } else {
      const std::size_t count_pos = pos_;
      const std::int64_t n = parse_int();
      if (n < 0) throw parse_error(count_pos, "subscript must be 'inf' or a nonnegative integer");
      count = n;
    }
    std::int64_t power = 1;
    if (peek() == '^') {
      ++pos_;
      const std::size_t power_pos = pos_;
      power = parse_int();
      if (power == 0) throw parse_error(power_pos, "power must be nonzero");
    }
    return PochhammerFactor{sign, offset, step, count, power};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ProductExpr parse_product_expr(std::string_view text) {
  if (text.empty()) throw parse_error(0, "empty expression");
  return detail::ProductParser(text).parse();
}

}  // namespace qtrunc
