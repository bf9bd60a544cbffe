#pragma once

// Vector-field expressions:
//
//   field   := expr (';' expr)*
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | 'x' integer | '(' expr ')'
//
// Whitespace is insignificant; U+2212 is accepted as a minus sign.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdg/polynomial.hpp"

namespace sdg {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, std::string found)
      : std::invalid_argument(format(position, expected, found)),
        position_(position),
        expected_(std::move(expected)) {}

  /// 0-based byte offset into the input.
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t pos, const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = "parse error at position " + std::to_string(pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    return msg + ", found " + found;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

namespace detail {

class VectorFieldParser {
 public:
  VectorFieldParser(std::string_view text, std::size_t dimension) : text_(text), dim_(dimension) {}

  PolynomialMap parse() {
    PolynomialMap out;
    out.push_back(expr());
    while (peek() == ';') {
      ++pos_;
      out.push_back(expr());
    }
    skip_ws();
    if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "'^'", "';'", "end of input"});
    if (out.size() != dim_)
      throw ParseError(pos_, {std::to_string(dim_) + " components"}, std::to_string(out.size()) + " components");
    return out;
  }

 private:
  static constexpr char kMinus = '-';

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  /// Next significant character, with U+2212 folded to '-'. 0 at end.
  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) return 0;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") return kMinus;
    return text_[pos_];
  }

  void advance() { pos_ += text_.substr(pos_, 3) == "\xE2\x88\x92" ? 3 : 1; }

  std::string found() {
    skip_ws();
    if (pos_ >= text_.size()) return "end of input";
    return "'" + std::string(text_.substr(pos_, text_.substr(pos_, 3) == "\xE2\x88\x92" ? 3 : 1)) + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) { throw ParseError(pos_, std::move(expected), found()); }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        advance();
        acc += term();
      } else if (c == kMinus) {
        advance();
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek() == '*') {
      advance();
      acc = acc * unary();
    }
    return acc;
  }

  Polynomial unary() {
    const char c = peek();
    if (c == '+') {
      advance();
      return unary();
    }
    if (c == kMinus) {
      advance();
      return -unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek() != '^') return base;
    advance();
    const unsigned long e = integer();
    if (e > Monomial::kMaxExponent) throw ParseError(pos_, {"an exponent <= 255"}, std::to_string(e));
    Polynomial out = Polynomial::constant(1);
    for (unsigned long i = 0; i < e; ++i) out = out * base;
    return out;
  }

  Polynomial primary() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      digits();
      if (peek() == '/') {
        advance();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"denominator"});
        const std::size_t den_pos = pos_;
        if (digits().find_first_not_of('0') == std::string_view::npos)
          throw ParseError(den_pos, {"nonzero denominator"}, "0");
      }
      std::string literal;
      for (char ch : text_.substr(start, pos_ - start))
        if (!std::isspace(static_cast<unsigned char>(ch))) literal += ch;
      return Polynomial::constant(parse_rational(literal));
    }
    if (c == 'x') {
      advance();
      const std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(text_.size() > pos_ ? text_[pos_] : '\0')))
        fail({"variable index"});
      const unsigned long idx = integer();
      if (idx >= dim_)
        throw ParseError(at, {"variable x0..x" + std::to_string(dim_ - 1)}, "x" + std::to_string(idx));
      return Polynomial::variable(idx);
    }
    if (c == '(') {
      advance();
      Polynomial inner = expr();
      if (peek() != ')') fail({"')'"});
      advance();
      return inner;
    }
    fail({"number", "variable", "'('", "'-'"});
  }

  std::string_view digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"});
    return text_.substr(start, pos_ - start);
  }

  unsigned long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"});
    if (pos_ - start > 9) throw ParseError(start, {"integer below 10^9"}, std::string(text_.substr(start, pos_ - start)));
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "x0^2*x1 - 3*x1; x0" into one polynomial per component.
inline PolynomialMap parse_vector_field(std::string_view text, std::size_t dimension) {
  return detail::VectorFieldParser(text, dimension).parse();
}

}  // namespace sdg
