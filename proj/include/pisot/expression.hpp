#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>

#include "pisot/error.hpp"
#include "pisot/number_field.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/rational.hpp"

namespace pisot {

// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/')? unary)*        juxtaposition multiplies
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' exponent)?
//   exponent := ['-'] integer | '(' ['-'] integer ')' | '{' ['-'] integer '}'
//   atom   := integer | variable | '(' expr ')'
//   variable := b | beta | x | β
template <class Ring>
class ExpressionParser {
 public:
  ExpressionParser(std::string text, Ring ring) : s_(std::move(text)), ring_(std::move(ring)) {}

  typename Ring::value_type parse() {
    auto v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  using V = typename Ring::value_type;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'b' || c == 'x' ||
           static_cast<unsigned char>(c) == 0xCE;
  }

  V expr() {
    V acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = ring_.add(acc, term());
      } else if (peek('-')) {
        ++pos_;
        acc = ring_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  V term() {
    V acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = ring_.mul(acc, unary());
      } else if (peek('/')) {
        ++pos_;
        acc = ring_.div(acc, unary());
      } else if (starts_factor()) {
        acc = ring_.mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  V unary() {
    if (peek('-')) {
      ++pos_;
      return ring_.neg(unary());
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  long exponent() {
    skip();
    char close = 0;
    if (peek('(')) close = ')';
    else if (peek('{')) close = '}';
    if (close) ++pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (close) {
      if (!peek(close)) fail("unbalanced exponent bracket");
      ++pos_;
    }
    return neg ? -e : e;
  }

  V power() {
    V base = atom();
    if (peek('^')) {
      ++pos_;
      return ring_.pow(base, exponent());
    }
    return base;
  }

  V atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ring_.integer(Integer(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, 4, "beta") == 0) {
      pos_ += 4;
      return ring_.var();
    }
    if (c == 'b' || c == 'x') {
      ++pos_;
      return ring_.var();
    }
    if (s_.compare(pos_, 2, "\xCE\xB2") == 0) {
      pos_ += 2;
      return ring_.var();
    }
    fail("unexpected character");
  }

  std::string s_;
  Ring ring_;
  std::size_t pos_ = 0;
};

/// Ring adapter evaluating expressions in Q(beta).
struct FieldRing {
  using value_type = FieldElement;
  NumberField field;
  FieldElement integer(const Integer& v) const { return field.from_int(v); }
  FieldElement var() const { return field.beta(); }
  FieldElement add(const FieldElement& a, const FieldElement& b) const { return a + b; }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return a - b; }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const { return a * b; }
  FieldElement div(const FieldElement& a, const FieldElement& b) const {
    if (b.is_zero()) throw ZeroDivisionError("division by zero in expression");
    return a / b;
  }
  FieldElement neg(const FieldElement& a) const { return -a; }
  FieldElement pow(const FieldElement& a, long e) const {
    if (e < 0 && a.is_zero()) throw ZeroDivisionError("negative power of zero");
    return a.pow(e);
  }
};

/// Ring adapter for integer polynomials in x.
struct PolyRing {
  using value_type = IntPolynomial;
  IntPolynomial integer(const Integer& v) const { return IntPolynomial(IntVector{v}); }
  IntPolynomial var() const { return IntPolynomial::monomial(1); }
  IntPolynomial add(const IntPolynomial& a, const IntPolynomial& b) const { return a + b; }
  IntPolynomial sub(const IntPolynomial& a, const IntPolynomial& b) const { return a - b; }
  IntPolynomial mul(const IntPolynomial& a, const IntPolynomial& b) const { return a * b; }
  IntPolynomial div(const IntPolynomial&, const IntPolynomial&) const {
    throw ParseError("division is not allowed in a polynomial");
  }
  IntPolynomial neg(const IntPolynomial& a) const { return IntPolynomial() - a; }
  IntPolynomial pow(const IntPolynomial& a, long e) const {
    if (e < 0) throw ParseError("negative exponent in a polynomial");
    IntPolynomial r(IntVector{Integer(1)});
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
  }
};

inline FieldElement parse_element(const NumberField& field, const std::string& text) {
  return ExpressionParser<FieldRing>(text, FieldRing{field}).parse();
}

/// Accepts "k1,...,km" (x^m = k1 x^{m-1} + ... + km) or a monic polynomial such as
/// "x^3 - x^2 - x - 1". Returns the recurrence coefficients k.
inline IntVector parse_recurrence(const std::string& text) {
  const bool has_var = text.find_first_of("xb") != std::string::npos;
  if (!has_var) {
    IntVector k;
    std::size_t start = 0;
    std::string t = text;
    if (!t.empty() && t.front() == '[') t = t.substr(1);
    if (!t.empty() && t.back() == ']') t.pop_back();
    while (start <= t.size()) {
      const std::size_t comma = t.find(',', start);
      std::string piece = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      std::size_t a = piece.find_first_not_of(" \t"), b = piece.find_last_not_of(" \t");
      if (a == std::string::npos) throw ParseError("empty coefficient in '" + text + "'");
      piece = piece.substr(a, b - a + 1);
      Integer v;
      if (v.set_str(piece.front() == '+' ? piece.substr(1) : piece, 10) != 0)
        throw ParseError("malformed coefficient '" + piece + "'");
      k.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return k;
  }
  const IntPolynomial p = ExpressionParser<PolyRing>(text, PolyRing{}).parse();
  if (!p.is_monic()) throw ParseError("polynomial must be monic: " + text);
  IntVector k;
  for (int i = p.degree() - 1; i >= 0; --i) k.push_back(-p.coeff(static_cast<std::size_t>(i)));
  return k;
}

/// Matrix rows separated by '/', entries by ','.
inline IntegerMatrix parse_matrix(const std::string& text) {
  std::vector<IntVector> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t slash = text.find('/', start);
    rows.push_back(parse_recurrence(text.substr(start, slash == std::string::npos ? std::string::npos : slash - start)));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  IntegerMatrix m(rows);
  if (!m.is_square()) throw ParseError("matrix must be square: " + text);
  return m;
}

}  // namespace pisot
