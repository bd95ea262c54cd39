#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pisot {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_q(const Rational& x) {
  return floor_div(x.get_num(), x.get_den());
}

inline Integer ceil_q(const Rational& x) {
  return ceil_div(x.get_num(), x.get_den());
}

inline Integer pow2(unsigned long bits) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
  return r;
}

/// Largest dyadic k/2^bits that is <= x.
inline Rational dyadic_floor(const Rational& x, unsigned long bits) {
  const Integer scale = pow2(bits);
  return make_rational(floor_div(x.get_num() * scale, x.get_den()), scale);
}

/// Smallest dyadic k/2^bits that is >= x.
inline Rational dyadic_ceil(const Rational& x, unsigned long bits) {
  const Integer scale = pow2(bits);
  return make_rational(ceil_div(x.get_num() * scale, x.get_den()), scale);
}

/// Nearest dyadic k/2^bits (ties away from the floor); |x - result| <= 2^-bits.
inline Rational dyadic_round(const Rational& x, unsigned long bits) {
  const Integer scale = pow2(bits);
  Integer twice = floor_div(2 * x.get_num() * scale + x.get_den(), 2 * x.get_den());
  return make_rational(twice, scale);
}

/// Dyadic upper bound on sqrt(s), s >= 0, accurate to 2^-bits.
inline Rational sqrt_upper(const Rational& s, unsigned long bits) {
  if (sgn(s) <= 0) return Rational(0);
  const Integer scale = pow2(2 * bits);
  Integer v = ceil_div(s.get_num() * scale, s.get_den());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  if (root * root < v) root += 1;
  return make_rational(root, pow2(bits));
}

/// Dyadic lower bound on sqrt(s), s >= 0, accurate to 2^-bits.
inline Rational sqrt_lower(const Rational& s, unsigned long bits) {
  if (sgn(s) <= 0) return Rational(0);
  const Integer scale = pow2(2 * bits);
  Integer v = floor_div(s.get_num() * scale, s.get_den());
  Integer root;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  return make_rational(root, pow2(bits));
}

/// Round-to-nearest conversion keeping the full 64-bit long double mantissa.
inline long double to_long_double(const Rational& x) {
  if (sgn(x) == 0) return 0.0L;
  const bool neg = sgn(x) < 0;
  Integer num = abs(x.get_num());
  const Integer& den = x.get_den();
  // Choose a shift so that the quotient carries about 64 significant bits.
  long shift = 64 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
               static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  Integer q;
  if (shift >= 0) {
    Integer scaled = num << static_cast<mp_bitcnt_t>(shift);
    q = scaled / den;
  } else {
    Integer scaled_den = den << static_cast<mp_bitcnt_t>(-shift);
    q = num / scaled_den;
  }
  // q < 2^66 here; split into two limbs so no precision is lost on the way.
  const Integer hi = q >> 32;
  const Integer lo = q - (hi << 32);
  long double v = static_cast<long double>(hi.get_ui()) * 4294967296.0L +
                  static_cast<long double>(lo.get_ui());
  v = std::ldexp(v, static_cast<int>(-shift));
  return neg ? -v : v;
}

inline long double to_long_double(const Integer& x) {
  return to_long_double(Rational(x));
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline std::size_t hash_value(const Integer& x) {
  const std::size_t limbs = mpz_size(x.get_mpz_t());
  std::size_t h = static_cast<std::size_t>(sgn(x)) + 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < limbs; ++i) {
    const auto limb = static_cast<std::size_t>(mpz_getlimbn(x.get_mpz_t(), i));
    h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

/// Parses "a", "-a", "a/b". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

}  // namespace pisot
