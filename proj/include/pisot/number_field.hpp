#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pisot/error.hpp"
#include "pisot/linalg.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/rational.hpp"
#include "pisot/roots.hpp"

namespace pisot {

class NumberField;
class FieldElement;

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

/// Interval [lo, hi] with rational endpoints.
struct RealInterval {
  Rational lo, hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// Certified enclosure of a complex number: |z - center| <= radius.
struct ComplexBall {
  ComplexQ center;
  Rational radius;
};

namespace detail {

// Integer enclosures lo[i] <= beta^i * 2^bits <= hi[i] for i < m.
struct BetaPowerBounds {
  unsigned long bits = 0;
  IntVector lo, hi;
};

struct FieldData {
  IntVector k;
  std::size_t m = 0;
  IntPolynomial g;
  std::vector<IntVector> reduce;  // beta^j in the power basis, j < 2m - 1
  unsigned long precision = 128;
  std::vector<RootDisc> roots;    // index 0 is beta
  Rational theta;
  bool unit = false;
  IntVector xi0_num;
  Integer xi0_den;
  Integer D;

  unsigned long precision_cap = 1UL << 16;
  mutable std::mutex mu;
  mutable std::map<unsigned long, BetaPowerBounds> power_cache;
  mutable std::map<unsigned long, std::vector<RootDisc>> root_cache;
  mutable std::optional<RootIsolator> isolator;
};

// Fields built separately from the same recurrence are the same field.
inline bool same_data(const FieldData* a, const FieldData* b) { return a == b || (a && b && a->k == b->k); }

inline IntVector times_beta(const FieldData& f, const IntVector& c) {
  const std::size_t m = f.m;
  IntVector out(m);
  for (std::size_t i = 0; i + 1 < m; ++i) out[i + 1] = c[i];
  const Integer& top = c[m - 1];
  if (top != 0)
    for (std::size_t j = 0; j < m; ++j) out[j] += top * f.k[m - 1 - j];
  return out;
}

}  // namespace detail

/// Exact element of Q(beta): (num[0] + num[1] beta + ... ) / den with den > 0
/// and gcd(num, den) = 1.
class FieldElement {
 public:
  FieldElement() = default;

  NumberField field() const;
  std::size_t degree() const { return f_ ? f_->m : 0; }
  const IntVector& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  Rational coord(std::size_t i) const { return make_rational(num_[i], den_); }
  std::vector<Rational> coords() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coord(i));
    return out;
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Integer& v) { return v == 0; });
  }
  bool is_integral() const { return den_ == 1; }
  /// True when the element is a rational number (all higher coordinates vanish).
  bool is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
      if (num_[i] != 0) return false;
    return true;
  }
  bool same_field(const FieldElement& o) const { return detail::same_data(f_.get(), o.f_.get()); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_field(b);
    FieldElement r(a.f_);
    if (a.den_ == b.den_) {
      r.den_ = a.den_;
      for (std::size_t i = 0; i < r.num_.size(); ++i) r.num_[i] = a.num_[i] + b.num_[i];
    } else {
      r.den_ = a.den_ * b.den_;
      for (std::size_t i = 0; i < r.num_.size(); ++i) r.num_[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    }
    r.normalize();
    return r;
  }
  friend FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& v : r.num_) v = -v;
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_field(b);
    const std::size_t m = a.num_.size();
    IntVector prod(2 * m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (a.num_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) prod[i + j] += a.num_[i] * b.num_[j];
    }
    FieldElement r(a.f_);
    for (std::size_t i = 0; i < m; ++i) r.num_[i] = prod[i];
    for (std::size_t e = m; e < prod.size(); ++e) {
      if (prod[e] == 0) continue;
      const IntVector& red = a.f_->reduce[e];
      for (std::size_t i = 0; i < m; ++i) r.num_[i] += prod[e] * red[i];
    }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }
  friend FieldElement operator*(const Rational& s, const FieldElement& a) {
    FieldElement r = a;
    for (auto& v : r.num_) v *= s.get_num();
    r.den_ *= s.get_den();
    r.normalize();
    return r;
  }
  friend FieldElement operator*(const FieldElement& a, const Rational& s) { return s * a; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
  friend FieldElement operator/(const FieldElement& a, const Rational& s) {
    if (sgn(s) == 0) throw ZeroDivisionError("division by zero");
    return a * (1 / s);
  }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return detail::same_data(a.f_.get(), b.f_.get()) && a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement mul_beta() const {
    FieldElement r(f_);
    r.num_ = detail::times_beta(*f_, num_);
    r.den_ = den_;
    r.normalize();
    return r;
  }

  /// Multiplication by beta^{-1}.
  FieldElement div_beta() const {
    const std::size_t m = f_->m;
    const Integer& km = f_->k[m - 1];
    FieldElement r(f_);
    // beta^{-1} = (beta^{m-1} - k1 beta^{m-2} - ... - k_{m-1}) / k_m
    for (std::size_t i = 1; i < m; ++i) r.num_[i - 1] = num_[i] * km;
    const Integer& c0 = num_[0];
    if (c0 != 0) {
      r.num_[m - 1] += c0;
      for (std::size_t j = 1; j < m; ++j) r.num_[m - 1 - j] -= c0 * f_->k[j - 1];
    }
    r.den_ = den_ * km;
    if (r.den_ < 0) {
      r.den_ = -r.den_;
      for (auto& v : r.num_) v = -v;
    }
    r.normalize();
    return r;
  }

  /// Matrix of multiplication by this element in the power basis, scaled by den.
  IntegerMatrix multiplication_matrix_num() const {
    const std::size_t m = f_->m;
    IntegerMatrix mat(m, m);
    IntVector col = num_;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) mat(i, j) = col[i];
      col = detail::times_beta(*f_, col);
    }
    return mat;
  }

  Rational norm() const {
    const Integer d = multiplication_matrix_num().det();
    Integer dm = 1;
    for (std::size_t i = 0; i < f_->m; ++i) dm *= den_;
    return make_rational(d, dm);
  }
  Rational trace() const { return make_rational(multiplication_matrix_num().trace(), den_); }

  /// Integral with |N| = 1.
  bool is_unit() const { return is_integral() && abs(norm()) == 1; }

  FieldElement inverse() const {
    if (is_zero()) throw ZeroDivisionError("inverse of zero");
    const std::size_t m = f_->m;
    const IntegerMatrix mat = multiplication_matrix_num();
    RationalMatrix a(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) a[i][j] = Rational(mat(i, j));
    std::vector<Rational> e(m);
    e[0] = Rational(den_);
    return from_coords_impl(f_, solve_rational(std::move(a), std::move(e)));
  }

  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result = one_like(), base = *this;
    auto n = static_cast<unsigned long>(e);
    while (n) {
      if (n & 1UL) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  FieldElement one_like() const {
    FieldElement r(f_);
    r.num_[0] = 1;
    return r;
  }

  /// Sign of the real embedding (beta itself), decided exactly.
  int sign() const;
  Integer floor() const;
  /// this - floor(this), in [0, 1).
  FieldElement frac() const { return *this - Rational(floor()) * one_like(); }
  /// Enclosure of the real embedding using beta^i bounds accurate to about 2^-bits.
  RealInterval real_interval(unsigned long bits) const;
  long double approx() const;
  /// Enclosure of the image under the j-th embedding (j = 0 is beta) of radius <= 2^-bits.
  ComplexBall embed(std::size_t j, unsigned long bits) const;

  std::size_t hash() const {
    std::size_t h = hash_value(den_);
    for (const auto& v : num_) h ^= hash_value(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// e.g. "(1 + 9b - 4b^2)/22".
  std::string to_string(const std::string& var = "b") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
      const Integer& a = num_[i];
      if (a == 0) continue;
      const Integer mag = abs(a);
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (i == 0 || mag != 1) os << mag;
      if (i >= 1) os << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    if (first) os << "0";
    if (den_ == 1) return os.str();
    return "(" + os.str() + ")/" + den_.get_str();
  }

  /// Coordinates as exact rational strings.
  std::vector<std::string> coord_strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coord(i).get_str());
    return out;
  }

 private:
  friend class NumberField;
  explicit FieldElement(std::shared_ptr<const detail::FieldData> f)
      : f_(std::move(f)), num_(f_->m), den_(1) {}

  static FieldElement from_coords_impl(std::shared_ptr<const detail::FieldData> f,
                                       const std::vector<Rational>& c) {
    FieldElement r(std::move(f));
    Integer l = 1;
    for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    for (std::size_t i = 0; i < c.size(); ++i) r.num_[i] = c[i].get_num() * (l / c[i].get_den());
    r.den_ = l;
    r.normalize();
    return r;
  }

  void check_field(const FieldElement& o) const {
    if (!same_field(o)) throw std::invalid_argument("elements of different fields");
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& v : num_) v = -v;
    }
    if (den_ == 1) return;
    Integer g = den_;
    for (const auto& v : num_) {
      if (g == 1) break;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g != 1) {
      den_ /= g;
      for (auto& v : num_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }

  std::shared_ptr<const detail::FieldData> f_;
  IntVector num_;
  Integer den_;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

/// Q(beta) for a Pisot number beta, with certified root discs, theta, xi0 and D.
class NumberField {
 public:
  NumberField() = default;

  /// Builds the field of x^m = k1 x^{m-1} + ... + km. Throws ReducibleError or
  /// NotPisotError. Non-unit fields are allowed; see is_unit_field().
  static NumberField make(const IntVector& k, unsigned long precision = 128) {
    if (k.size() < 2) throw ParseError("degree must be at least 2");
    auto data = std::make_shared<detail::FieldData>();
    data->k = k;
    data->m = k.size();
    data->g = IntPolynomial::from_recurrence(k);
    data->precision = std::max(precision, 32UL);
    if (auto factor = find_monic_factor(data->g)) {
      throw ReducibleError("polynomial " + data->g.to_string() + " is reducible", factor->to_string());
    }
    const std::size_t m = data->m;
    data->reduce.assign(2 * m - 1, IntVector(m));
    data->reduce[0][0] = 1;
    for (std::size_t e = 1; e < data->reduce.size(); ++e)
      data->reduce[e] = detail::times_beta(*data, data->reduce[e - 1]);

    certify_pisot(*data);
    data->unit = abs(k.back()) == 1;

    NumberField f(data);
    FieldElement gp = f.from_int_poly(data->g.derivative());
    data->D = gp.norm().get_num();
    FieldElement x0 = gp.inverse();
    data->xi0_num = x0.numerators();
    data->xi0_den = x0.denominator();
    return f;
  }

  static NumberField make(const IntPolynomial& monic, unsigned long precision = 128) {
    if (!monic.is_monic()) throw ParseError("polynomial must be monic");
    IntVector k;
    for (int i = monic.degree() - 1; i >= 0; --i) k.push_back(-monic.coeff(static_cast<std::size_t>(i)));
    return make(k, precision);
  }

  bool valid() const { return static_cast<bool>(d_); }
  std::size_t degree() const { return d_->m; }
  const IntVector& k() const { return d_->k; }
  const IntPolynomial& poly() const { return d_->g; }
  bool is_unit_field() const { return d_->unit; }
  unsigned long precision() const { return d_->precision; }
  const Rational& theta() const { return d_->theta; }
  const Integer& discriminant() const { return d_->D; }
  const std::vector<RootDisc>& root_discs() const { return d_->roots; }
  friend bool operator==(const NumberField& a, const NumberField& b) { return detail::same_data(a.d_.get(), b.d_.get()); }
  friend bool operator!=(const NumberField& a, const NumberField& b) { return a.d_ != b.d_; }

  /// Same minimal polynomial (possibly different handles).
  bool same_polynomial(const NumberField& o) const { return d_->k == o.d_->k; }

  FieldElement zero() const { return FieldElement(d_); }
  FieldElement one() const { return from_int(1); }
  FieldElement beta() const {
    FieldElement r(d_);
    r.num_[1] = 1;
    return r;
  }
  FieldElement from_int(const Integer& v) const {
    FieldElement r(d_);
    r.num_[0] = v;
    return r;
  }
  FieldElement from_rational(const Rational& q) const { return q * one(); }
  FieldElement from_coords(const std::vector<Rational>& c) const {
    if (c.size() != d_->m) throw std::invalid_argument("coordinate count does not match degree");
    return FieldElement::from_coords_impl(d_, c);
  }
  FieldElement from_integers(const IntVector& c) const {
    if (c.size() != d_->m) throw std::invalid_argument("coordinate count does not match degree");
    FieldElement r(d_);
    r.num_ = c;
    return r;
  }
  /// Evaluates an integer polynomial at beta.
  FieldElement from_int_poly(const IntPolynomial& p) const {
    FieldElement acc = zero();
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc.mul_beta() + from_int(c[i]);
    return acc;
  }
  FieldElement beta_pow(long e) const {
    FieldElement r = one();
    if (e >= 0) {
      for (long i = 0; i < e; ++i) r = r.mul_beta();
    } else {
      for (long i = 0; i < -e; ++i) r = r.div_beta();
    }
    return r;
  }

  FieldElement xi0() const {
    FieldElement r(d_);
    r.num_ = d_->xi0_num;
    r.den_ = d_->xi0_den;
    return r;
  }
  /// g'(beta).
  FieldElement g_prime() const { return from_int_poly(d_->g.derivative()); }

  /// Membership in xi0 Z[beta].
  bool in_homoclinic_lattice(const FieldElement& x) const { return (x / xi0()).is_integral(); }

  /// Integer part of beta.
  Integer floor_beta() const { return beta().floor(); }

  /// Rational bracket lo < beta < hi of width 2^-bits.
  RealInterval beta_interval(unsigned long bits) const {
    const auto& b = power_bounds(bits);
    const Integer s = pow2(b.bits);
    return {make_rational(b.lo[1], s), make_rational(b.hi[1], s)};
  }

  /// Certified root discs with radius <= 2^-bits, same order as root_discs().
  std::vector<RootDisc> roots(unsigned long bits) const {
    std::lock_guard<std::mutex> lock(d_->mu);
    auto it = d_->root_cache.lower_bound(bits);
    if (it != d_->root_cache.end()) return it->second;
    if (!d_->isolator) d_->isolator.emplace(d_->g);
    auto discs = d_->isolator->isolate(bits);
    // Match the order of the base discs.
    std::vector<RootDisc> ordered(discs.size());
    for (std::size_t i = 0; i < d_->roots.size(); ++i) {
      const auto& base = d_->roots[i];
      bool found = false;
      for (const auto& dsc : discs) {
        const Rational lim = base.radius + dsc.radius;
        if ((dsc.center - base.center).norm2() <= lim * lim) {
          ordered[i] = dsc;
          found = true;
          break;
        }
      }
      if (!found) throw ConvergenceFailure("refined roots do not match base discs");
    }
    d_->root_cache.emplace(bits, ordered);
    return ordered;
  }

  const detail::BetaPowerBounds& power_bounds(unsigned long bits) const {
    std::lock_guard<std::mutex> lock(d_->mu);
    auto it = d_->power_cache.lower_bound(bits);
    if (it != d_->power_cache.end()) return it->second;
    const unsigned long work = bits + 8 + 4 * static_cast<unsigned long>(d_->m);
    const RealInterval br = bracket_beta(work);
    const Integer scale = pow2(work);
    detail::BetaPowerBounds b;
    b.bits = work;
    const Integer blo = floor_div(br.lo.get_num() * scale, br.lo.get_den());
    const Integer bhi = ceil_div(br.hi.get_num() * scale, br.hi.get_den());
    b.lo.push_back(scale);
    b.hi.push_back(scale);
    for (std::size_t i = 1; i < d_->m; ++i) {
      b.lo.push_back(floor_div(b.lo.back() * blo, scale));
      b.hi.push_back(ceil_div(b.hi.back() * bhi, scale));
    }
    return d_->power_cache.emplace(bits, std::move(b)).first->second;
  }

  const detail::FieldData& data() const { return *d_; }

 private:
  friend class FieldElement;
  explicit NumberField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  // Tight bracket around the real root using exact Newton and a sign check.
  RealInterval bracket_beta(unsigned long bits) const {
    const IntPolynomial& g = d_->g;
    const IntPolynomial dg = g.derivative();
    const RootDisc& base = d_->roots[0];
    Rational x = base.center.re;
    const Rational eps = Rational(1) / Rational(pow2(bits));
    Rational lo = base.center.re - base.radius, hi = base.center.re + base.radius;
    for (int iter = 0; iter < 200; ++iter) {
      if (hi - lo <= 2 * eps) break;
      const Rational d = dg.eval(x);
      if (sgn(d) != 0) {
        const Rational next = dyadic_round(x - g.eval(x) / d, bits + 8);
        const Rational a = next - eps / 2, b = next + eps / 2;
        if (a > lo && b < hi && sgn(g.eval(a)) * sgn(g.eval(b)) < 0) {
          lo = a;
          hi = b;
          x = next;
          continue;
        }
        x = next;
      }
      // Bisection fallback keeps the bracket valid.
      const Rational mid = (lo + hi) / 2;
      const int sm = sgn(g.eval(mid));
      if (sm == 0) return {mid, mid};
      if (sm == sgn(g.eval(lo))) lo = mid; else hi = mid;
      if (!(x > lo && x < hi)) x = (lo + hi) / 2;
    }
    return {lo, hi};
  }

  static void certify_pisot(detail::FieldData& d) {
    RootIsolator iso(d.g);
    const bool reciprocal_obstruction =
        d.g.is_reciprocal() && (d.m > 2 || abs(d.k[0]) < 3);
    unsigned long bits = d.precision;
    while (true) {
      auto discs = iso.isolate(bits);
      std::vector<int> cls(discs.size());  // -1 inside, +1 outside, 0 undecided
      bool undecided = false;
      for (std::size_t i = 0; i < discs.size(); ++i) {
        const Rational n2 = discs[i].center.norm2();
        const Rational& r = discs[i].radius;
        if (r < 1 && n2 < (1 - r) * (1 - r)) cls[i] = -1;
        else if (n2 > (1 + r) * (1 + r)) cls[i] = 1;
        else undecided = true;
      }
      auto reject = [&](std::size_t i, const std::string& why) {
        throw NotPisotError(why + " for " + d.g.to_string(), discs[i].box_string());
      };
      if (reciprocal_obstruction) {
        for (std::size_t i = 0; i < discs.size(); ++i)
          if (cls[i] != -1 && !(i == 0 && discs[0].center.is_real() && sgn(discs[0].center.re) > 0))
            reject(i, "reciprocal polynomial has a conjugate of modulus >= 1");
        reject(0, "reciprocal polynomial has a conjugate of modulus >= 1");
      }
      if (undecided) {
        if (bits >= d.precision_cap) {
          for (std::size_t i = 0; i < discs.size(); ++i)
            if (cls[i] == 0) reject(i, "root too close to the unit circle");
        }
        bits *= 2;
        continue;
      }
      std::size_t outside = 0;
      for (int c : cls) outside += (c == 1);
      if (outside == 0) reject(0, "no root of modulus > 1");
      // Real roots come first, sorted decreasingly, so beta must be discs[0].
      if (!(cls[0] == 1 && discs[0].center.is_real() && sgn(discs[0].center.re) > 0))
        for (std::size_t i = 0; i < discs.size(); ++i)
          if (cls[i] == 1) reject(i, "dominant root is not a positive real number");
      for (std::size_t i = 1; i < discs.size(); ++i)
        if (cls[i] == 1) reject(i, "conjugate of modulus > 1");
      d.roots = discs;
      Rational theta = 0;
      for (std::size_t i = 1; i < discs.size(); ++i)
        theta = std::max(theta, dyadic_ceil(discs[i].modulus_upper(bits + 8), bits));
      d.theta = theta;
      d.root_cache.emplace(bits, discs);
      d.isolator.emplace(std::move(iso));
      return;
    }
  }

  std::shared_ptr<const detail::FieldData> d_;
};

inline NumberField FieldElement::field() const { return NumberField(f_); }

inline RealInterval FieldElement::real_interval(unsigned long bits) const {
  const NumberField f(f_);
  const auto& b = f.power_bounds(bits + 4 + static_cast<unsigned long>(mpz_sizeinbase(den_.get_mpz_t(), 2)));
  Integer lo = 0, hi = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const Integer& c = num_[i];
    if (c > 0) {
      lo += c * b.lo[i];
      hi += c * b.hi[i];
    } else if (c < 0) {
      lo += c * b.hi[i];
      hi += c * b.lo[i];
    }
  }
  const Integer s = pow2(b.bits) * den_;
  return {make_rational(lo, s), make_rational(hi, s)};
}

inline int FieldElement::sign() const {
  if (is_zero()) return 0;
  unsigned long bits = f_->precision;
  while (true) {
    const RealInterval iv = real_interval(bits);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
    if (bits >= f_->precision_cap) throw PrecisionCapExceeded("sign refinement cap reached");
    bits *= 2;
  }
}

inline Integer FieldElement::floor() const {
  if (is_rational()) return floor_div(num_[0], den_);
  unsigned long bits = f_->precision;
  while (true) {
    const RealInterval iv = real_interval(bits);
    const Integer a = floor_q(iv.lo), b = floor_q(iv.hi);
    if (a == b) return a;
    if (bits >= f_->precision_cap) throw PrecisionCapExceeded("floor refinement cap reached");
    bits *= 2;
  }
}

inline long double FieldElement::approx() const {
  if (is_rational()) return to_long_double(coord(0));
  unsigned long bits = 80;
  while (true) {
    const RealInterval iv = real_interval(bits);
    const Rational mid = (iv.lo + iv.hi) / 2;
    Rational scale = abs(mid);
    if (scale < 1) scale = 1;
    if (iv.width() * Rational(pow2(70)) <= scale || bits >= f_->precision_cap)
      return to_long_double(mid);
    bits *= 2;
  }
}

inline ComplexBall FieldElement::embed(std::size_t j, unsigned long bits) const {
  const NumberField f(f_);
  if (j >= f_->m) throw std::out_of_range("root index out of range");
  if (is_rational()) return {ComplexQ(coord(0)), Rational(0)};
  const Rational target = Rational(1) / Rational(pow2(bits));
  unsigned long work = bits + 8;
  while (true) {
    const auto discs = f.roots(work);
    const RootDisc& d = discs[j];
    ComplexQ acc;
    for (std::size_t i = num_.size(); i-- > 0;) acc = acc * d.center + ComplexQ(coord(i));
    // |a(z) - a(c)| <= sum |a_i| i rho^{i-1} R with rho >= |z|, |c|.
    const Rational rho = d.modulus_upper(work + 8);
    Rational err = 0, rp = 1;
    for (std::size_t i = 1; i < num_.size(); ++i) {
      err += abs(coord(i)) * Rational(static_cast<unsigned long>(i)) * rp;
      rp *= rho;
    }
    err *= d.radius;
    const ComplexQ c = detail::round_dyadic(acc, bits + 4);
    const Rational rerr = err + Rational(1) / Rational(pow2(bits + 3));
    if (rerr <= target) return {c, rerr};
    if (work >= f_->precision_cap) throw PrecisionCapExceeded("embedding refinement cap reached");
    work *= 2;
  }
}

inline Ordering compare(const FieldElement& a, const FieldElement& b) {
  if (a == b) return Ordering::Equal;
  const int s = (a - b).sign();
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}
inline bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Less; }
inline bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Greater; }
inline bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) != Ordering::Greater; }
inline bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) != Ordering::Less; }

}  // namespace pisot
