#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pisot/rational.hpp"

namespace pisot {

/// Dense univariate polynomial with integer coefficients, lowest degree first.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(IntVector coeffs) : c_(std::move(coeffs)) { trim(); }

  /// x^m - k1 x^{m-1} - ... - km.
  static IntPolynomial from_recurrence(const IntVector& k) {
    IntVector c(k.size() + 1);
    c[k.size()] = 1;
    for (std::size_t i = 0; i < k.size(); ++i) c[k.size() - 1 - i] = -k[i];
    return IntPolynomial(std::move(c));
  }

  static IntPolynomial monomial(std::size_t d, const Integer& a = 1) {
    IntVector c(d + 1);
    c[d] = a;
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const IntVector& coeffs() const { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  template <class T>
  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
    return acc;
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    IntVector d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    IntVector c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    IntVector c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntVector c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// Division by a monic divisor. Returns {quotient, remainder}.
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& d) const {
    IntVector r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {IntPolynomial(), *this};
    IntVector q(static_cast<std::size_t>(degree() - dd + 1));
    for (int i = degree(); i >= dd; --i) {
      const Integer t = r[static_cast<std::size_t>(i)];
      if (t == 0) continue;
      q[static_cast<std::size_t>(i - dd)] = t;
      for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(i - dd + j)] -= t * d.c_[static_cast<std::size_t>(j)];
    }
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
  }

  /// True when the polynomial equals its reversal up to sign.
  bool is_reciprocal() const {
    const std::size_t n = c_.size();
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (c_[i] != c_[n - 1 - i]) plus = false;
      if (c_[i] != -c_[n - 1 - i]) minus = false;
    }
    return plus || minus;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Integer& a = c_[i];
      if (a == 0) continue;
      Integer mag = abs(a);
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
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  IntVector c_;
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  if (n == 0) return {};
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Monic h of degree d with h(x_i) = v_i, if it has integer coefficients.
inline std::optional<IntPolynomial> monic_interpolate(const std::vector<Integer>& xs,
                                                      const std::vector<Integer>& vs) {
  const std::size_t d = xs.size();
  // r(x) = h(x) - x^d has degree < d; Lagrange over the rationals.
  std::vector<Rational> r(d);
  for (std::size_t i = 0; i < d; ++i) {
    Integer xd = 1;
    for (std::size_t t = 0; t < d; ++t) xd *= xs[i];
    const Rational target = Rational(vs[i] - xd);
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * Rational(xs[j]);
      }
      basis = std::move(next);
      denom *= Rational(xs[i] - xs[j]);
    }
    for (std::size_t t = 0; t < basis.size(); ++t) r[t] += target * basis[t] / denom;
  }
  IntVector c(d + 1);
  for (std::size_t t = 0; t < d; ++t) {
    r[t].canonicalize();
    if (r[t].get_den() != 1) return std::nullopt;
    c[t] = r[t].get_num();
  }
  c[d] = 1;
  return IntPolynomial(std::move(c));
}

}  // namespace detail

/// Searches for a monic factor of degree 1..deg/2 (Kronecker's method).
/// Returns the factor if g is reducible, std::nullopt otherwise.
inline std::optional<IntPolynomial> find_monic_factor(const IntPolynomial& g) {
  const int m = g.degree();
  if (m <= 1) return std::nullopt;
  if (g.coeff(0) == 0) return IntPolynomial::monomial(1);

  // Evaluation points sorted by the number of divisors of g(x).
  std::vector<std::pair<std::size_t, Integer>> pts;
  for (long x = -12; x <= 12; ++x) {
    const Integer v = g.eval(Integer(x));
    if (v == 0) return IntPolynomial(IntVector{Integer(-x), Integer(1)});
    pts.emplace_back(detail::positive_divisors(v).size(), Integer(x));
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  for (int d = 1; d <= m / 2; ++d) {
    std::vector<Integer> xs;
    std::vector<std::vector<Integer>> choices;
    for (int i = 0; i < d; ++i) {
      xs.push_back(pts[static_cast<std::size_t>(i)].second);
      std::vector<Integer> opts;
      for (const Integer& q : detail::positive_divisors(g.eval(xs.back()))) {
        opts.push_back(q);
        opts.push_back(-q);
      }
      choices.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Integer> vs(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) vs[static_cast<std::size_t>(i)] = choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
      if (auto h = detail::monic_interpolate(xs, vs)) {
        if (h->degree() == d && g.divmod_monic(*h).second.is_zero()) return h;
      }
      std::size_t pos = 0;
      while (pos < idx.size()) {
        if (++idx[pos] < choices[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
  }
  return std::nullopt;
}

inline bool is_irreducible(const IntPolynomial& g) { return !find_monic_factor(g).has_value(); }

}  // namespace pisot
