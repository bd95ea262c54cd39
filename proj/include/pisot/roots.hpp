#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pisot/error.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/rational.hpp"

namespace pisot {

/// Complex number with exact rational parts.
struct ComplexQ {
  Rational re, im;

  ComplexQ() = default;
  ComplexQ(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  friend ComplexQ operator+(const ComplexQ& a, const ComplexQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexQ operator-(const ComplexQ& a, const ComplexQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexQ operator*(const ComplexQ& a, const ComplexQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexQ operator/(const ComplexQ& a, const ComplexQ& b) {
    const Rational n = b.norm2();
    if (sgn(n) == 0) throw ZeroDivisionError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  ComplexQ conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  bool is_real() const { return sgn(im) == 0; }

  std::complex<long double> approx() const { return {to_long_double(re), to_long_double(im)}; }
};

/// A closed disc {z : |z - center| <= radius} known to contain exactly one root.
struct RootDisc {
  ComplexQ center;
  Rational radius;

  /// Upper bound on |z| over the disc.
  Rational modulus_upper(unsigned long bits) const {
    return sqrt_upper(center.norm2(), bits) + radius;
  }

  std::string box_string() const {
    std::ostringstream os;
    os.precision(12);
    const long double r = to_long_double(radius);
    os << "[" << to_long_double(center.re) - r << ", " << to_long_double(center.re) + r << "] x i["
       << to_long_double(center.im) - r << ", " << to_long_double(center.im) + r << "]";
    return os.str();
  }
};

namespace detail {

inline ComplexQ eval_complex(const IntPolynomial& g, const ComplexQ& z) {
  ComplexQ acc;
  const auto& c = g.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + ComplexQ(Rational(c[i]));
  return acc;
}

inline ComplexQ round_dyadic(const ComplexQ& z, unsigned long bits) {
  return {dyadic_round(z.re, bits), dyadic_round(z.im, bits)};
}

inline std::vector<std::complex<long double>> aberth(const IntPolynomial& g) {
  using C = std::complex<long double>;
  const int m = g.degree();
  const auto& c = g.coeffs();
  long double bound = 0;
  for (int i = 0; i < m; ++i) bound = std::max(bound, std::fabs(to_long_double(c[static_cast<std::size_t>(i)])));
  bound += 1;
  std::vector<long double> cl(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) cl[i] = to_long_double(c[i]);
  auto eval = [&](C z, C& dp) {
    C p = 0;
    dp = 0;
    for (std::size_t i = cl.size(); i-- > 0;) {
      dp = dp * z + p;
      p = p * z + cl[i];
    }
    return p;
  };
  std::vector<C> z(static_cast<std::size_t>(m));
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int k = 0; k < m; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(bound * 0.9L, 2 * pi * k / m + 0.4L);
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      C dp;
      C p = eval(z[k], dp);
      if (p == C(0)) continue;
      C ratio = p / dp;
      C s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += C(1) / (z[k] - z[j]);
      C step = ratio / (C(1) - ratio * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

}  // namespace detail

/// Certified isolation of all complex roots of a squarefree integer polynomial.
/// Real roots carry an exactly real center; complex roots come in exact conjugate pairs.
/// Roots are ordered: real roots by decreasing value, then complex roots by decreasing
/// modulus with positive imaginary part first.
class RootIsolator {
 public:
  explicit RootIsolator(IntPolynomial g) : g_(std::move(g)), dg_(g_.derivative()) {
    if (g_.degree() < 1) throw std::invalid_argument("root isolation of a constant");
    const auto approx = detail::aberth(g_);
    const long double tiny = 1e-12L;
    std::vector<bool> used(approx.size(), false);
    for (std::size_t i = 0; i < approx.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      const auto z = approx[i];
      if (std::fabs(z.imag()) <= tiny * std::max(1.0L, std::abs(z))) {
        centers_.push_back(ComplexQ(Rational(static_cast<double>(z.real()))));
        continue;
      }
      // Pair with the closest unused approximation to the conjugate.
      std::size_t best = approx.size();
      long double bd = 0;
      for (std::size_t j = 0; j < approx.size(); ++j) {
        if (used[j]) continue;
        const long double d = std::abs(approx[j] - std::conj(z));
        if (best == approx.size() || d < bd) {
          best = j;
          bd = d;
        }
      }
      if (best == approx.size()) throw ConvergenceFailure("unpaired complex root approximation");
      used[best] = true;
      const long double im = std::fabs(z.imag());
      ComplexQ c(Rational(static_cast<double>(z.real())), Rational(static_cast<double>(im)));
      centers_.push_back(c);
      centers_.push_back(c.conj());
    }
    sort_centers();
  }

  int degree() const { return g_.degree(); }
  const IntPolynomial& poly() const { return g_; }

  /// Refines all centers by exact Newton steps and returns certified discs whose
  /// radii are at most about 2^-bits. Throws ConvergenceFailure if the discs cannot
  /// be separated below max_bits.
  std::vector<RootDisc> isolate(unsigned long bits, unsigned long max_bits = 1UL << 14) {
    unsigned long work = std::max(bits, 64UL);
    while (work <= max_bits) {
      refine(work + 8);
      auto discs = certify(work + 8);
      if (discs && all_small(*discs, bits)) return *discs;
      work *= 2;
    }
    throw ConvergenceFailure("root discs could not be separated");
  }

 private:
  void sort_centers() {
    std::vector<ComplexQ> real, cplx;
    for (const auto& c : centers_) (c.is_real() ? real : cplx).push_back(c);
    std::sort(real.begin(), real.end(), [](const ComplexQ& a, const ComplexQ& b) { return a.re > b.re; });
    std::vector<ComplexQ> upper;
    for (const auto& c : cplx)
      if (sgn(c.im) > 0) upper.push_back(c);
    std::sort(upper.begin(), upper.end(), [](const ComplexQ& a, const ComplexQ& b) {
      const int c = cmp(a.norm2(), b.norm2());
      if (c != 0) return c > 0;
      return a.re > b.re;
    });
    centers_ = real;
    for (const auto& c : upper) {
      centers_.push_back(c);
      centers_.push_back(c.conj());
    }
  }

  void refine(unsigned long bits) {
    const Rational eps2 = Rational(1) / Rational(pow2(2 * bits));
    for (std::size_t i = 0; i < centers_.size(); ++i) {
      ComplexQ& z = centers_[i];
      if (sgn(z.im) < 0) continue;  // handled with its partner
      for (int iter = 0; iter < 64; ++iter) {
        const ComplexQ d = detail::eval_complex(dg_, z);
        if (sgn(d.norm2()) == 0) break;
        const ComplexQ step = detail::eval_complex(g_, z) / d;
        ComplexQ next = detail::round_dyadic(z - step, bits);
        if (z.is_real()) next.im = 0;
        z = next;
        if (step.norm2() < eps2) break;
      }
      if (!z.is_real() && i + 1 < centers_.size()) centers_[i + 1] = z.conj();
    }
  }

  std::optional<std::vector<RootDisc>> certify(unsigned long bits) const {
    const std::size_t m = centers_.size();
    std::vector<RootDisc> discs(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational prod = 1;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const Rational d = (centers_[i] - centers_[j]).norm2();
        if (sgn(d) == 0) return std::nullopt;
        prod *= d;
      }
      const Rational r2 = Rational(static_cast<unsigned long>(m * m)) *
                          detail::eval_complex(g_, centers_[i]).norm2() / prod;
      discs[i] = {centers_[i], dyadic_ceil(sqrt_upper(r2, bits + 16), bits + 16)};
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const Rational sum = discs[i].radius + discs[j].radius;
        if ((centers_[i] - centers_[j]).norm2() <= sum * sum) return std::nullopt;
      }
    return discs;
  }

  static bool all_small(const std::vector<RootDisc>& discs, unsigned long bits) {
    const Rational lim = Rational(1) / Rational(pow2(bits));
    for (const auto& d : discs)
      if (d.radius > lim) return false;
    return true;
  }

  IntPolynomial g_, dg_;
  std::vector<ComplexQ> centers_;
};

}  // namespace pisot
