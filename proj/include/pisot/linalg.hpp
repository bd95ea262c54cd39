#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pisot/error.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/rational.hpp"

namespace pisot {

/// Square or rectangular matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  explicit IntegerMatrix(const std::vector<IntVector>& rows) {
    r_ = rows.size();
    c_ = rows.empty() ? 0 : rows[0].size();
    for (const auto& row : rows) {
      if (row.size() != c_) throw ParseError("ragged matrix rows");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = rows.size() ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
      if (row.size() != c_) throw ParseError("ragged matrix rows");
      for (long v : row) a_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose j-th column is cols[j].
  static IntegerMatrix from_columns(const std::vector<IntVector>& cols) {
    const std::size_t n = cols.empty() ? 0 : cols[0].size();
    IntegerMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntVector row(std::size_t i) const { return IntVector(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)); }

  friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const IntegerMatrix& x, const IntegerMatrix& y) { return !(x == y); }

  friend IntegerMatrix operator+(const IntegerMatrix& x, const IntegerMatrix& y) {
    IntegerMatrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }
  friend IntegerMatrix operator-(const IntegerMatrix& x, const IntegerMatrix& y) {
    IntegerMatrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }
  friend IntegerMatrix operator*(const Integer& s, const IntegerMatrix& x) {
    IntegerMatrix z = x;
    for (auto& v : z.a_) v *= s;
    return z;
  }
  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    IntegerMatrix z(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const Integer& v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.c_; ++j) z(i, j) += v * y(k, j);
      }
    return z;
  }
  friend IntVector operator*(const IntegerMatrix& x, const IntVector& v) {
    if (x.c_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    IntVector out(x.r_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) out[i] += x(i, k) * v[k];
    return out;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntegerMatrix pow(unsigned long e) const {
    IntegerMatrix result = identity(r_), base = *this;
    while (e) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < r_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Fraction-free Gaussian elimination.
  Integer det() const {
    if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = r_;
    if (n == 0) return 1;
    std::vector<Integer> a = a_;
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && at(p, k) == 0) ++p;
        if (p == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        }
        at(i, k) = 0;
      }
      prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
  }

  /// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence.
  IntPolynomial char_poly() const {
    if (!is_square()) throw std::invalid_argument("char poly of non-square matrix");
    const std::size_t n = r_;
    IntVector c(n + 1);
    c[n] = 1;
    IntegerMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
      IntegerMatrix next = (*this) * mk;
      for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
      mk = std::move(next);
      const Integer t = ((*this) * mk).trace();
      c[n - k] = -t / static_cast<unsigned long>(k);
    }
    return IntPolynomial(std::move(c));
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < r_; ++i) {
      if (i) os << "/";
      for (std::size_t j = 0; j < c_; ++j) {
        if (j) os << ",";
        os << (*this)(i, j);
      }
    }
    return os.str();
  }

  std::vector<IntVector> to_rows() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
    return out;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Integer> a_;
};

/// Dense rational matrix operations, used for field inversion and small solves.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Solves A x = b exactly. Throws ZeroDivisionError if A is singular.
inline std::vector<Rational> solve_rational(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a[p][k]) == 0) ++p;
    if (p == n) throw ZeroDivisionError("singular linear system");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a[i][k]) == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Inverse of a unimodular integer matrix (|det| = 1).
inline IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  const Integer d = m.det();
  if (abs(d) != 1) throw NotUnimodularError("matrix is not unimodular, det = " + d.get_str());
  IntegerMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RationalMatrix a(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a[r][c] = Rational(m(r, c));
    std::vector<Rational> e(n);
    e[j] = 1;
    auto x = solve_rational(std::move(a), std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i].get_num();
  }
  return inv;
}

}  // namespace pisot
