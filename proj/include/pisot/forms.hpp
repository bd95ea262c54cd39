#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pisot/coding.hpp"
#include "pisot/error.hpp"
#include "pisot/linalg.hpp"
#include "pisot/number_field.hpp"
#include "pisot/polynomial.hpp"

namespace pisot {

/// Recurrence coefficients k of the characteristic polynomial of M.
inline IntVector recurrence_of(const IntegerMatrix& M) {
  const IntPolynomial p = M.char_poly();
  IntVector k;
  for (int i = p.degree() - 1; i >= 0; --i) k.push_back(-p.coeff(static_cast<std::size_t>(i)));
  return k;
}

inline void check_char_poly(const IntegerMatrix& M, const IntVector& k) {
  if (!M.is_square() || M.rows() != k.size()) throw CharPolyMismatchError("matrix size does not match the degree");
  if (recurrence_of(M) != k) throw CharPolyMismatchError("characteristic polynomial of M differs from g");
}

/// Columns Mn, (M^2 - k1 M)n, ..., (M^{m-1} - k1 M^{m-2} - ... - k_{m-2} M)n, k_m n.
inline IntegerMatrix b_matrix(const IntegerMatrix& M, const IntVector& k, const IntVector& n) {
  check_char_poly(M, k);
  const std::size_t m = k.size();
  if (n.size() != m) throw std::invalid_argument("vector length does not match the matrix");
  std::vector<IntVector> cols;
  // c_1 = M n, c_{j+1} = M c_j - k_j M n.
  const IntVector mn = M * n;
  IntVector c = mn;
  for (std::size_t j = 1; j < m; ++j) {
    cols.push_back(c);
    IntVector next = M * c;
    for (std::size_t i = 0; i < m; ++i) next[i] -= k[j - 1] * mn[i];
    c = std::move(next);
  }
  IntVector last(m);
  for (std::size_t i = 0; i < m; ++i) last[i] = k[m - 1] * n[i];
  cols.push_back(last);
  return IntegerMatrix::from_columns(cols);
}

inline IntegerMatrix b_matrix(const IntegerMatrix& M, const IntVector& n) { return b_matrix(M, recurrence_of(M), n); }

/// (n, Mn, ..., M^{m-1} n).
inline IntegerMatrix krylov_matrix(const IntegerMatrix& M, const IntVector& n) {
  std::vector<IntVector> cols{n};
  for (std::size_t j = 1; j < M.rows(); ++j) cols.push_back(M * cols.back());
  return IntegerMatrix::from_columns(cols);
}

/// f_M(n) = det B_M(n), with no sign normalization.
inline Integer form_eval(const IntegerMatrix& M, const IntVector& n) { return b_matrix(M, n).det(); }

struct Monomial {
  std::vector<int> exponents;
  Integer coefficient;
};

/// Exponent tuples of degree d in m variables, in lexicographically decreasing order.
inline std::vector<std::vector<int>> monomial_exponents(std::size_t m, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == m) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  if (m > 0) rec(0, d);
  return out;
}

namespace detail {

inline Integer monomial_value(const std::vector<int>& e, const IntVector& v) {
  Integer r = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int j = 0; j < e[i]; ++j) r *= v[i];
  return r;
}

// Integer points on which degree-m forms are determined (unisolvent for the Veronese basis).
inline std::vector<IntVector> unisolvent_points(std::size_t m) {
  const auto mons = monomial_exponents(m, static_cast<int>(m));
  std::vector<IntVector> pts;
  std::vector<std::vector<Rational>> echelon;  // reduced rows
  std::vector<std::size_t> pivots;
  IntVector v(m);
  const long lo = -1, hi = static_cast<long>(m);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (pts.size() == mons.size()) return true;
    if (i == m) {
      std::vector<Rational> row;
      for (const auto& e : mons) row.push_back(Rational(monomial_value(e, v)));
      for (std::size_t r = 0; r < echelon.size(); ++r) {
        const Rational f = row[pivots[r]];
        if (sgn(f) == 0) continue;
        for (std::size_t c = 0; c < row.size(); ++c) row[c] -= f * echelon[r][c];
      }
      std::size_t p = 0;
      while (p < row.size() && sgn(row[p]) == 0) ++p;
      if (p == row.size()) return false;
      const Rational d = row[p];
      for (auto& x : row) x /= d;
      echelon.push_back(row);
      pivots.push_back(p);
      pts.push_back(v);
      return pts.size() == mons.size();
    }
    for (long a = lo; a <= hi; ++a) {
      v[i] = a;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
  return pts;
}

}  // namespace detail

/// Monomial expansion of f_M by exact interpolation on a unisolvent point set.
inline std::vector<Monomial> form_expand(const IntegerMatrix& M) {
  const std::size_t m = M.rows();
  const IntVector k = recurrence_of(M);
  const auto mons = monomial_exponents(m, static_cast<int>(m));
  const auto pts = detail::unisolvent_points(m);
  RationalMatrix a;
  std::vector<Rational> b;
  for (const auto& p : pts) {
    std::vector<Rational> row;
    for (const auto& e : mons) row.push_back(Rational(detail::monomial_value(e, p)));
    a.push_back(row);
    b.push_back(Rational(b_matrix(M, k, p).det()));
  }
  const auto x = solve_rational(a, b);
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < mons.size(); ++i) {
    if (x[i].get_den() != 1) throw Error("form coefficients are not integral");
    if (sgn(x[i]) != 0) out.push_back({mons[i], x[i].get_num()});
  }
  return out;
}

inline Integer eval_monomials(const std::vector<Monomial>& f, const IntVector& v) {
  Integer s = 0;
  for (const auto& t : f) s += t.coefficient * detail::monomial_value(t.exponents, v);
  return s;
}

/// Renders a form in x, y, z (m <= 3) or x1..xm.
inline std::string form_to_string(const std::vector<Monomial>& f) {
  if (f.empty()) return "0";
  const std::size_t m = f.front().exponents.size();
  auto var = [&](std::size_t i) {
    if (m <= 3) return std::string(1, "xyz"[i]);
    return "x" + std::to_string(i + 1);
  };
  std::string s;
  for (const auto& t : f) {
    const Integer c = t.coefficient;
    std::string mon;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.exponents[i] == 0) continue;
      if (!mon.empty() && m > 3) mon += "*";
      mon += var(i);
      if (t.exponents[i] > 1) mon += "^" + std::to_string(t.exponents[i]);
    }
    const Integer a = abs(c);
    std::string body = (a == 1 && !mon.empty()) ? mon : a.get_str() + (mon.empty() ? "" : (m > 3 ? "*" : "") + mon);
    if (s.empty()) s = (sgn(c) < 0 ? "-" : "") + body;
    else s += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return s;
}

struct UnimodularSolution {
  IntVector n;
  Integer value;
};

/// All n with max|n_i| <= H and |f_M(n)| = 1, in lexicographic order of n.
/// Cost is (2H+1)^m form evaluations.
inline std::vector<UnimodularSolution> search_unimodular(const IntegerMatrix& M, long H, bool first_only = false) {
  const std::size_t m = M.rows();
  std::vector<UnimodularSolution> out;
  if (H < 0) return out;
  const auto f = form_expand(M);
  // Fast path: coefficients and values fit comfortably in 128-bit arithmetic.
  bool fast = true;
  for (const auto& t : f) fast = fast && t.coefficient.fits_slong_p() && abs(t.coefficient) < (Integer(1) << 40);
  fast = fast && H <= 100000 && m <= 4;
  std::vector<long> v(m, -H);
  std::vector<std::pair<std::vector<int>, __int128>> terms;
  for (const auto& t : f) terms.push_back({t.exponents, static_cast<__int128>(t.coefficient.get_si())});
  while (true) {
    bool hit = false;
    Integer value;
    if (fast) {
      __int128 s = 0;
      for (const auto& [e, c] : terms) {
        __int128 p = c;
        for (std::size_t i = 0; i < m; ++i)
          for (int j = 0; j < e[i]; ++j) p *= v[i];
        s += p;
      }
      hit = s == 1 || s == -1;
      value = static_cast<long>(s);
    } else {
      IntVector n(v.begin(), v.end());
      value = eval_monomials(f, n);
      hit = abs(value) == 1;
    }
    if (hit) {
      out.push_back({IntVector(v.begin(), v.end()), value});
      if (first_only) return out;
    }
    std::size_t i = m;
    while (i-- > 0) {
      if (++v[i] <= H) break;
      v[i] = -H;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

/// B = B_M(n) with B M_beta = M B and |det B| = 1.
inline IntegerMatrix conjugacy_certificate(const IntegerMatrix& M, const IntVector& n) {
  const IntVector k = recurrence_of(M);
  const IntegerMatrix B = b_matrix(M, k, n);
  const Integer d = B.det();
  if (abs(d) != 1) throw NotUnimodularError("|f_M(n)| = " + Integer(abs(d)).get_str() + ", not 1");
  IntegerMatrix C(k.size(), k.size());
  for (std::size_t j = 0; j < k.size(); ++j) C(0, j) = k[j];
  for (std::size_t i = 1; i < k.size(); ++i) C(i, i - 1) = 1;
  if (B * C != M * B) throw Error("certificate fails B M_beta = M B");
  return B;
}

/// True iff n, Mn, ..., M^{m-1}n span Z^m.
inline bool spans_lattice(const IntegerMatrix& M, const IntVector& n) { return abs(krylov_matrix(M, n).det()) == 1; }

/// N_1..N_{n_max}: the determinant of the coefficients of beta^n, beta^{2n}, ...,
/// beta^{(m-1)n} on beta^{m-1}, ..., beta (the constant coefficient cancels against n).
inline std::vector<Integer> nn_sequence(const IntVector& k, std::size_t n_max) {
  const std::size_t m = k.size();
  // Coordinates of beta^e in the power basis, by the recurrence.
  auto times_beta = [&](const IntVector& c) {
    IntVector out(m);
    for (std::size_t i = 0; i + 1 < m; ++i) out[i + 1] = c[i];
    for (std::size_t j = 0; j < m; ++j) out[j] += c[m - 1] * k[m - 1 - j];
    return out;
  };
  std::vector<IntVector> pw{IntVector(m)};
  pw[0][0] = 1;
  const std::size_t top = n_max * (m - 1);
  for (std::size_t e = 1; e <= top; ++e) pw.push_back(times_beta(pw.back()));
  std::vector<Integer> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    IntegerMatrix a(m - 1, m - 1);
    for (std::size_t r = 1; r < m; ++r)
      for (std::size_t j = 1; j < m; ++j) a(r - 1, j - 1) = pw[r * n][m - j];
    out.push_back(a.det());
  }
  return out;
}

inline std::vector<Integer> nn_sequence(const NumberField& field, std::size_t n_max) {
  return nn_sequence(field.k(), n_max);
}

enum class PowerConjugacy { Conjugate, NotConjugate, Unknown };

inline std::string to_string(PowerConjugacy c) {
  switch (c) {
    case PowerConjugacy::Conjugate: return "Conjugate";
    case PowerConjugacy::NotConjugate: return "NotConjugate";
    default: return "Unknown";
  }
}

struct PowerClassification {
  PowerConjugacy result = PowerConjugacy::Unknown;
  Integer nn;
  std::string reason;
  std::optional<UnimodularSolution> witness;
};

/// M^n is conjugate to its companion matrix iff M is and |N_n| = 1.
inline PowerClassification classify_power_conjugacy(const IntegerMatrix& M, std::size_t n, long H = 100) {
  PowerClassification c;
  if (n == 0) throw std::invalid_argument("power must be positive");
  const IntVector k = recurrence_of(M);
  c.nn = nn_sequence(k, n).back();
  if (abs(c.nn) != 1) {
    c.result = PowerConjugacy::NotConjugate;
    c.reason = "|N_" + std::to_string(n) + "| = " + Integer(abs(c.nn)).get_str();
    return c;
  }
  auto sol = search_unimodular(M, H, true);
  if (sol.empty()) {
    c.result = PowerConjugacy::Unknown;
    c.reason = "|N_n| = 1 but f_M has no value +-1 up to height " + std::to_string(H);
    return c;
  }
  c.result = PowerConjugacy::Conjugate;
  c.witness = sol.front();
  c.reason = "|N_n| = 1 and M is conjugate to its companion matrix";
  return c;
}

/// Checks f_{M2}(A v) = det A f_{M1}(v) for A M1 = M2 A, on a set of points that
/// determines degree-m forms.
inline bool conjugation_covariance_check(const IntegerMatrix& M1, const IntegerMatrix& M2, const IntegerMatrix& A) {
  if (A * M1 != M2 * A) throw NotConjugatePairError("A M1 != M2 A");
  const Integer d = A.det();
  if (abs(d) != 1) throw NotConjugatePairError("A is not in GL(m, Z)");
  const IntVector k1 = recurrence_of(M1), k2 = recurrence_of(M2);
  if (k1 != k2) throw NotConjugatePairError("M1 and M2 have different characteristic polynomials");
  for (const auto& v : detail::unisolvent_points(M1.rows()))
    if (b_matrix(M2, k2, A * v).det() != d * b_matrix(M1, k1, v).det()) return false;
  return true;
}

struct FormReport {
  IntegerMatrix M;
  std::vector<Monomial> expansion;
  long height = 0;
  std::vector<UnimodularSolution> solutions;
  std::optional<IntegerMatrix> certificate;
  std::vector<Integer> nn;
  std::optional<PowerClassification> classification;
  std::size_t classified_power = 0;
};

}  // namespace pisot
