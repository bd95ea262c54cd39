#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pisot/error.hpp"
#include "pisot/number_field.hpp"
#include "pisot/rational.hpp"

namespace pisot {

using Digit = int;
using Word = std::vector<Digit>;

/// Eventually periodic digit sequence (e_1, e_2, ...). An empty period means
/// the tail is 0^infinity.
struct Expansion {
  Word preperiod;
  Word period;

  Expansion() = default;
  Expansion(Word pre, Word per) : preperiod(std::move(pre)), period(std::move(per)) { canonicalize(); }

  static Expansion finite(Word w) { return Expansion(std::move(w), {}); }
  static Expansion purely_periodic(Word w) { return Expansion({}, std::move(w)); }

  bool is_finite() const { return period.empty(); }
  bool is_purely_periodic() const { return preperiod.empty() && !period.empty(); }
  bool is_zero() const { return preperiod.empty() && period.empty(); }

  /// Digit e_n, n >= 1.
  Digit digit(std::size_t n) const {
    if (n == 0) throw std::out_of_range("digits are indexed from 1");
    if (n <= preperiod.size()) return preperiod[n - 1];
    if (period.empty()) return 0;
    return period[(n - 1 - preperiod.size()) % period.size()];
  }

  /// First n digits.
  Word prefix(std::size_t n) const {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = digit(i + 1);
    return w;
  }

  /// Index of the last nonzero digit of a finite expansion (0 for zero).
  std::size_t length() const { return preperiod.size(); }

  friend bool operator==(const Expansion& a, const Expansion& b) {
    return a.preperiod == b.preperiod && a.period == b.period;
  }
  friend bool operator!=(const Expansion& a, const Expansion& b) { return !(a == b); }

  /// "pre|period". Digits are concatenated when all are < 10 and comma
  /// separated otherwise. A finite expansion has an empty period part.
  std::string to_string() const {
    const bool wide = std::any_of(preperiod.begin(), preperiod.end(), [](Digit d) { return d > 9; }) ||
                      std::any_of(period.begin(), period.end(), [](Digit d) { return d > 9; });
    auto part = [&](const Word& w) {
      std::ostringstream os;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (wide && i) os << ",";
        os << w[i];
      }
      return os.str();
    };
    return part(preperiod) + "|" + part(period);
  }

  static Expansion parse(const std::string& text) {
    const std::size_t bar = text.find('|');
    auto part = [&](const std::string& s) {
      Word w;
      if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (tok.empty()) throw ParseError("empty digit in expansion '" + text + "'");
          w.push_back(std::stoi(tok));
        }
      } else {
        for (char c : s) {
          if (c < '0' || c > '9') throw ParseError("bad digit in expansion '" + text + "'");
          w.push_back(c - '0');
        }
      }
      return w;
    };
    if (bar == std::string::npos) return Expansion(part(text), {});
    return Expansion(part(text.substr(0, bar)), part(text.substr(bar + 1)));
  }

 private:
  void canonicalize() {
    if (std::all_of(period.begin(), period.end(), [](Digit d) { return d == 0; })) period.clear();
    if (period.empty()) {
      while (!preperiod.empty() && preperiod.back() == 0) preperiod.pop_back();
      return;
    }
    // Primitive period.
    const std::size_t n = period.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p) continue;
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
      if (ok) {
        period.resize(p);
        break;
      }
    }
    // Minimal preperiod.
    while (!preperiod.empty() && preperiod.back() == period.back()) {
      preperiod.pop_back();
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
  }
};

/// Greedy expansion d' of 1 and the quasi-greedy sequence d.
struct DSequence {
  Expansion d_prime;
  Expansion d;

  std::size_t preperiod() const { return d.preperiod.size(); }
  std::size_t period() const { return d.period.size(); }
};

struct NumerationLimits {
  std::size_t orbit_cap = 1000000;
};

namespace detail {

// Greedy orbit of x in [0,1), with cycle detection on exact states.
inline Expansion greedy_orbit(const FieldElement& x0, std::size_t cap) {
  std::unordered_map<FieldElement, std::size_t, FieldElementHash> seen;
  Word digits;
  FieldElement x = x0;
  while (true) {
    if (x.is_zero()) return Expansion::finite(std::move(digits));
    auto [it, fresh] = seen.emplace(x, digits.size());
    if (!fresh) {
      const std::size_t start = it->second;
      Word pre(digits.begin(), digits.begin() + static_cast<long>(start));
      Word per(digits.begin() + static_cast<long>(start), digits.end());
      return Expansion(std::move(pre), std::move(per));
    }
    if (digits.size() >= cap) throw OrbitCapExceeded("greedy orbit exceeded " + std::to_string(cap) + " states");
    const FieldElement y = x.mul_beta();
    const Integer e = y.floor();
    digits.push_back(static_cast<Digit>(e.get_si()));
    x = y - x.field().from_int(e);
  }
}

}  // namespace detail

/// Greedy beta-expansion of x, 0 <= x < 1. Throws OutOfRangeError otherwise.
inline Expansion beta_expand(const FieldElement& x, const NumerationLimits& lim = {}) {
  if (x.sign() < 0 || compare(x, x.one_like()) != Ordering::Less)
    throw OutOfRangeError("beta_expand requires 0 <= x < 1, got " + x.to_string());
  return detail::greedy_orbit(x, lim.orbit_cap);
}

/// First n greedy digits of x in [0,1) without cycle detection. Returns the
/// digits and the remainder beta^n x - value(digits) scaled back into [0,1).
inline std::pair<Word, FieldElement> greedy_digits(const FieldElement& x0, std::size_t n) {
  Word digits;
  FieldElement x = x0;
  for (std::size_t i = 0; i < n && !x.is_zero(); ++i) {
    const FieldElement y = x.mul_beta();
    const Integer e = y.floor();
    digits.push_back(static_cast<Digit>(e.get_si()));
    x = y - x.field().from_int(e);
  }
  return {digits, x};
}

inline DSequence d_sequence(const NumberField& field, const NumerationLimits& lim = {}) {
  const FieldElement b = field.beta();
  const Integer fb = b.floor();
  Expansion rest = detail::greedy_orbit(b - field.from_int(fb), lim.orbit_cap);
  Word pre{static_cast<Digit>(fb.get_si())};
  pre.insert(pre.end(), rest.preperiod.begin(), rest.preperiod.end());
  DSequence ds;
  ds.d_prime = Expansion(pre, rest.period);
  if (ds.d_prime.is_finite()) {
    Word w = ds.d_prime.preperiod;
    w.back() -= 1;
    ds.d = Expansion::purely_periodic(w);
  } else {
    ds.d = ds.d_prime;
  }
  return ds;
}

namespace detail {

// Compares the infinite sequences a and b (1-based suffixes from sa, sb).
// Returns -1, 0, 1.
inline int compare_tails(const Expansion& a, std::size_t sa, const Expansion& b, std::size_t sb) {
  const std::size_t pa = std::max<std::size_t>(a.period.size(), 1), pb = std::max<std::size_t>(b.period.size(), 1);
  const std::size_t bound = a.preperiod.size() + b.preperiod.size() + std::lcm(pa, pb) + 1;
  for (std::size_t i = 0; i < bound; ++i) {
    const Digit x = a.digit(sa + i), y = b.digit(sb + i);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

}  // namespace detail

/// Parry admissibility of a finite word (followed by zeros): every suffix is
/// lexicographically below d.
inline bool is_admissible(const Word& w, const DSequence& ds) {
  for (std::size_t n = 0; n < w.size(); ++n) {
    for (std::size_t i = n; i < w.size(); ++i) {
      const Digit di = ds.d.digit(i - n + 1);
      if (w[i] < di) break;
      if (w[i] > di) return false;
    }
  }
  return true;
}

/// Parry admissibility of an eventually periodic sequence (strict inequality).
inline bool is_admissible(const Expansion& e, const DSequence& ds) {
  if (e.is_finite()) return is_admissible(e.preperiod, ds);
  const std::size_t n = e.preperiod.size() + e.period.size();
  for (std::size_t s = 1; s <= n; ++s)
    if (detail::compare_tails(e, s, ds.d, 1) >= 0) return false;
  return true;
}

/// sum_i w_i beta^{-(i + offset)}, i = 1..len.
inline FieldElement value_of(const NumberField& field, const Word& w, long offset = 0) {
  FieldElement acc = field.zero();
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i]) acc = acc + field.from_int(w[i]);
    acc = acc.div_beta();
  }
  if (offset > 0) {
    for (long i = 0; i < offset; ++i) acc = acc.div_beta();
  } else {
    for (long i = 0; i < -offset; ++i) acc = acc.mul_beta();
  }
  return acc;
}

/// Exact value of an eventually periodic expansion.
inline FieldElement value_of(const NumberField& field, const Expansion& e) {
  FieldElement v = value_of(field, e.preperiod);
  if (e.period.empty()) return v;
  const long p = static_cast<long>(e.period.size());
  const FieldElement block = value_of(field, e.period);
  const FieldElement geom = block / (field.one() - field.beta_pow(-p));
  return v + geom * field.beta_pow(-static_cast<long>(e.preperiod.size()));
}

struct ExpansionSum {
  Expansion expansion;  // fractional part
  Integer carry;        // integer part
};

/// Expansion of the fractional part of value(a) + value(b), with the carry.
inline ExpansionSum add_expansions(const NumberField& field, const Word& a, const Word& b,
                                   const NumerationLimits& lim = {}) {
  const FieldElement s = value_of(field, a) + value_of(field, b);
  const Integer c = s.floor();
  return {beta_expand(s - field.from_int(c), lim), c};
}

/// True iff x >= 0 has a finite beta-expansion.
inline bool is_finite(const FieldElement& x, const NumerationLimits& lim = {}) {
  if (x.sign() < 0) throw OutOfRangeError("is_finite requires x >= 0");
  FieldElement y = x;
  const FieldElement one = x.one_like();
  while (compare(y, one) != Ordering::Less) y = y.div_beta();
  return beta_expand(y, lim).is_finite();
}

/// Element of Z_beta with its purely periodic expansion.
struct ZBetaElement {
  FieldElement alpha;
  Expansion expansion;
};

struct ZBetaOptions {
  std::size_t period_cap = 40;            // dual oracle p_max
  std::size_t dual_budget = 1000000;      // admissible words visited by the dual oracle
  NumerationLimits limits;
};

struct ZBetaResult {
  std::vector<ZBetaElement> elements;  // sorted by value, 0 first
  Integer q;                           // denominator of xi0
  std::vector<long> scan_box;          // |y_j| <= scan_box[j] for j >= 1
  std::size_t candidates = 0;          // candidates passing the conjugate filter
  std::size_t dual_period = 0;         // periods up to this were cross-checked
  std::size_t dual_words = 0;
  bool within_q = true;                // every element has |y_j| <= q
};

namespace detail {

inline std::vector<std::complex<long double>> conjugates(const NumberField& f) {
  std::vector<std::complex<long double>> out;
  for (const auto& d : f.roots(80)) out.push_back(d.center.approx());
  return out;
}

// Inverse of the complex Vandermonde matrix V[j][i] = r_j^i.
inline std::vector<std::vector<std::complex<long double>>> vandermonde_inverse(
    const std::vector<std::complex<long double>>& r) {
  using C = std::complex<long double>;
  const std::size_t m = r.size();
  std::vector<std::vector<C>> a(m, std::vector<C>(2 * m));
  for (std::size_t j = 0; j < m; ++j) {
    C p = 1;
    for (std::size_t i = 0; i < m; ++i) {
      a[j][i] = p;
      p *= r[j];
    }
    a[j][m + j] = 1;
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    const C d = a[k][k];
    for (auto& v : a[k]) v /= d;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      const C f = a[i][k];
      for (std::size_t j = 0; j < 2 * m; ++j) a[i][j] -= f * a[k][j];
    }
  }
  // a = [I | V^{-1}], V^{-1} maps embeddings to coordinates.
  std::vector<std::vector<C>> inv(m, std::vector<C>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) inv[i][j] = a[i][m + j];
  return inv;
}

// Parry automaton step on the unminimized d-automaton: state i means the
// last i digits equal d_1..d_i. Returns -1 if the digit is forbidden.
inline long parry_step(const DSequence& ds, long state, Digit e) {
  const long total = static_cast<long>(ds.preperiod() + ds.period());
  const Digit di = ds.d.digit(static_cast<std::size_t>(state) + 1);
  if (e < di) return 0;
  if (e > di) return -1;
  long next = state + 1;
  if (next == total) next = static_cast<long>(ds.preperiod());
  return next;
}

}  // namespace detail

/// Z_beta = { alpha in Z[beta] cap [0,1) with purely periodic expansion }.
/// Scans integer coordinates bounded by the denominator q of xi0 intersected with
/// the box implied by |sigma_j(alpha)| <= floor(beta)/(1-|beta_j|), verifies each
/// candidate exactly, and cross-checks against purely periodic admissible words.
inline ZBetaResult enumerate_z_beta(const NumberField& field, const ZBetaOptions& opt = {}) {
  using C = std::complex<long double>;
  const std::size_t m = field.degree();
  ZBetaResult res;
  res.q = field.xi0().denominator();
  const auto r = detail::conjugates(field);
  const long double fb = static_cast<long double>(field.floor_beta().get_si());
  std::vector<long double> bound(m);
  bound[0] = 1;
  for (std::size_t j = 1; j < m; ++j) bound[j] = fb / (1 - std::abs(r[j]));
  const auto vinv = detail::vandermonde_inverse(r);
  res.scan_box.assign(m, 0);
  const long qcap = res.q.fits_slong_p() ? res.q.get_si() : (1L << 40);
  for (std::size_t i = 1; i < m; ++i) {
    long double b = 0;
    for (std::size_t j = 0; j < m; ++j) b += std::abs(vinv[i][j]) * bound[j];
    const long box = static_cast<long>(std::floor(b * 1.0001L + 1e-6L));
    res.scan_box[i] = std::min(box, qcap);
    if (box > qcap) res.within_q = false;  // region extends past q; elements re-checked below
  }

  std::vector<ZBetaElement> found;
  std::vector<long> y(m, 0);
  std::vector<C> pw(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    C p = 1;
    for (std::size_t i = 0; i < m; ++i) {
      pw[j * m + i] = p;
      p *= r[j];
    }
  }
  const long double slack = 1e-9L;
  // Odometer over y_1..y_{m-1}.
  for (std::size_t i = 1; i < m; ++i) y[i] = -res.scan_box[i];
  while (true) {
    long double s = 0;
    for (std::size_t i = 1; i < m; ++i) s += static_cast<long double>(y[i]) * pw[i].real();
    const long base = -static_cast<long>(std::floor(s));
    for (long y0 = base - 1; y0 <= base + 1; ++y0) {
      const long double a0 = s + static_cast<long double>(y0);
      if (a0 < -slack || a0 >= 1 + slack) continue;
      bool ok = true;
      for (std::size_t j = 1; j < m && ok; ++j) {
        C v = static_cast<long double>(y0);
        for (std::size_t i = 1; i < m; ++i) v += static_cast<long double>(y[i]) * pw[j * m + i];
        ok = std::abs(v) <= bound[j] * (1 + slack) + slack;
      }
      if (!ok) continue;
      ++res.candidates;
      IntVector c(m);
      c[0] = y0;
      for (std::size_t i = 1; i < m; ++i) c[i] = y[i];
      const FieldElement alpha = field.from_integers(c);
      if (alpha.sign() < 0 || compare(alpha, field.one()) != Ordering::Less) continue;
      const Expansion e = beta_expand(alpha, opt.limits);
      if (alpha.is_zero() || e.is_purely_periodic()) found.push_back({alpha, e});
    }
    std::size_t i = 1;
    while (i < m) {
      if (++y[i] <= res.scan_box[i]) break;
      y[i] = -res.scan_box[i];
      ++i;
    }
    if (i >= m) break;
  }
  std::sort(found.begin(), found.end(),
            [](const ZBetaElement& a, const ZBetaElement& b) { return a.alpha < b.alpha; });
  res.elements = found;
  for (const auto& z : res.elements)
    for (std::size_t i = 1; i < m; ++i)
      if (abs(z.alpha.numerators()[i]) > res.q) res.within_q = false;

  // Dual oracle: purely periodic admissible words whose value lies in Z[beta].
  const DSequence ds = d_sequence(field, opt.limits);
  const Digit maxd = static_cast<Digit>(field.floor_beta().get_si());
  std::set<std::vector<std::string>> dual;
  std::size_t visited = 0;
  std::size_t p_done = 0;
  for (std::size_t p = 1; p <= opt.period_cap; ++p) {
    // Count words of length p first so the budget is respected.
    std::vector<std::size_t> cnt(ds.preperiod() + ds.period(), 0), nxt;
    cnt[0] = 1;
    std::size_t words = 0;
    for (std::size_t step = 0; step < p; ++step) {
      nxt.assign(cnt.size(), 0);
      for (std::size_t s = 0; s < cnt.size(); ++s) {
        if (!cnt[s]) continue;
        for (Digit e = 0; e <= maxd; ++e) {
          const long t = detail::parry_step(ds, static_cast<long>(s), e);
          if (t >= 0) nxt[static_cast<std::size_t>(t)] = std::min<std::size_t>(nxt[static_cast<std::size_t>(t)] + cnt[s], opt.dual_budget + 1);
        }
      }
      cnt.swap(nxt);
    }
    for (auto v : cnt) words = std::min<std::size_t>(words + v, opt.dual_budget + 1);
    if (visited + words > opt.dual_budget) break;
    // alpha = N / (beta^p - 1) is integral iff Minv N == 0 (mod den), where Minv is
    // the scaled multiplication matrix of the inverse.
    const FieldElement inv = (field.beta_pow(static_cast<long>(p)) - field.one()).inverse();
    const IntegerMatrix minv = inv.multiplication_matrix_num();
    const Integer& den = inv.denominator();
    const IntVector& kk = field.k();
    const std::size_t m = field.degree();
    Word w(p);
    // Depth-first enumeration with running N = sum w_k beta^{p-k} as integer coordinates.
    std::vector<IntVector> acc(p + 1, IntVector(m));
    std::vector<long> st(p + 1, 0);
    Integer t;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == p) {
        ++visited;
        const IntVector& n = acc[p];
        for (std::size_t i = 0; i < m; ++i) {
          t = 0;
          for (std::size_t j = 0; j < m; ++j) t += minv(i, j) * n[j];
          if (!mpz_divisible_p(t.get_mpz_t(), den.get_mpz_t())) return;
        }
        const Expansion e = Expansion::purely_periodic(w);
        if (e.period.size() != p) return;  // count primitive words once
        if (!is_admissible(e, ds)) return;
        dual.insert((field.from_integers(n) * inv).coord_strings());
        return;
      }
      const IntVector& c = acc[depth];
      IntVector& out = acc[depth + 1];
      for (Digit e = 0; e <= maxd; ++e) {
        const long nt = detail::parry_step(ds, st[depth], e);
        if (nt < 0) continue;
        w[depth] = e;
        st[depth + 1] = nt;
        out[0] = 0;
        for (std::size_t i = 0; i + 1 < m; ++i) out[i + 1] = c[i];
        for (std::size_t j = 0; j < m; ++j) out[j] += c[m - 1] * kk[m - 1 - j];
        out[0] += e;
        rec(depth + 1);
      }
    };
    rec(0);
    p_done = p;
  }
  res.dual_period = p_done;
  res.dual_words = visited;

  std::set<std::vector<std::string>> scan;
  for (const auto& z : res.elements) {
    if (z.alpha.is_zero()) continue;
    scan.insert(z.alpha.coord_strings());
    if (z.expansion.period.size() <= p_done && !dual.count(z.alpha.coord_strings()))
      throw Error("Z_beta oracles disagree: " + z.alpha.to_string() + " missing from word enumeration");
  }
  for (const auto& d : dual)
    if (!scan.count(d)) throw Error("Z_beta oracles disagree: periodic word value missing from the scan");
  return res;
}

enum class FinitarityStatus { Finitary, NotFinitary, Unknown };

struct FinitarityResult {
  FinitarityStatus status = FinitarityStatus::Unknown;
  std::optional<ZBetaElement> witness;
};

inline std::string to_string(FinitarityStatus s) {
  switch (s) {
    case FinitarityStatus::Finitary: return "Finitary";
    case FinitarityStatus::NotFinitary: return "NotFinitary";
    default: return "Unknown";
  }
}

inline FinitarityResult check_finitarity(const NumberField& field, const ZBetaOptions& opt = {}) {
  FinitarityResult r;
  try {
    const ZBetaResult z = enumerate_z_beta(field, opt);
    for (const auto& e : z.elements)
      if (!e.alpha.is_zero()) {
        r.status = FinitarityStatus::NotFinitary;
        r.witness = e;
        return r;
      }
    r.status = FinitarityStatus::Finitary;
  } catch (const OrbitCapExceeded&) {
    r.status = FinitarityStatus::Unknown;
  }
  return r;
}

enum class CertificateStatus { Proven, Unknown };

struct WeakFinitaryRecord {
  FieldElement alpha;
  Expansion alpha_expansion;
  std::size_t period = 0;  // padded period p
  Expansion f;             // finite
  Expansion sum;           // expansion of alpha + value(f), finite
};

struct WeakFinitaryCertificate {
  std::vector<IntVector::value_type> k;
  CertificateStatus status = CertificateStatus::Unknown;
  std::vector<WeakFinitaryRecord> records;
  std::vector<FieldElement> unresolved;  // alphas for which the search failed
  Rational eta;        // rational lower bound on min value(f)
  double L2 = 0;       // log(1/eta)/log(beta)
  long L2_ceil = 0;    // rigorous upper bound on ceil(L2)
  std::size_t depth = 0;
};

namespace detail {

inline void eta_and_L2(const NumberField& field, WeakFinitaryCertificate& cert) {
  if (cert.records.empty()) {
    cert.eta = 1;
    cert.L2 = 0;
    cert.L2_ceil = 0;
    return;
  }
  Rational eta = -1;
  for (const auto& rec : cert.records) {
    const Rational lo = dyadic_floor(value_of(field, rec.f).real_interval(96).lo, 96);
    if (sgn(eta) < 0 || lo < eta) eta = lo;
  }
  cert.eta = eta;
  const long double lb = to_long_double(field.beta_interval(64).lo);
  const long double le = to_long_double(eta);
  cert.L2 = static_cast<double>(std::log(1.0L / le) / std::log(lb));
  cert.L2_ceil = static_cast<long>(std::ceil(static_cast<long double>(cert.L2) + 1e-9L));
}

}  // namespace detail

struct WeakFinitaryOptions {
  std::size_t depth = 30;
  std::size_t budget_per_alpha = 500000;
  ZBetaOptions zbeta;
};

/// Searches f_alpha for each nonzero alpha in Z_beta.
inline WeakFinitaryCertificate check_weak_finitarity(const NumberField& field, const ZBetaResult& z,
                                                     const WeakFinitaryOptions& opt = {}) {
  WeakFinitaryCertificate cert;
  cert.k = field.k();
  cert.depth = opt.depth;
  const DSequence ds = d_sequence(field, opt.zbeta.limits);
  const std::size_t dlen = ds.preperiod() + ds.period();
  const Digit maxd = static_cast<Digit>(field.floor_beta().get_si());
  const FieldElement one = field.one();

  for (const auto& ze : z.elements) {
    if (ze.alpha.is_zero()) continue;
    const std::size_t p0 = ze.expansion.period.size();
    std::size_t p_first = p0;
    while (p_first <= dlen) p_first += p0;
    const FieldElement alpha = ze.alpha;
    std::optional<WeakFinitaryRecord> hit;
    std::size_t tried = 0;
    // Single powers of beta are tried first, over every multiple of the period.
    for (std::size_t p = p_first; p < opt.depth && !hit; p += p0) {
      const FieldElement room = (one - alpha) * field.beta_pow(-static_cast<long>(p));
      for (std::size_t j = p + 1; j <= 2 * p && j <= opt.depth && !hit; ++j) {
        const FieldElement f = field.beta_pow(-static_cast<long>(j));
        if (!(f < room)) continue;
        const Expansion se = beta_expand(alpha + f, opt.zbeta.limits);
        if (!se.is_finite()) continue;
        Word w(j, 0);
        w.back() = 1;
        hit = WeakFinitaryRecord{alpha, ze.expansion, p, Expansion::finite(w), se};
      }
    }
    // A larger multiple of the period shrinks the admissible window for f, which
    // is needed when alpha is close to 1.
    for (std::size_t p = p_first; p < opt.depth && !hit && tried < opt.budget_per_alpha; p += p0) {
      // alpha + beta^p f < 1
      const FieldElement room = (one - alpha) * field.beta_pow(-static_cast<long>(p));
      if (room < field.beta_pow(-2 * static_cast<long>(p))) continue;
      for (std::size_t len = p + 1; len <= opt.depth && !hit && tried < opt.budget_per_alpha; ++len) {
        // Words of exactly this length, zero on 1..p, a nonzero digit within p+1..2p,
        // last digit nonzero; lexicographically descending.
        Word w(len, 0);
        std::function<bool(std::size_t, long)> rec = [&](std::size_t pos, long state) -> bool {
          if (tried >= opt.budget_per_alpha) return true;
          if (pos == len) {
            ++tried;
            const FieldElement f = value_of(field, w);
            if (!(f < room)) return false;
            const Expansion se = beta_expand(alpha + f, opt.zbeta.limits);
            if (!se.is_finite()) return false;
            hit = WeakFinitaryRecord{alpha, ze.expansion, p, Expansion::finite(w), se};
            return true;
          }
          if (pos >= 2 * p && std::all_of(w.begin() + static_cast<long>(p), w.begin() + static_cast<long>(pos),
                                          [](Digit d) { return d == 0; }))
            return false;
          for (Digit e = pos < p ? 0 : maxd; e >= 0; --e) {
            if (pos + 1 == len && e == 0) continue;
            const long t = detail::parry_step(ds, state, e);
            if (t < 0) continue;
            w[pos] = e;
            if (rec(pos + 1, t)) return true;
            w[pos] = 0;
          }
          return false;
        };
        rec(0, 0);
      }
    }
    if (hit) cert.records.push_back(*hit);
    else cert.unresolved.push_back(alpha);
  }
  cert.status = cert.unresolved.empty() ? CertificateStatus::Proven : CertificateStatus::Unknown;
  detail::eta_and_L2(field, cert);
  return cert;
}

/// Re-checks every record of a certificate by exact arithmetic. Returns an empty
/// string on success, otherwise a description of the first failure.
inline std::string validate_certificate(const NumberField& field, const WeakFinitaryCertificate& cert,
                                        const ZBetaResult* z = nullptr) {
  if (cert.k != field.k()) return "certificate belongs to a different field";
  const DSequence ds = d_sequence(field);
  const std::size_t dlen = ds.preperiod() + ds.period();
  const FieldElement one = field.one();
  Rational eta = -1;
  for (const auto& rec : cert.records) {
    const std::size_t p = rec.period;
    if (p <= dlen) return "period not padded past d";
    if (!rec.f.is_finite() || !is_admissible(rec.f, ds)) return "f is not an admissible finite word";
    if (beta_expand(rec.alpha) != rec.alpha_expansion || !rec.alpha_expansion.is_purely_periodic())
      return "alpha is not purely periodic";
    if (p % rec.alpha_expansion.period.size() != 0) return "period is not a multiple of the period of alpha";
    const FieldElement f = value_of(field, rec.f);
    if (f < field.beta_pow(-2 * static_cast<long>(p)) || !(f < field.beta_pow(-static_cast<long>(p))))
      return "f outside [beta^-2p, beta^-p)";
    const FieldElement s = rec.alpha + f;
    if (beta_expand(s) != rec.sum || !rec.sum.is_finite()) return "alpha + f is not finite";
    if (!(rec.alpha + f * field.beta_pow(static_cast<long>(p)) < one)) return "alpha + beta^p f >= 1";
    for (long n = 2; n <= 3; ++n)
      if (!is_finite(rec.alpha + f * field.beta_pow(-(n - 1) * static_cast<long>(p))))
        return "alpha + beta^{-p(n-1)} f is not finite";
    const Rational lo = dyadic_floor(f.real_interval(96).lo, 96);
    if (sgn(eta) < 0 || lo < eta) eta = lo;
  }
  if (!cert.records.empty() && eta != cert.eta) return "eta mismatch";
  if (z) {
    std::size_t nonzero = 0;
    for (const auto& e : z->elements) nonzero += !e.alpha.is_zero();
    if (cert.status == CertificateStatus::Proven && nonzero != cert.records.size())
      return "certificate does not cover Z_beta";
  }
  return {};
}

struct L1Estimate {
  long value = 0;
  std::size_t cap = 0;
  std::size_t pairs = 0;
};

/// All admissible words of length <= n (as length-n words padded with zeros).
inline std::vector<Word> admissible_words(const DSequence& ds, Digit maxd, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long state) {
    if (pos == n) {
      out.push_back(w);
      return;
    }
    for (Digit e = 0; e <= maxd; ++e) {
      const long t = detail::parry_step(ds, state, e);
      if (t < 0) continue;
      w[pos] = e;
      rec(pos + 1, t);
    }
    w[pos] = 0;
  };
  rec(0, 0);
  return out;
}

/// Empirical L1: the largest number of positions by which a finite sum of two
/// admissible words of length <= cap extends past the longer summand.
inline L1Estimate estimate_L1(const NumberField& field, std::size_t cap, const NumerationLimits& lim = {}) {
  const DSequence ds = d_sequence(field, lim);
  const Digit maxd = static_cast<Digit>(field.floor_beta().get_si());
  const auto words = admissible_words(ds, maxd, cap);
  std::vector<FieldElement> vals;
  std::vector<std::size_t> lens;
  for (const auto& w : words) {
    vals.push_back(value_of(field, w));
    std::size_t l = w.size();
    while (l > 0 && w[l - 1] == 0) --l;
    lens.push_back(l);
  }
  L1Estimate est;
  est.cap = cap;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i; j < words.size(); ++j) {
      ++est.pairs;
      const FieldElement s = vals[i] + vals[j];
      const FieldElement fr = s.frac();
      const Expansion e = beta_expand(fr, lim);
      if (!e.is_finite()) continue;
      const long ext = static_cast<long>(e.length()) - static_cast<long>(std::max(lens[i], lens[j]));
      est.value = std::max(est.value, ext);
    }
  return est;
}

}  // namespace pisot
