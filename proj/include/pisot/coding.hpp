#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pisot/beta_numeration.hpp"
#include "pisot/beta_shift.hpp"
#include "pisot/error.hpp"
#include "pisot/linalg.hpp"
#include "pisot/number_field.hpp"

namespace pisot {

/// The companion matrix of x^m - k1 x^{m-1} - ... - km: first row k, ones below the diagonal.
inline IntegerMatrix companion_matrix(const NumberField& field) {
  const std::size_t m = field.degree();
  IntegerMatrix c(m, m);
  for (std::size_t j = 0; j < m; ++j) c(0, j) = field.k()[j];
  for (std::size_t i = 1; i < m; ++i) c(i, i - 1) = 1;
  return c;
}

/// A homoclinic point of the companion automorphism, s(t) = xi (1, b^-1, ..., b^-(m-1)).
struct HomoclinicSpec {
  NumberField field;
  FieldElement xi;
  std::optional<IntVector> z_coordinate;

  /// xi / xi0, which lies in Z[beta] for a homoclinic point.
  FieldElement ratio() const {
    const FieldElement r = xi / field.xi0();
    if (!r.is_integral()) throw NotInHomoclinicGroupError(xi.to_string() + " is not in xi0 Z[beta]");
    return r;
  }
};

inline HomoclinicSpec make_spec(const NumberField& field, const FieldElement& xi) {
  if (!field.is_unit_field()) throw NotAUnitError("coding requires a Pisot unit");
  HomoclinicSpec s{field, xi, std::nullopt};
  (void)s.ratio();
  return s;
}

/// xi = xi0 b^{m-1} (w . n) with w_1 = 1, w_j = b w_{j-1} - k_{j-1}, the left b-eigenvector
/// of the companion matrix. The resulting s(t) is the projection of n to the unstable line
/// along the stable space.
inline FieldElement xi_from_integer_coordinate(const NumberField& field, const IntVector& n) {
  const std::size_t m = field.degree();
  if (n.size() != m) throw std::invalid_argument("coordinate vector has the wrong length");
  FieldElement w = field.one();
  FieldElement dot = field.zero();
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) w = w.mul_beta() - field.from_int(field.k()[j - 1]);
    if (n[j] != 0) dot = dot + Rational(n[j]) * w;
  }
  return field.xi0() * field.beta_pow(static_cast<long>(m) - 1) * dot;
}

inline HomoclinicSpec spec_from_integer_coordinate(const NumberField& field, const IntVector& n) {
  HomoclinicSpec s = make_spec(field, xi_from_integer_coordinate(field, n));
  s.z_coordinate = n;
  return s;
}

inline bool is_fundamental(const HomoclinicSpec& spec) { return spec.ratio().is_unit(); }

/// |D N(xi)|, the number of preimages of a generic point.
inline Integer predicted_preimage_count(const HomoclinicSpec& spec) {
  const FieldElement r = spec.ratio();
  if (spec.xi.is_zero()) throw ZeroHomoclinicPointError("xi = 0");
  const Rational c = abs(Rational(spec.field.discriminant()) * spec.xi.norm());
  const Rational check = abs(r.norm());
  if (c != check || c.get_den() != 1) throw Error("preimage count mismatch: |D N(xi)| != |N(xi/xi0)|");
  return c.get_num();
}

/// Two-sided digit sequence: e_{offset+i} = middle[i]; right of the window the
/// sequence repeats right_period (zeros if empty); left of it, the block
/// e_{offset-P}..e_{offset-1} equals left_period and repeats (zeros if empty).
struct TwoSidedWord {
  Word left_period;
  long offset = 0;
  Word middle;
  Word right_period;

  Digit at(long k) const {
    const long len = static_cast<long>(middle.size());
    if (k >= offset && k < offset + len) return middle[static_cast<std::size_t>(k - offset)];
    if (k >= offset + len) {
      if (right_period.empty()) return 0;
      const long p = static_cast<long>(right_period.size());
      return right_period[static_cast<std::size_t>((k - offset - len) % p)];
    }
    if (left_period.empty()) return 0;
    const long p = static_cast<long>(left_period.size());
    return left_period[static_cast<std::size_t>(((k - offset) % p + p) % p)];
  }

  /// Shift: (sigma e)_k = e_{k+1}.
  TwoSidedWord shifted() const {
    TwoSidedWord w = *this;
    w.offset -= 1;
    return w;
  }

  static TwoSidedWord window(long offset, Word digits) { return {{}, offset, std::move(digits), {}}; }
  static TwoSidedWord periodic(Word period) { return {period, 1, {}, period}; }
};

struct TorusPoint {
  std::vector<double> coords;
  double error_radius = 0;
};

/// Distance on the torus in the max norm.
inline double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double t = std::fabs(a[i] - b[i]);
    t = std::min(t, 1.0 - t);
    d = std::max(d, t);
  }
  return d;
}

namespace detail {

// sum_k e_k beta^{-k} over the window and the right tail, plus the formal left
// tail, as (convergent part, left part).
inline std::pair<FieldElement, FieldElement> two_sided_value(const NumberField& f, const TwoSidedWord& w) {
  FieldElement mid = value_of(f, w.middle, w.offset - 1);
  const long len = static_cast<long>(w.middle.size());
  if (!w.right_period.empty()) {
    const long p = static_cast<long>(w.right_period.size());
    const FieldElement r = value_of(f, w.right_period);  // sum r_j beta^{-j-1}
    mid = mid + r * f.beta_pow(-(w.offset + len - 1)) / (f.one() - f.beta_pow(-p));
  }
  FieldElement left = f.zero();
  if (!w.left_period.empty()) {
    const long p = static_cast<long>(w.left_period.size());
    // One block sits at positions offset-p..offset-1; earlier blocks scale by beta^p,
    // summed formally as beta^p / (1 - beta^p) after the first.
    const FieldElement block = value_of(f, w.left_period, w.offset - p - 1);
    left = block / (f.one() - f.beta_pow(p));
  }
  return {mid, left};
}

}  // namespace detail

/// Exact phi(e) = sum_k e_k T^{-k} t mod Z^m as field elements in [0,1). Left tails
/// in the homoclinic group are summed through the conjugate embeddings: for zeta in
/// xi0 Z[beta], zeta = -(sum of its other conjugates) mod 1 because Tr(zeta) is an integer.
inline std::vector<FieldElement> phi_exact(const HomoclinicSpec& spec, const TwoSidedWord& w) {
  if (spec.xi.is_zero()) throw ZeroHomoclinicPointError("phi of the zero homoclinic point");
  const NumberField& f = spec.field;
  const auto [mid, left] = detail::two_sided_value(f, w);
  std::vector<FieldElement> out;
  FieldElement scale = spec.xi;
  for (std::size_t i = 0; i < f.degree(); ++i) {
    FieldElement c = scale * mid;
    if (!left.is_zero()) {
      const FieldElement y = scale * left;
      c = c + y - f.from_rational(y.trace());
    }
    out.push_back(c.frac());
    scale = scale.div_beta();
  }
  return out;
}

/// phi(e) rounded to doubles. The value is exact before rounding, so the error
/// radius is the rounding error alone.
inline TorusPoint phi_eval(const HomoclinicSpec& spec, const TwoSidedWord& w, double tolerance = 1e-12) {
  constexpr double radius = 0x1.0p-50;
  if (tolerance < radius) throw PrecisionCapExceeded("phi_eval tolerance below double resolution; use phi_exact");
  TorusPoint p;
  p.error_radius = radius;
  for (const auto& c : phi_exact(spec, w)) {
    double v = static_cast<double>(c.approx());
    if (v >= 1.0) v -= 1.0;
    p.coords.push_back(v);
  }
  return p;
}

/// Purely periodic sequences whose value lies in Z_beta: the preimages of 0.
inline std::vector<Expansion> kernel_sequences(const NumberField& field, const ZBetaOptions& opt = {}) {
  std::vector<Expansion> out;
  for (const auto& e : enumerate_z_beta(field, opt).elements) out.push_back(e.expansion);
  return out;
}

/// A = sum_j u_j M^j for u = sum_j u_j b^j. Requires char poly(M) = g and u a unit.
inline IntegerMatrix unit_to_matrix(const FieldElement& u, const IntegerMatrix& M) {
  const NumberField f = u.field();
  if (M.char_poly() != f.poly()) throw CharPolyMismatchError("characteristic polynomial of M differs from g");
  if (!u.is_unit()) throw NotAUnitError(u.to_string() + " is not a unit");
  const std::size_t m = f.degree();
  IntegerMatrix A(m, m), P = IntegerMatrix::identity(m);
  for (std::size_t j = 0; j < m; ++j) {
    A = A + u.numerators()[j] * P;
    P = P * M;
  }
  return A;
}

struct CollisionRecord {
  Word a, b;
  long offset = 0;
  std::string kind;  // "kernel", "near-miss"
};

struct PeriodicCensus {
  std::size_t period = 0;
  std::size_t words = 0;
  std::size_t images = 0;
  std::map<std::size_t, std::size_t> fiber_histogram;  // fiber size -> number of image points
  std::size_t mode = 0;
};

struct InjectivityReport {
  std::size_t n_digits = 0, trials = 0;
  double resolution = 0;
  std::uint64_t seed = 0;
  bool fundamental = false;
  std::string predicted_count;
  std::map<std::size_t, std::size_t> collision_histogram;  // bucket size -> number of buckets
  std::size_t duplicate_windows = 0;
  std::size_t near_misses = 0;
  std::size_t verified_kernel_hits = 0;
  std::vector<CollisionRecord> counterexamples;
  double uniformity_chi2 = 0;
  std::size_t uniformity_dof = 0;
  std::optional<PeriodicCensus> census;
};

namespace detail {

// Smallest P >= 1 with beta^P = 1 modulo u Z[beta], so T^P fixes the kernel of u.
inline std::size_t kernel_order(const FieldElement& u, std::size_t cap) {
  const NumberField f = u.field();
  FieldElement b = f.one();
  const FieldElement inv = u.inverse();
  for (std::size_t p = 1; p <= cap; ++p) {
    b = b.mul_beta();
    if (((b - f.one()) * inv).is_integral()) return p;
  }
  return 0;
}

}  // namespace detail

/// Exact images of all P-periodic two-sided sequences; the fiber sizes estimate the
/// number of preimages of a typical periodic point.
inline PeriodicCensus periodic_census(const HomoclinicSpec& spec, std::size_t min_period = 12,
                                      std::size_t max_words = 200000) {
  const NumberField& f = spec.field;
  const DSequence ds = d_sequence(f);
  const SoficAutomaton a = build_automaton(ds);
  const std::size_t order = std::max<std::size_t>(detail::kernel_order(spec.ratio(), 4096), 1);
  PeriodicCensus c;
  c.period = order;
  while (c.period < min_period) c.period += order;
  std::map<std::vector<std::string>, std::size_t> fibers;
  Word w(c.period);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long s) {
    if (c.words >= max_words) return;
    if (pos == w.size()) {
      if (!is_admissible(Expansion::purely_periodic(w), ds)) return;
      ++c.words;
      std::vector<std::string> key;
      for (const auto& x : phi_exact(spec, TwoSidedWord::periodic(w))) {
        if (!x.is_rational()) throw Error("periodic image is not a rational point");
        key.push_back(x.coord(0).get_str());
      }
      ++fibers[key];
      return;
    }
    for (Digit e = 0; e <= a.max_digit; ++e) {
      const long t = a.step(s, e);
      if (t < 0) continue;
      w[pos] = e;
      rec(pos + 1, t);
    }
  };
  rec(0, 0);
  c.images = fibers.size();
  for (const auto& [k, v] : fibers) ++c.fiber_histogram[v];
  std::size_t best = 0;
  for (const auto& [size, count] : c.fiber_histogram)
    if (count > best) {
      best = count;
      c.mode = size;
    }
  return c;
}

struct InjectivityOptions {
  std::size_t n_digits = 20;
  std::size_t trials = 10000;
  double resolution = 0x1.0p-20;
  std::uint64_t seed = 1;
  bool census = true;
  std::size_t census_min_period = 12;
};

/// Samples windows e_{-n+1..n} from the Parry chain, buckets their images at the
/// given resolution and classifies every collision exactly.
inline InjectivityReport injectivity_experiment(const HomoclinicSpec& spec, const InjectivityOptions& opt = {}) {
  InjectivityReport rep;
  rep.n_digits = opt.n_digits;
  rep.trials = opt.trials;
  rep.resolution = opt.resolution;
  rep.seed = opt.seed;
  rep.fundamental = is_fundamental(spec);
  rep.predicted_count = predicted_preimage_count(spec).get_str();
  if (opt.trials > 0) {
    const NumberField& f = spec.field;
    const std::size_t m = f.degree();
    const MarkovChain chain = max_entropy_chain(f);
    const long offset = 1 - static_cast<long>(opt.n_digits);
    std::map<std::vector<long>, std::vector<std::size_t>> buckets;
    std::vector<Word> windows;
    std::vector<std::vector<FieldElement>> images;
    const std::size_t grid = 4;
    std::vector<std::size_t> cells(static_cast<std::size_t>(std::pow(grid, m)), 0);
    for (std::size_t t = 0; t < opt.trials; ++t) {
      Rng rng(opt.seed, t);
      Word w = sample(chain, 2 * opt.n_digits, rng);
      auto img = phi_exact(spec, TwoSidedWord::window(offset, w));
      std::vector<long> key;
      std::size_t cell = 0;
      for (const auto& x : img) {
        const double v = static_cast<double>(x.approx());
        key.push_back(static_cast<long>(std::floor(v / opt.resolution)));
        cell = cell * grid + std::min<std::size_t>(static_cast<std::size_t>(v * grid), grid - 1);
      }
      ++cells[cell];
      buckets[key].push_back(windows.size());
      windows.push_back(std::move(w));
      images.push_back(std::move(img));
    }
    for (const auto& [key, idx] : buckets) {
      ++rep.collision_histogram[idx.size()];
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
          const Word& a = windows[idx[i]];
          const Word& b = windows[idx[j]];
          if (a == b) {
            ++rep.duplicate_windows;
            continue;
          }
          if (images[idx[i]] != images[idx[j]]) {
            ++rep.near_misses;
            continue;
          }
          // Exact collision of distinct windows: the difference of their values,
          // scaled to the front of the window, must be a kernel element.
          const FieldElement d = value_of(f, a) - value_of(f, b);
          const FieldElement ad = d.sign() < 0 ? -d : d;
          bool kernel = false;
          for (const auto& e : enumerate_z_beta(f).elements)
            if (ad == e.alpha || ad.frac() == e.alpha) kernel = true;
          if (kernel) ++rep.verified_kernel_hits;
          else rep.counterexamples.push_back({a, b, offset, "counterexample"});
        }
    }
    const double expect = static_cast<double>(opt.trials) / static_cast<double>(cells.size());
    for (auto c : cells) rep.uniformity_chi2 += (static_cast<double>(c) - expect) * (static_cast<double>(c) - expect) / expect;
    rep.uniformity_dof = cells.size() - 1;
  }
  if (opt.census) rep.census = periodic_census(spec, opt.census_min_period);
  return rep;
}

}  // namespace pisot
