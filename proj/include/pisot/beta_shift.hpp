#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pisot/beta_numeration.hpp"
#include "pisot/error.hpp"
#include "pisot/number_field.hpp"

namespace pisot {

/// splitmix64 finalizer, used to derive independent mt19937_64 substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable generator: std::mt19937_64 seeded with splitmix64(seed, stream).
/// Uniform variates use the top 53 bits, so outputs are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : gen_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return gen_(); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

/// Deterministic automaton over digits 0..max_digit; -1 marks a forbidden edge.
/// State 0 is initial and every state is accepting.
struct SoficAutomaton {
  Digit max_digit = 0;
  std::vector<std::vector<long>> next;  // next[state][digit]

  std::size_t states() const { return next.size(); }
  std::size_t alphabet() const { return static_cast<std::size_t>(max_digit) + 1; }

  long step(long s, Digit e) const {
    if (s < 0 || e < 0 || e > max_digit) return -1;
    return next[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)];
  }

  bool accepts(const Word& w) const {
    long s = 0;
    for (Digit e : w)
      if ((s = step(s, e)) < 0) return false;
    return true;
  }
};

/// Minimizes by Moore partition refinement and renumbers states in BFS order
/// from state 0. Unreachable states are dropped.
inline SoficAutomaton minimize(const SoficAutomaton& a) {
  const std::size_t n = a.states(), k = a.alphabet();
  std::vector<long> cls(n, 0);
  std::size_t classes = 1;
  while (true) {
    std::map<std::vector<long>, long> sig;
    std::vector<long> next_cls(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<long> key{cls[s]};
      for (std::size_t e = 0; e < k; ++e) {
        const long t = a.next[s][e];
        key.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
      }
      auto it = sig.emplace(std::move(key), static_cast<long>(sig.size())).first;
      next_cls[s] = it->second;
    }
    const std::size_t c = sig.size();
    cls.swap(next_cls);
    if (c == classes) break;
    classes = c;
  }
  // BFS renumbering from the class of state 0.
  std::vector<long> order(classes, -1), rep(classes, -1);
  for (std::size_t s = 0; s < n; ++s)
    if (rep[static_cast<std::size_t>(cls[s])] < 0) rep[static_cast<std::size_t>(cls[s])] = static_cast<long>(s);
  std::vector<long> queue{cls[0]};
  order[static_cast<std::size_t>(cls[0])] = 0;
  long count = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const long s = rep[static_cast<std::size_t>(queue[qi])];
    for (std::size_t e = 0; e < k; ++e) {
      const long t = a.next[static_cast<std::size_t>(s)][e];
      if (t < 0) continue;
      const long c = cls[static_cast<std::size_t>(t)];
      if (order[static_cast<std::size_t>(c)] < 0) {
        order[static_cast<std::size_t>(c)] = count++;
        queue.push_back(c);
      }
    }
  }
  SoficAutomaton m;
  m.max_digit = a.max_digit;
  m.next.assign(static_cast<std::size_t>(count), std::vector<long>(k, -1));
  for (long c : queue) {
    const long s = rep[static_cast<std::size_t>(c)];
    for (std::size_t e = 0; e < k; ++e) {
      const long t = a.next[static_cast<std::size_t>(s)][e];
      m.next[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])][e] =
          t < 0 ? -1 : order[static_cast<std::size_t>(cls[static_cast<std::size_t>(t)])];
    }
  }
  return m;
}

/// The l+p state automaton of the d-sequence, before minimization.
inline SoficAutomaton raw_automaton(const DSequence& ds) {
  SoficAutomaton a;
  a.max_digit = ds.d.digit(1);
  const std::size_t n = ds.preperiod() + ds.period();
  a.next.assign(n, std::vector<long>(a.alphabet(), -1));
  for (std::size_t s = 0; s < n; ++s)
    for (Digit e = 0; e <= a.max_digit; ++e) a.next[s][static_cast<std::size_t>(e)] = detail::parry_step(ds, static_cast<long>(s), e);
  return a;
}

inline SoficAutomaton build_automaton(const DSequence& ds) { return minimize(raw_automaton(ds)); }

/// Maximal-entropy Markov chain on the edges of an automaton.
struct MarkovChain {
  SoficAutomaton automaton;
  std::vector<std::vector<double>> prob;  // prob[state][digit], 0 on forbidden edges
  std::vector<double> stationary;
  double perron_value = 0;
  std::vector<double> right_vector;

  double entropy_rate() const {
    long double h = 0;
    for (std::size_t s = 0; s < prob.size(); ++s)
      for (double p : prob[s])
        if (p > 0) h -= static_cast<long double>(stationary[s]) * p * std::log(static_cast<long double>(p));
    return static_cast<double>(h);
  }

  /// Stationary frequency of each digit.
  std::vector<double> digit_frequencies() const {
    std::vector<double> f(automaton.alphabet(), 0.0);
    for (std::size_t s = 0; s < prob.size(); ++s)
      for (std::size_t e = 0; e < f.size(); ++e) f[e] += stationary[s] * prob[s][e];
    return f;
  }
};

namespace detail {

// Power iteration for the Perron vector of a nonnegative matrix. left selects x A.
inline std::pair<long double, std::vector<long double>> perron(const std::vector<std::vector<long double>>& a,
                                                               bool left, long double tol) {
  const std::size_t n = a.size();
  std::vector<long double> x(n, 1.0L), y(n);
  long double lambda = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += (left ? a[j][i] : a[i][j]) * x[j];
      y[i] = s;
    }
    // Rayleigh-style estimate and normalization.
    long double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += y[i] * x[i];
      den += x[i] * x[i];
    }
    const long double est = num / den;
    long double norm = 0;
    for (auto v : y) norm = std::max(norm, std::fabs(v));
    long double diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      diff = std::max(diff, std::fabs(y[i] - x[i]));
    }
    x.swap(y);
    const bool done = std::fabs(est - lambda) <= tol * est && diff <= tol;
    lambda = est;
    if (done) return {lambda, x};
  }
  throw ConvergenceFailure("power iteration did not converge");
}

}  // namespace detail

inline MarkovChain max_entropy_chain(const SoficAutomaton& a, double tol = 1e-12) {
  const std::size_t n = a.states();
  std::vector<std::vector<long double>> adj(n, std::vector<long double>(n, 0));
  for (std::size_t s = 0; s < n; ++s)
    for (long t : a.next[s])
      if (t >= 0) adj[s][static_cast<std::size_t>(t)] += 1;
  // Shift by the identity so the iteration converges for periodic graphs too.
  for (std::size_t s = 0; s < n; ++s) adj[s][s] += 1;
  auto [lr, u] = detail::perron(adj, false, static_cast<long double>(tol) * 1e-3L);
  auto [ll, v] = detail::perron(adj, true, static_cast<long double>(tol) * 1e-3L);
  (void)ll;
  const long double lambda = lr - 1;
  MarkovChain c;
  c.automaton = a;
  c.perron_value = static_cast<double>(lambda);
  c.prob.assign(n, std::vector<double>(a.alphabet(), 0.0));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t e = 0; e < a.alphabet(); ++e) {
      const long t = a.next[s][e];
      if (t >= 0) c.prob[s][e] = static_cast<double>(u[static_cast<std::size_t>(t)] / (lambda * u[s]));
    }
  long double z = 0;
  for (std::size_t s = 0; s < n; ++s) z += u[s] * v[s];
  c.stationary.resize(n);
  c.right_vector.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    c.stationary[s] = static_cast<double>(u[s] * v[s] / z);
    c.right_vector[s] = static_cast<double>(u[s]);
  }
  return c;
}

inline MarkovChain max_entropy_chain(const NumberField& field, double tol = 1e-12) {
  return max_entropy_chain(build_automaton(d_sequence(field)), tol);
}

namespace detail {

inline std::size_t pick(const std::vector<double>& p, double u) {
  double acc = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    last = i;
    acc += p[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace detail

/// Word of length n drawn from the chain with a stationary start.
inline Word sample(const MarkovChain& chain, std::size_t n, Rng& rng) {
  Word w;
  w.reserve(n);
  if (n == 0) return w;
  std::size_t s = detail::pick(chain.stationary, rng.uniform());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t e = detail::pick(chain.prob[s], rng.uniform());
    w.push_back(static_cast<Digit>(e));
    s = static_cast<std::size_t>(chain.automaton.next[s][e]);
  }
  return w;
}

inline Word sample(const MarkovChain& chain, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample(chain, n, rng);
}

struct TailRow {
  std::size_t n = 0;
  std::string alpha;  // expansion of alpha
  std::size_t trials = 0;
  std::size_t unchanged = 0;

  double fraction() const { return trials ? static_cast<double>(unchanged) / static_cast<double>(trials) : 1.0; }
  double sigma() const {
    const double p = fraction();
    return trials ? std::sqrt(std::max(p * (1 - p), 0.25 / static_cast<double>(trials)) / static_cast<double>(trials)) : 0.0;
  }
};

struct TailReport {
  std::vector<std::size_t> n_list;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  long L = 0;
  long L1 = 0;
  long L2_ceil = 0;
  std::vector<TailRow> rows;
};

struct TailOptions {
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  long L = -1;              // -1: derive from the certificate and the L1 estimate
  std::size_t l1_cap = 8;   // word length for the L1 estimate
  bool include_zero = false;
  WeakFinitaryOptions wf;
};

namespace detail {

// Smallest k <= n with alpha + value(w_1..w_k) in Fin(beta), or n+1. Once this
// holds, the sum lies in Fin_{k+L} and the tail past k+L is the sample's own.
inline std::size_t first_absorption(const NumberField& field, const FieldElement& alpha, const Word& w,
                                    std::size_t n, std::size_t orbit_cap) {
  FieldElement v = alpha;
  FieldElement scale = field.one();
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      scale = scale.div_beta();
      if (w[k - 1]) v = v + Rational(w[k - 1]) * scale;
    }
    FieldElement x = v;
    while (compare(x, field.one()) != Ordering::Less) x = x.div_beta();
    if (greedy_orbit(x, orbit_cap).is_finite()) return k;
  }
  return n + 1;
}

}  // namespace detail

/// For sampled prefixes e_1..e_n and each nonzero alpha in Z_beta, records whether
/// alpha + (e_1..e_k) has a finite expansion for some k <= n. When it does, the
/// digits of alpha + e past position n + L agree with those of e.
inline TailReport tail_invariance_experiment(const NumberField& field, const std::vector<std::size_t>& n_list,
                                             const TailOptions& opt = {}) {
  TailReport rep;
  rep.n_list = n_list;
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  const ZBetaResult z = enumerate_z_beta(field, opt.wf.zbeta);
  const WeakFinitaryCertificate cert = check_weak_finitarity(field, z, opt.wf);
  rep.L1 = estimate_L1(field, opt.l1_cap, opt.wf.zbeta.limits).value;
  rep.L2_ceil = cert.L2_ceil;
  rep.L = opt.L >= 0 ? opt.L : std::max(rep.L1 + 4, rep.L2_ceil);
  const std::size_t n_max = n_list.empty() ? 0 : *std::max_element(n_list.begin(), n_list.end());
  const MarkovChain chain = max_entropy_chain(build_automaton(d_sequence(field, opt.wf.zbeta.limits)));

  std::vector<ZBetaElement> alphas;
  for (const auto& e : z.elements)
    if (!e.alpha.is_zero() || opt.include_zero) alphas.push_back(e);

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    std::vector<std::size_t> hits(n_list.size(), 0);
    for (std::size_t t = 0; t < opt.trials; ++t) {
      Rng rng(opt.seed, t);
      const Word w = sample(chain, n_max, rng);
      const std::size_t k = detail::first_absorption(field, alphas[ai].alpha, w, n_max, opt.wf.zbeta.limits.orbit_cap);
      for (std::size_t i = 0; i < n_list.size(); ++i) hits[i] += k <= n_list[i];
    }
    for (std::size_t i = 0; i < n_list.size(); ++i)
      rep.rows.push_back({n_list[i], alphas[ai].expansion.to_string(), opt.trials, hits[i]});
  }
  return rep;
}

}  // namespace pisot
