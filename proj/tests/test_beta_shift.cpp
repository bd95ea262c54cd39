#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

NumberField field(const char* k) { return NumberField::make(parse_recurrence(k)); }

const char* kFields[] = {"1,1", "3,-1", "1,1,1", "0,1,1", "3,4,1", "1,0,0,1"};

template <class F>
void for_each_word(Digit md, std::size_t len, F&& f) {
  Word w(len, 0);
  while (true) {
    f(w);
    std::size_t i = 0;
    while (i < len && w[i] == md) w[i++] = 0;
    if (i == len) return;
    ++w[i];
  }
}

}  // namespace

TEST(Rng, ReproducibleStreams) {
  Rng a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    (void)c;
  }
  EXPECT_NE(Rng(42, 3).next(), Rng(42, 4).next());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Automaton, SmallestPisotHasFiveStates) {
  const SoficAutomaton a = build_automaton(d_sequence(field("0,1,1")));
  EXPECT_EQ(a.states(), 5u);
  EXPECT_TRUE(a.accepts({1, 0, 0, 0, 0, 1}));
  EXPECT_FALSE(a.accepts({1, 0, 0, 0, 1}));
  EXPECT_EQ(build_automaton(d_sequence(field("1,1"))).states(), 2u);
}

TEST(Automaton, AgreesWithAdmissibility) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    const SoficAutomaton raw = raw_automaton(ds), a = build_automaton(ds);
    EXPECT_LE(a.states(), raw.states());
    const std::size_t len = a.max_digit >= 3 ? 6 : 10;
    for (std::size_t n = 1; n <= len; ++n)
      for_each_word(a.max_digit, n, [&](const Word& w) {
        const bool adm = is_admissible(w, ds);
        ASSERT_EQ(a.accepts(w), adm) << k;
        ASSERT_EQ(raw.accepts(w), adm) << k;
      });
  }
}

TEST(Parry, EntropyIsLogBeta) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const MarkovChain c = max_entropy_chain(f);
    const double beta = oracle::beta_mpf(f.k()).get_d();
    EXPECT_NEAR(c.perron_value, beta, 1e-10) << k;
    EXPECT_NEAR(c.entropy_rate(), std::log(beta), 1e-8) << k;
    double total = 0;
    for (double p : c.stationary) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::size_t s = 0; s < c.prob.size(); ++s) {
      double row = 0;
      for (std::size_t e = 0; e < c.prob[s].size(); ++e) {
        row += c.prob[s][e];
        if (c.automaton.next[s][e] < 0) EXPECT_EQ(c.prob[s][e], 0.0);
      }
      EXPECT_NEAR(row, 1.0, 1e-12);
    }
  }
}

TEST(Parry, GoldenDigitFrequency) {
  // Parry measure of the golden shift: P(e = 1) = 1 / (1 + beta^2).
  const MarkovChain c = max_entropy_chain(field("1,1"));
  const double phi = (1 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(c.digit_frequencies()[1], 1 / (1 + phi * phi), 1e-10);
}

TEST(Sampler, AdmissibleDeterministicAndCalibrated) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    const MarkovChain c = max_entropy_chain(build_automaton(ds));
    const Word w = sample(c, 20000, 9);
    EXPECT_EQ(w, sample(c, 20000, 9));
    EXPECT_NE(w, sample(c, 20000, 10));
    EXPECT_TRUE(is_admissible(w, ds)) << k;
    const auto freq = c.digit_frequencies();
    std::vector<double> count(freq.size(), 0);
    for (Digit d : w) count[static_cast<std::size_t>(d)] += 1;
    for (std::size_t e = 0; e < freq.size(); ++e) {
      const double p = count[e] / static_cast<double>(w.size());
      // Markov dependence inflates the variance; 8 binomial sigmas is generous.
      EXPECT_NEAR(p, freq[e], 8 * std::sqrt(freq[e] * (1 - freq[e]) / static_cast<double>(w.size())) + 1e-3) << k;
    }
  }
}

TEST(Tails, SmallRunIsMonotoneAndReproducible) {
  const NumberField e4 = field("1,0,0,1");
  TailOptions o;
  o.trials = 200;
  o.seed = 5;
  const TailReport a = tail_invariance_experiment(e4, {10, 30, 60}, o);
  const TailReport b = tail_invariance_experiment(e4, {10, 30, 60}, o);
  ASSERT_EQ(a.rows.size(), 15u);
  EXPECT_GE(a.L, a.L2_ceil);
  EXPECT_GE(a.L, a.L1 + 4);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].unchanged, b.rows[i].unchanged);
    if (i % 3) EXPECT_GE(a.rows[i].unchanged, a.rows[i - 1].unchanged);
  }
}

TEST(Tails, FinitaryFieldAbsorbsImmediately) {
  // With Z_beta = {0} only alpha = 0 can be requested; it is finite before any digit.
  TailOptions o;
  o.trials = 20;
  o.include_zero = true;
  const TailReport r = tail_invariance_experiment(field("1,1,1"), {1, 5}, o);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) EXPECT_EQ(row.unchanged, row.trials);
}
