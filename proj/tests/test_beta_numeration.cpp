#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

NumberField field(const char* k) { return NumberField::make(parse_recurrence(k)); }

const char* kFields[] = {"1,1", "3,-1", "1,1,1", "0,1,1", "3,4,1", "1,0,0,1"};

Digit max_digit(const NumberField& f) { return static_cast<Digit>(f.floor_beta().get_si()); }

// Admissibility by the greedy algorithm: a finite word is admissible iff it is the
// greedy expansion of its own value.
bool greedy_admissible(const NumberField& f, const Word& w) {
  const FieldElement v = value_of(f, w);
  if (!(v < f.one())) return false;
  return beta_expand(v) == Expansion::finite(w);
}

Word random_admissible(const NumberField& f, const DSequence& ds, std::mt19937_64& gen, std::size_t len) {
  const Digit md = max_digit(f);
  while (true) {
    Word w(len);
    for (auto& d : w) d = static_cast<Digit>(gen() % static_cast<unsigned>(md + 1));
    if (is_admissible(w, ds)) return w;
  }
}

}  // namespace

TEST(Expansion, CanonicalForm) {
  EXPECT_EQ(Expansion({2, 1}, {1}).to_string(), "2|1");
  EXPECT_EQ(Expansion({1, 0}, {0, 0}).to_string(), "1|");
  EXPECT_EQ(Expansion({}, {1, 0, 1, 0}).to_string(), "|10");
  EXPECT_EQ(Expansion({0, 1}, {0, 1}).to_string(), "|01");
  EXPECT_EQ(Expansion::parse("21|1"), Expansion({2}, {1}));
  EXPECT_EQ(Expansion::parse("10,2|3"), Expansion({10, 2}, {3}));
  EXPECT_EQ(Expansion({10}, {}).to_string(), "10|");
  EXPECT_EQ(Expansion({}, {}).to_string(), "|");
  EXPECT_THROW(Expansion::parse("1a|"), ParseError);
}

TEST(DSequence, KnownFields) {
  const DSequence g = d_sequence(field("1,1"));
  EXPECT_EQ(g.d_prime.to_string(), "11|");
  EXPECT_EQ(g.d.to_string(), "|10");
  EXPECT_EQ(d_sequence(field("3,-1")).d.to_string(), "2|1");
  EXPECT_EQ(d_sequence(field("0,1,1")).d.to_string(), "|10000");
  EXPECT_EQ(d_sequence(field("1,1,1")).d.to_string(), "|110");
  EXPECT_EQ(d_sequence(field("1,0,0,1")).d_prime.to_string(), "1001|");
}

TEST(DSequence, MatchesHighPrecisionGreedy) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    const mpf_class beta = oracle::beta_mpf(f.k());
    // d'_n = [beta T^{n-1} 1].
    const std::size_t n = ds.d_prime.is_finite() ? ds.d_prime.length() : 50;
    const auto ref = oracle::greedy_mpf(mpf_class(1, oracle::kBits), beta, n);
    EXPECT_EQ(ds.d_prime.prefix(n), Word(ref.begin(), ref.end())) << k;
    EXPECT_EQ(ds.d_prime.digit(1), max_digit(f));
  }
}

TEST(BetaExpand, Examples) {
  const NumberField r3 = field("3,-1");
  const Expansion e = beta_expand(parse_element(r3, "1-1/b"));
  EXPECT_TRUE(e.is_purely_periodic());
  EXPECT_EQ(e.to_string(), "|1");
  EXPECT_EQ(beta_expand(field("1,1").zero()).to_string(), "|");
  EXPECT_EQ(beta_expand(parse_element(field("1,1"), "b-1")).to_string(), "1|");
  const NumberField e4 = field("1,0,0,1");
  EXPECT_TRUE(beta_expand(parse_element(e4, "b^-2+b^-3")).is_purely_periodic());
  EXPECT_THROW(beta_expand(e4.one()), OutOfRangeError);
  EXPECT_THROW(beta_expand(-parse_element(e4, "b^-2")), OutOfRangeError);
}

TEST(BetaExpand, AgreesWithHighPrecisionGreedy) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const mpf_class beta = oracle::beta_mpf(f.k());
    std::mt19937_64 gen(17);
    for (int t = 0; t < 40; ++t) {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < f.degree(); ++i) c.push_back(make_rational(static_cast<long>(gen() % 13) - 6, 1 + static_cast<long>(gen() % 5)));
      const FieldElement x = f.from_coords(c).frac();
      const Expansion e = beta_expand(x);
      const auto ref = oracle::greedy_mpf(oracle::value_mpf(x, beta), beta, 60);
      for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(e.digit(i + 1), ref[i]) << k << " " << x.to_string();
    }
  }
}

TEST(BetaExpand, RoundTripAndAdmissible) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    std::mt19937_64 gen(23);
    for (int t = 0; t < 100; ++t) {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < f.degree(); ++i) c.push_back(make_rational(static_cast<long>(gen() % 41) - 20, 1 + static_cast<long>(gen() % 9)));
      const FieldElement x = f.from_coords(c).frac();
      const Expansion e = beta_expand(x);
      EXPECT_EQ(value_of(f, e), x) << k;
      EXPECT_TRUE(is_admissible(e, ds)) << k << " " << e.to_string();
    }
  }
}

TEST(Admissibility, Examples) {
  const DSequence g = d_sequence(field("1,1"));
  EXPECT_FALSE(is_admissible(Word{1, 1}, g));
  EXPECT_TRUE(is_admissible(Word{1, 0, 1}, g));
  const DSequence s = d_sequence(field("0,1,1"));
  EXPECT_FALSE(is_admissible(Word{1, 0, 0, 0, 1}, s));
  EXPECT_TRUE(is_admissible(Word{1, 0, 0, 0, 0, 1}, s));
  EXPECT_TRUE(is_admissible(Word(9, 0), s));
}

TEST(Admissibility, AgreesWithGreedyExhaustively) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    const Digit md = max_digit(f);
    const std::size_t len = md >= 3 ? 5 : 9;
    Word w(len, 0);
    std::size_t checked = 0;
    while (true) {
      ASSERT_EQ(is_admissible(w, ds), greedy_admissible(f, w)) << k;
      ++checked;
      std::size_t i = 0;
      while (i < len && w[i] == md) w[i++] = 0;
      if (i == len) break;
      ++w[i];
    }
    EXPECT_GT(checked, 0u);
  }
}

TEST(Admissibility, GreedyIsLexicographicallyMaximal) {
  for (const char* k : {"1,1", "1,1,1", "0,1,1", "1,0,0,1"}) {
    const NumberField f = field(k);
    const Digit md = max_digit(f);
    const std::size_t len = 8;
    std::map<std::vector<std::string>, std::vector<Word>> by_value;
    Word w(len, 0);
    while (true) {
      by_value[value_of(f, w).coord_strings()].push_back(w);
      std::size_t i = 0;
      while (i < len && w[i] == md) w[i++] = 0;
      if (i == len) break;
      ++w[i];
    }
    for (const auto& [key, words] : by_value) {
      const FieldElement v = value_of(f, words.front());
      if (!(v < f.one())) continue;
      const Word greedy = beta_expand(v).prefix(len);
      for (const Word& u : words) EXPECT_LE(u, greedy) << k;
    }
  }
}

TEST(Admissibility, GlueWithFourZeros) {
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    std::mt19937_64 gen(31);
    for (int t = 0; t < 1000; ++t) {
      Word u = random_admissible(f, ds, gen, 1 + gen() % 12);
      const Word v = random_admissible(f, ds, gen, 1 + gen() % 12);
      u.insert(u.end(), 4, 0);
      u.insert(u.end(), v.begin(), v.end());
      ASSERT_TRUE(is_admissible(u, ds)) << k;
    }
  }
}

TEST(Arithmetic, AddExpansions) {
  const NumberField g = field("1,1");
  ExpansionSum s = add_expansions(g, {1}, {0, 1});
  EXPECT_TRUE(s.expansion.is_zero());
  EXPECT_EQ(s.carry, 1);
  // 2/b = 1 + b^-3.
  s = add_expansions(g, {1}, {1});
  EXPECT_EQ(s.expansion.to_string(), "001|");
  EXPECT_EQ(s.carry, 1);
  const NumberField e4 = field("1,0,0,1");
  s = add_expansions(e4, {0, 1, 1}, {0, 0, 0, 0, 1});
  EXPECT_EQ(s.expansion.to_string(), "0000001|");
  EXPECT_EQ(s.carry, 1);
  std::mt19937_64 gen(3);
  for (const char* k : kFields) {
    const NumberField f = field(k);
    const DSequence ds = d_sequence(f);
    for (int t = 0; t < 50; ++t) {
      const Word a = random_admissible(f, ds, gen, 1 + gen() % 8), b = random_admissible(f, ds, gen, 1 + gen() % 8);
      const ExpansionSum r = add_expansions(f, a, b);
      EXPECT_EQ(value_of(f, r.expansion) + f.from_int(r.carry), value_of(f, a) + value_of(f, b));
    }
  }
}

TEST(Arithmetic, IsFinite) {
  EXPECT_TRUE(is_finite(field("1,1").one()));
  EXPECT_FALSE(is_finite(parse_element(field("3,-1"), "1-1/b")));
  EXPECT_TRUE(is_finite(parse_element(field("1,0,0,1"), "b^-2+b^-3+b^-5")));
  EXPECT_TRUE(is_finite(parse_element(field("1,1,1"), "7+3b")));
}

TEST(ValueOf, Offsets) {
  const NumberField g = field("1,1");
  EXPECT_EQ(value_of(g, Word{1, 1}), g.one());
  EXPECT_EQ(value_of(g, Word{1}, -1), g.one());
  EXPECT_EQ(value_of(g, Word{0, 0, 0}), g.zero());
  const NumberField e4 = field("1,0,0,1");
  EXPECT_EQ(value_of(e4, Word{0, 1, 1}), parse_element(e4, "b^-2+b^-3"));
  EXPECT_EQ(value_of(e4, Expansion({}, {1, 0, 0, 0, 0})) * (e4.one() - e4.beta_pow(-5)), e4.beta_pow(-1));
}

TEST(ZBeta, Example4) {
  const NumberField e4 = field("1,0,0,1");
  const ZBetaResult z = enumerate_z_beta(e4);
  std::set<std::vector<std::string>> got, want;
  for (const auto& e : z.elements) got.insert(e.alpha.coord_strings());
  want.insert(e4.zero().coord_strings());
  for (int j = 2; j <= 6; ++j) want.insert((e4.beta_pow(-j) + e4.beta_pow(-j - 1)).coord_strings());
  EXPECT_EQ(got, want);
  EXPECT_GE(z.dual_period, 10u);
}

TEST(ZBeta, FinitaryFields) {
  for (const char* k : {"1,1", "1,1,1", "3,4,1"}) {
    const ZBetaResult z = enumerate_z_beta(field(k));
    ASSERT_EQ(z.elements.size(), 1u) << k;
    EXPECT_TRUE(z.elements[0].alpha.is_zero());
    EXPECT_EQ(check_finitarity(field(k)).status, FinitarityStatus::Finitary);
  }
  const FinitarityResult r = check_finitarity(field("3,-1"));
  EXPECT_EQ(r.status, FinitarityStatus::NotFinitary);
  ASSERT_TRUE(r.witness.has_value());
}

TEST(ZBeta, ClosedUnderRotation) {
  for (const char* k : {"3,-1", "1,0,0,1"}) {
    const NumberField f = field(k);
    const ZBetaResult z = enumerate_z_beta(f);
    std::set<std::vector<std::string>> values;
    for (const auto& e : z.elements) values.insert(e.alpha.coord_strings());
    for (const auto& e : z.elements) {
      Word p = e.expansion.period;
      for (std::size_t r = 0; r < p.size(); ++r) {
        std::rotate(p.begin(), p.begin() + 1, p.end());
        EXPECT_TRUE(values.count(value_of(f, Expansion::purely_periodic(p)).coord_strings())) << k;
      }
    }
  }
}

TEST(WeakFinitary, Example4Certificate) {
  const NumberField e4 = field("1,0,0,1");
  const ZBetaResult z = enumerate_z_beta(e4);
  const WeakFinitaryCertificate c = check_weak_finitarity(e4, z);
  EXPECT_EQ(c.status, CertificateStatus::Proven);
  EXPECT_EQ(c.records.size(), 5u);
  EXPECT_EQ(validate_certificate(e4, c, &z), "");
  // The worked case: alpha + beta^-5 = 1 + beta^-7.
  const FieldElement alpha = parse_element(e4, "b^-2+b^-3");
  EXPECT_EQ(alpha + e4.beta_pow(-5), e4.one() + e4.beta_pow(-7));
  for (long n = 1; n <= 4; ++n) EXPECT_TRUE(is_finite(alpha + e4.beta_pow(-5 * n)));
  // Tampering is detected.
  WeakFinitaryCertificate bad = c;
  bad.records[0].f = Expansion::finite({1});
  EXPECT_NE(validate_certificate(e4, bad, &z), "");
  bad = c;
  bad.records.pop_back();
  EXPECT_NE(validate_certificate(e4, bad, &z), "");
}

TEST(WeakFinitary, TrivialForFinitaryFields) {
  for (const char* k : {"1,1", "1,1,1"}) {
    const NumberField f = field(k);
    const ZBetaResult z = enumerate_z_beta(f);
    const WeakFinitaryCertificate c = check_weak_finitarity(f, z);
    EXPECT_EQ(c.status, CertificateStatus::Proven);
    EXPECT_TRUE(c.records.empty());
    EXPECT_EQ(validate_certificate(f, c, &z), "");
  }
}

TEST(WeakFinitary, NonFinitaryQuadratic) {
  const NumberField f = field("3,-1");
  const ZBetaResult z = enumerate_z_beta(f);
  const WeakFinitaryCertificate c = check_weak_finitarity(f, z);
  EXPECT_EQ(c.status, CertificateStatus::Proven);
  EXPECT_EQ(validate_certificate(f, c, &z), "");
}

TEST(L1, SmallAndStable) {
  const NumberField g = field("1,1");
  const L1Estimate a = estimate_L1(g, 6), b = estimate_L1(g, 8);
  EXPECT_GT(a.value, 0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_GE(estimate_L1(field("1,0,0,1"), 8).value, 0);
}
