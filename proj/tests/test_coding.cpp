#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

NumberField field(const char* k) { return NumberField::make(parse_recurrence(k)); }

const char* kPaperFields[] = {"1,1", "1,1,1", "3,4,1", "1,0,0,1"};

double wrap(double x) { return x - std::floor(x); }

std::vector<double> apply_companion(const NumberField& f, const std::vector<double>& x) {
  const IntegerMatrix M = companion_matrix(f);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    long double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += M(i, j).get_d() * static_cast<long double>(x[j]);
    y[i] = static_cast<double>(s - std::floor(s));
  }
  return y;
}

}  // namespace

TEST(Homoclinic, SpecValidation) {
  const NumberField g = field("1,1");
  EXPECT_NO_THROW(make_spec(g, g.one()).ratio());
  EXPECT_THROW(make_spec(g, g.from_rational(make_rational(1, 2))).ratio(), NotInHomoclinicGroupError);
  EXPECT_THROW(make_spec(field("2,2"), field("2,2").one()), NotAUnitError);
  EXPECT_THROW(predicted_preimage_count(make_spec(g, g.zero())), ZeroHomoclinicPointError);
  EXPECT_THROW(phi_exact(make_spec(g, g.zero()), TwoSidedWord::window(1, {1})), ZeroHomoclinicPointError);
}

TEST(Homoclinic, IntegerCoordinateMatchesUnstableProjection) {
  std::mt19937_64 gen(2);
  for (const char* k : kPaperFields) {
    const NumberField f = field(k);
    for (int t = 0; t < 10; ++t) {
      IntVector n(f.degree());
      for (auto& x : n) x = static_cast<long>(gen() % 7) - 3;
      const FieldElement xi = xi_from_integer_coordinate(f, n);
      const auto ref = oracle::unstable_projection(f.k(), n);
      FieldElement s = xi;
      for (std::size_t i = 0; i < f.degree(); ++i) {
        EXPECT_NEAR(static_cast<double>(s.approx()), static_cast<double>(ref[i]), 1e-9) << k;
        s = s.div_beta();
      }
      EXPECT_TRUE(f.in_homoclinic_lattice(xi));
    }
  }
}

TEST(Homoclinic, FundamentalPoints) {
  for (const char* k : kPaperFields) {
    const NumberField f = field(k);
    for (long e = -3; e <= 3; ++e) {
      EXPECT_TRUE(is_fundamental(make_spec(f, f.xi0() * f.beta_pow(e))));
      EXPECT_TRUE(is_fundamental(make_spec(f, -f.xi0() * f.beta_pow(e))));
    }
    EXPECT_EQ(predicted_preimage_count(make_spec(f, f.xi0())), 1) << k;
    EXPECT_EQ(predicted_preimage_count(make_spec(f, f.one())), Integer(abs(oracle::norm_of_derivative(f.k())))) << k;
  }
  EXPECT_EQ(predicted_preimage_count(make_spec(field("1,1"), field("1,1").one())), 5);
  // The units 3 + 1/b and 1 + b generate further fundamental points.
  const NumberField e3 = field("3,4,1");
  EXPECT_TRUE(is_fundamental(make_spec(e3, e3.xi0() * parse_element(e3, "3+1/b"))));
  const NumberField e4 = field("1,0,0,1");
  EXPECT_TRUE(is_fundamental(make_spec(e4, e4.xi0() * parse_element(e4, "1+b"))));
  EXPECT_FALSE(is_fundamental(make_spec(e4, e4.xi0() * e4.from_int(2))));
}

TEST(Coding, KernelSequencesMapToZero) {
  const NumberField e4 = field("1,0,0,1");
  const HomoclinicSpec s = make_spec(e4, e4.xi0());
  const auto kernel = kernel_sequences(e4);
  EXPECT_EQ(kernel.size(), 6u);
  for (const auto& e : kernel) {
    if (e.is_zero()) continue;
    for (const auto& c : phi_exact(s, TwoSidedWord::periodic(e.period))) EXPECT_TRUE(c.is_zero()) << e.to_string();
  }
  // A periodic sequence outside the kernel does not.
  bool all_zero = true;
  for (const auto& c : phi_exact(s, TwoSidedWord::periodic({1, 0, 0, 0, 0, 0}))) all_zero = all_zero && c.is_zero();
  EXPECT_FALSE(all_zero);
}

TEST(Coding, PeriodicSequencesGiveRationalPoints) {
  const NumberField t = field("1,1,1");
  const HomoclinicSpec s = make_spec(t, t.xi0());
  for (const Word& p : {Word{1}, Word{1, 0}, Word{1, 1, 0}, Word{1, 0, 1, 0, 0}})
    for (const auto& c : phi_exact(s, TwoSidedWord::periodic(p))) {
      EXPECT_TRUE(c.is_rational());
      EXPECT_GE(c.sign(), 0);
      EXPECT_TRUE(c < t.one());
    }
}

TEST(Coding, AdditiveAndShiftEquivariant) {
  std::mt19937_64 gen(4);
  for (const char* k : kPaperFields) {
    const NumberField f = field(k);
    const HomoclinicSpec s = make_spec(f, f.xi0());
    const Digit md = static_cast<Digit>(f.floor_beta().get_si());
    for (int t = 0; t < 30; ++t) {
      Word a(12), b(12), c(12);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<Digit>(gen() % static_cast<unsigned>(md + 1));
        b[i] = static_cast<Digit>(gen() % static_cast<unsigned>(md + 1));
        c[i] = a[i] + b[i];
      }
      const long off = static_cast<long>(gen() % 9) - 6;
      const TorusPoint pa = phi_eval(s, TwoSidedWord::window(off, a));
      const TorusPoint pb = phi_eval(s, TwoSidedWord::window(off, b));
      const TorusPoint pc = phi_eval(s, TwoSidedWord::window(off, c));
      std::vector<double> sum;
      for (std::size_t i = 0; i < pa.coords.size(); ++i) sum.push_back(wrap(pa.coords[i] + pb.coords[i]));
      EXPECT_LE(torus_distance(sum, pc.coords), 1e-9) << k;
      const TorusPoint shifted = phi_eval(s, TwoSidedWord::window(off, a).shifted());
      EXPECT_LE(torus_distance(apply_companion(f, pa.coords), shifted.coords), 1e-9) << k;
    }
  }
}

TEST(Coding, TwoSidedPeriodicTailsAreConsistent) {
  // A two-sided periodic word equals its own shift by one full period.
  const NumberField g = field("1,1");
  const HomoclinicSpec s = make_spec(g, g.xi0());
  TwoSidedWord w{{1, 0}, 1, {1, 0, 0, 1, 0}, {1, 0, 0}};
  TwoSidedWord p = TwoSidedWord::periodic({1, 0, 0});
  TwoSidedWord q = p;
  for (int i = 0; i < 3; ++i) q = q.shifted();
  EXPECT_EQ(phi_exact(s, p), phi_exact(s, q));
  for (long k = -10; k <= 10; ++k) EXPECT_EQ(p.at(k), q.at(k - 3));
  EXPECT_EQ(w.at(1), 1);
  EXPECT_EQ(w.at(0), 0);
  EXPECT_EQ(w.at(-1), 1);
  EXPECT_EQ(w.at(6), 1);
}

TEST(Coding, PhiEvalTolerance) {
  const NumberField g = field("1,1");
  const HomoclinicSpec s = make_spec(g, g.xi0());
  EXPECT_THROW(phi_eval(s, TwoSidedWord::window(1, {1}), 1e-20), PrecisionCapExceeded);
  const TorusPoint p = phi_eval(s, TwoSidedWord::window(1, {1}), 1e-8);
  EXPECT_LE(p.error_radius, 1e-8);
}

TEST(Coding, UnitToMatrix) {
  const NumberField e3 = field("3,4,1");
  const IntegerMatrix M = companion_matrix(e3);
  const IntegerMatrix A = unit_to_matrix(parse_element(e3, "3+1/b"), M);
  EXPECT_EQ(Integer(abs(A.det())), 1);
  EXPECT_EQ(A * M, M * A);
  EXPECT_THROW(unit_to_matrix(e3.from_int(2), M), NotAUnitError);
  EXPECT_THROW(unit_to_matrix(e3.beta(), companion_matrix(field("1,1,1"))), CharPolyMismatchError);
}

TEST(Injectivity, GoldenFundamentalHasNoCounterexamples) {
  const NumberField g = field("1,1");
  InjectivityOptions o;
  o.trials = 3000;
  const InjectivityReport r = injectivity_experiment(make_spec(g, g.xi0()), o);
  EXPECT_TRUE(r.fundamental);
  EXPECT_EQ(r.predicted_count, "1");
  EXPECT_TRUE(r.counterexamples.empty());
  ASSERT_TRUE(r.census.has_value());
  EXPECT_EQ(r.census->mode, 1u);
  EXPECT_EQ(r.census->words, r.census->images);
}

TEST(Injectivity, GoldenXiOneIsFiveToOne) {
  const NumberField g = field("1,1");
  InjectivityOptions o;
  o.trials = 500;
  const InjectivityReport r = injectivity_experiment(make_spec(g, g.one()), o);
  EXPECT_FALSE(r.fundamental);
  EXPECT_EQ(r.predicted_count, "5");
  ASSERT_TRUE(r.census.has_value());
  EXPECT_EQ(r.census->mode, 5u);
}
