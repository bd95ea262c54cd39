#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

const IntegerMatrix kExample5 = parse_matrix("1,1,0/2,3,1/1,1,1");
const IntegerMatrix kTribonacci = parse_matrix("1,1,1/1,0,0/0,1,0");
const IntegerMatrix kGolden = parse_matrix("1,1/1,0");

IntVector random_vector(std::mt19937_64& gen, std::size_t m, long h) {
  IntVector v(m);
  for (auto& x : v) x = static_cast<long>(gen() % static_cast<unsigned long>(2 * h + 1)) - h;
  return v;
}

IntegerMatrix random_unimodular(std::mt19937_64& gen, std::size_t m) {
  IntegerMatrix A = IntegerMatrix::identity(m);
  for (int s = 0; s < 6; ++s) {
    const std::size_t i = gen() % m, j = gen() % m;
    if (i == j) continue;
    IntegerMatrix E = IntegerMatrix::identity(m);
    E(i, j) = static_cast<long>(gen() % 3) - 1;
    A = A * E;
  }
  return A;
}

}  // namespace

TEST(Forms, Example5Matrix) {
  EXPECT_EQ(recurrence_of(kExample5), (IntVector{5, -4, 1}));
  const IntegerMatrix B = b_matrix(kExample5, {1, 0, 0});
  const IntegerMatrix C = companion_matrix(NumberField::make(recurrence_of(kExample5)));
  EXPECT_EQ(B * C, kExample5 * B);
  EXPECT_EQ(Integer(abs(B.det())), 1);
  EXPECT_EQ(B, parse_matrix("1,-2,1/2,-1,0/1,-1,0"));
}

TEST(Forms, Example5CubicUpToSign) {
  const auto f = form_expand(kExample5);
  EXPECT_EQ(f.size(), 9u);
  // The displayed cubic, written with exponents of (x, y, z).
  const std::vector<std::pair<std::vector<int>, long>> shown = {
      {{3, 0, 0}, 1}, {{2, 0, 1}, 2}, {{1, 2, 0}, -1}, {{1, 1, 1}, -1}, {{1, 0, 2}, 3},
      {{0, 3, 0}, 1}, {{0, 2, 1}, -3}, {{0, 1, 2}, 2}, {{0, 0, 3}, 1}};
  std::mt19937_64 gen(1);
  for (int t = 0; t < 50; ++t) {
    const IntVector v = random_vector(gen, 3, 6);
    Integer paper = 0;
    for (const auto& [e, c] : shown) paper += c * detail::monomial_value(e, v);
    EXPECT_EQ(eval_monomials(f, v), Integer(-paper));
  }
}

TEST(Forms, ExpansionAgreesWithDeterminant) {
  std::mt19937_64 gen(8);
  for (const IntegerMatrix& M : {kExample5, kTribonacci, kGolden, parse_matrix("1,0,0,1/1,0,0,0/0,1,0,0/0,0,1,0")}) {
    const auto f = form_expand(M);
    for (int t = 0; t < 40; ++t) {
      const IntVector v = random_vector(gen, M.rows(), 9);
      const Integer d = oracle::det_leibniz(b_matrix(M, v));
      EXPECT_EQ(eval_monomials(f, v), d);
      EXPECT_EQ(form_eval(M, v), d);
    }
  }
}

TEST(Forms, BinaryFormClosedExpression) {
  // For m = 2, f_M(x, y) = sigma (c x^2 - (a - d) x y - b y^2).
  std::mt19937_64 gen(12);
  int checked = 0;
  for (int t = 0; t < 4000 && checked < 60; ++t) {
    const IntegerMatrix M({random_vector(gen, 2, 4), random_vector(gen, 2, 4)});
    const Integer sigma = M.det();
    if (abs(sigma) != 1) continue;
    ++checked;
    const Integer a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
    for (int s = 0; s < 10; ++s) {
      const IntVector v = random_vector(gen, 2, 20);
      const Integer expect = sigma * (c * v[0] * v[0] - (a - d) * v[0] * v[1] - b * v[1] * v[1]);
      EXPECT_EQ(form_eval(M, v), expect);
    }
  }
  EXPECT_GT(checked, 20);
  EXPECT_EQ(form_to_string(form_expand(kGolden)), "-x^2 + xy + y^2");
}

TEST(Forms, SearchFindsExample5Solution) {
  const auto sols = search_unimodular(kExample5, 1);
  bool found = false;
  for (const auto& s : sols) {
    EXPECT_EQ(Integer(abs(s.value)), 1);
    EXPECT_EQ(form_eval(kExample5, s.n), s.value);
    if (s.n == IntVector{1, 0, 0}) found = true;
  }
  EXPECT_TRUE(found);
  const auto first = search_unimodular(kExample5, 1, true);
  EXPECT_EQ(first.size(), 1u);
}

TEST(Forms, CertificateConjugates) {
  std::mt19937_64 gen(6);
  for (const IntegerMatrix& M : {kExample5, kTribonacci, kGolden}) {
    const IntegerMatrix C = companion_matrix(NumberField::make(recurrence_of(M)));
    for (const auto& s : search_unimodular(M, 2)) {
      const IntegerMatrix B = conjugacy_certificate(M, s.n);
      EXPECT_EQ(B * C, M * B);
      EXPECT_TRUE(spans_lattice(M, s.n));
    }
    for (int t = 0; t < 30; ++t) {
      const IntVector v = random_vector(gen, M.rows(), 5);
      const bool unit = abs(form_eval(M, v)) == 1;
      EXPECT_EQ(spans_lattice(M, v), unit);
      if (!unit) EXPECT_THROW(conjugacy_certificate(M, v), NotUnimodularError);
    }
  }
}

TEST(Forms, TribonacciPowers) {
  const auto nn = nn_sequence(recurrence_of(kTribonacci), 6);
  ASSERT_EQ(nn.size(), 6u);
  EXPECT_EQ(nn[1], 2);
  EXPECT_EQ(nn[2], -1);
  EXPECT_EQ(nn[3], -8);
  EXPECT_EQ(nn[4], 29);
  for (std::size_t n = 1; n <= 6; ++n) {
    const PowerClassification c = classify_power_conjugacy(kTribonacci, n);
    if (n == 1 || n == 3) EXPECT_EQ(c.result, PowerConjugacy::Conjugate) << n;
    else EXPECT_EQ(c.result, PowerConjugacy::NotConjugate) << n;
  }
}

TEST(Forms, PowerFormsScaleByNn) {
  std::mt19937_64 gen(13);
  for (const IntegerMatrix& M : {kExample5, kTribonacci, kGolden}) {
    const auto nn = nn_sequence(recurrence_of(M), 3);
    for (std::size_t n = 1; n <= 3; ++n) {
      const IntegerMatrix Mn = M.pow(n);
      for (int t = 0; t < 20; ++t) {
        const IntVector v = random_vector(gen, M.rows(), 4);
        const Integer a = form_eval(Mn, v), b = nn[n - 1] * form_eval(M, v);
        EXPECT_TRUE(a == b || a == -b) << n;
      }
    }
  }
}

TEST(Forms, CubicN2Identity) {
  std::mt19937_64 gen(14);
  for (int t = 0; t < 50; ++t) {
    const IntVector k = random_vector(gen, 3, 9);
    EXPECT_EQ(nn_sequence(k, 2)[1], Integer(k[0] * k[1] + k[2]));
  }
}

TEST(Forms, ConjugationCovariance) {
  std::mt19937_64 gen(15);
  for (const IntegerMatrix& M : {kExample5, kTribonacci}) {
    for (int t = 0; t < 10; ++t) {
      const IntegerMatrix A = random_unimodular(gen, 3);
      const IntegerMatrix M2 = A * M * unimodular_inverse(A);
      EXPECT_TRUE(conjugation_covariance_check(M, M2, A));
      for (int s = 0; s < 5; ++s) {
        const IntVector v = random_vector(gen, 3, 5);
        EXPECT_EQ(form_eval(M2, A * v), Integer(A.det() * form_eval(M, v)));
      }
    }
  }
  EXPECT_THROW(conjugation_covariance_check(kExample5, kTribonacci, IntegerMatrix::identity(3)), NotConjugatePairError);
}

TEST(Forms, CharPolyChecks) {
  EXPECT_THROW(b_matrix(kExample5, IntVector{1, 1, 1}, {1, 0, 0}), CharPolyMismatchError);
  const auto mons = monomial_exponents(3, 3);
  EXPECT_EQ(mons.size(), 10u);
  EXPECT_EQ(mons.front(), (std::vector<int>{3, 0, 0}));
}
