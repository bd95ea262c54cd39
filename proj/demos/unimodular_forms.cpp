// Conjugating an integer matrix to its companion matrix through the form f_M.
#include <iostream>

#include "pisot/pisot.hpp"

using namespace pisot;

int main() {
  const IntegerMatrix M = parse_matrix("1,1,0/2,3,1/1,1,1");
  std::cout << "f_M = " << form_to_string(form_expand(M)) << "\n";

  const auto sols = search_unimodular(M, 1);
  std::cout << sols.size() << " solutions of f_M = +-1 with entries in [-1,1]\n";
  const IntegerMatrix B = conjugacy_certificate(M, sols.front().n);
  const IntegerMatrix C = companion_matrix(NumberField::make(recurrence_of(M)));
  std::cout << "B = " << B.to_string() << ", B C == M B: " << (B * C == M * B ? "yes" : "no") << "\n";

  // Which powers of the tribonacci matrix stay conjugate to a companion matrix.
  const IntegerMatrix T = parse_matrix("1,1,1/1,0,0/0,1,0");
  const auto nn = nn_sequence(recurrence_of(T), 6);
  for (std::size_t n = 1; n <= 6; ++n)
    std::cout << "  n=" << n << "  N_n=" << nn[n - 1].get_str() << "  " << to_string(classify_power_conjugacy(T, n).result) << "\n";
}
