// Z_beta and a weak-finitarity certificate for x^4 - x^3 - 1.
#include <iostream>

#include "pisot/pisot.hpp"

using namespace pisot;

int main() {
  const NumberField f = NumberField::make(parse_recurrence("1,0,0,1"));
  std::cout << "beta = " << static_cast<double>(f.beta().approx()) << "\n";
  std::cout << "d'   = " << d_sequence(f).d_prime.to_string() << "\n";

  const ZBetaResult z = enumerate_z_beta(f);
  std::cout << z.elements.size() << " elements in Z_beta\n";
  for (const auto& e : z.elements) std::cout << "  " << e.expansion.to_string() << "  " << e.alpha.to_string() << "\n";

  const WeakFinitaryCertificate cert = check_weak_finitarity(f, z);
  std::cout << "certificate: " << to_string(cert.status) << "\n";
  for (const auto& r : cert.records)
    std::cout << "  alpha " << r.alpha_expansion.to_string() << " + " << r.f.to_string() << " = " << r.sum.to_string() << "\n";
  const std::string why = validate_certificate(f, cert, &z);
  std::cout << (why.empty() ? "validated" : "invalid: " + why) << "\n";
}
