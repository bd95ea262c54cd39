// The coding map of the golden-mean automorphism for two homoclinic points.
#include <iostream>

#include "pisot/pisot.hpp"

using namespace pisot;

int main() {
  const NumberField g = NumberField::make(parse_recurrence("1,1"));
  for (const FieldElement& xi : {g.xi0(), g.one()}) {
    const HomoclinicSpec s = make_spec(g, xi);
    std::cout << "xi = " << xi.to_string() << ": predicted " << predicted_preimage_count(s).get_str() << "-to-1\n";

    // phi of the two-sided sequence ...000.1011000...
    const TorusPoint p = phi_eval(s, TwoSidedWord::window(1, {1, 0, 1, 1}));
    std::cout << "  phi(.1011) = (" << p.coords[0] << ", " << p.coords[1] << ")\n";

    InjectivityOptions o;
    o.trials = 2000;
    const InjectivityReport r = injectivity_experiment(s, o);
    std::cout << "  counterexamples: " << r.counterexamples.size() << "\n";
    if (r.census) std::cout << "  period-" << r.census->period << " census: mode " << r.census->mode << "\n";
  }
}
