// Builds a three-valued staircase on the integers, factors it into
// full-image maps, and prints the verified trace.

#include <iostream>

#include "ordchain/factorize.hpp"
#include "ordchain/json_io.hpp"

using namespace ordchain;

int main() {
  ChainSpec z({Segment::int_line()});
  PcMap alpha = step_map_from_image(
      z, {Element(0, -2), Element(0, -1), Element(0, 1)},
      {Bound::at(Element(0, -3), true), Bound::at(Element(0, 2), true)});

  FactorizationTrace trace = main_lemma_factorize(alpha, Element(0, 0));
  std::cout << "factors: " << trace.factors.size() << " (i = " << trace.i
            << ", k = " << trace.k << ")\n";

  auto report = verify_factorization(alpha, trace.factors, 41);
  std::cout << "verified: " << (report.pass ? "yes" : "no") << "\n";
  std::cout << verification_to_json(report).dump(2) << "\n";
  return report.pass ? 0 : 1;
}
