// Hermitian Picard groups of a few rings, printed with generators.

#include <iostream>

#include "hermpic/hermpic.hpp"

int main() {
  using namespace hermpic;
  for (const char* s : {"imquad:-23:conj", "imquad:-84:conj", "finite:zmod8", "finite:gf9:frob"}) {
    const Ring r = load_ring(s);
    const PicHData ph = pich(r);
    std::cout << r.to_string() << ": " << ph.group().to_string() << "\n";
    for (const HermitianLine& l : ph.generators)
      std::cout << "  generator " << (l.module ? l.module->to_string() : std::string("R")) << " with form "
                << r.element_to_string(l.value) << "\n";
  }
  const PicPData p = pic_p(load_ring("finite:zmod3*zmod3:swap"));
  std::cout << "Pic^p of Z/3 x Z/3 with swap: " << p.total.group.to_string() << "\n";
}
