#include "sorkin/core.hpp"

#include <algorithm>

namespace sorkin {

bool ValidationReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const AxiomCheck& a) { return a.passed; });
}

const AxiomCheck& ValidationReport::find(std::string_view axiom) const {
  for (const auto& a : axioms) {
    if (a.axiom == axiom) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "no such axiom: " + std::string(axiom));
}

}  // namespace sorkin
