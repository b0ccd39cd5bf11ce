#pragma once

#include <optional>
#include <vector>

#include "assgp/word.hpp"

namespace assgp {

// A product  w_1 * v_1 * w_2 * v_2 * ... * w_n * v_n * w_{n+1}  where every
// filler v_i is g0 or g0^-1, g0 contains the distinguished letter exactly
// once, the walls avoid that letter, and so does the reduced product.
struct SandwichInstance {
  Word g0;
  GenId distinguishedLetter = 0;  // x_j
  std::vector<Word> walls;        // n+1 entries
  std::vector<int> fillerSigns;   // n entries; +1 is g0, -1 is g0^-1
};

// nullopt when the invariants hold, otherwise the violated clause.
std::optional<std::string> validateSandwich(const SandwichInstance& inst);

// Deletes the fillers by iterated cancellation of adjacent inverse pairs
// across empty walls (the well-founded rewriting the structure admits) and
// cross-checks the result against direct reduction of the full product.
// Throws ValidationError when the invariants fail.
Word sandwichReduce(const SandwichInstance& inst);

struct EtaEqualityResult {
  bool equal = false;
  Word lhs, rhs;
};

// For factors a_1..a_m: replaces every <g0>-factor by e and reduces both
// products. Hypotheses: x_j occurs exactly once in g0, x_j is absent from
// the reduced product, and every factor containing x_j is a nontrivial
// power of g0. Violations raise ValidationError naming the clause.
EtaEqualityResult etaEquality(const std::vector<Word>& factors, const Word& g0,
                              GenId xj);

}  // namespace assgp
