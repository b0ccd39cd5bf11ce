#pragma once

#include <optional>
#include <random>

#include "assgp/derivation.hpp"
#include "assgp/nbhd_system.hpp"

namespace assgp {

struct EnumOptions {
  int depthBudget = 2;        // Conj nesting allowed below the start level
  int exponentBudget = 4;     // |q| for cyclic power leaves
  std::size_t maxItems = 400;          // cap per enumerated level
  std::size_t maxWordLen = 1 << 16;    // skip longer words
  std::size_t rangeGensCap = 2;        // representatives drawn per cyclic range
  std::size_t conjugatorCap = 16;      // signed conjugator letters besides e
};

struct Enumerated {
  Word word;
  TreePtr cert;
};

// Deterministic bounded enumeration of certified elements of one level:
// explicit leaves, cyclic powers in the order 0, 1, -1, 2, -2, ..., and
// conjugated-square combinations. Exhaustive up to the budgets and caps;
// distinct derivations with equal words are kept.
std::vector<Enumerated> enumerateLevel(const SystemPtr& sys, int level,
                                       const EnumOptions& opts);

// Seeded random sampler over the same space. Re-creatable from
// (system, seed, budgets); every sample re-verifies.
class TreeSampler {
public:
  TreeSampler(SystemPtr sys, std::uint64_t seed, EnumOptions opts = {});

  // One random certified element of the level; nullopt when the word-length
  // caps forced every retry out.
  std::optional<Enumerated> sample(int level);

private:
  std::optional<Enumerated> sampleAt(const SystemPtr& sys, int level, int depthLeft);
  Letter randomConjugator(const SystemPtr& sys);

  SystemPtr sys_;
  EnumOptions opts_;
  std::mt19937_64 rng_;
};

}  // namespace assgp
