#pragma once

#include "assgp/registry.hpp"
#include "assgp/verify.hpp"

namespace assgp {

struct AssgpOptions {
  bool runVerification = true;
  std::size_t verifySamples = 48;  // per pipeline battery
  std::uint64_t seed = 1;
  int spotExponent = 10;           // |q| certified per factor
  // Beyond this alphabet size the sampled batteries shrink and word-length
  // caps tighten; everything that stays is still exact.
  std::uint64_t giantThreshold = 20000;
};

// Witness that g lies in the subgroup generated by Cyc(V_n) of the extended
// system: g factors as  inv(y_k) ... inv(y_1) * g0  with g0 = y_1...y_k * g.
// The factor list is kept in compact form; fresh-letter factors expand on
// demand (k can reach millions at the default chain schedule).
struct AssgpWitness {
  SystemPtr base;
  SystemPtr extended;  // the ASSGP B-enrichment; bottom level holds the factors
  Word g;
  Word g0;
  std::pair<GenId, GenId> fresh{0, 0};  // [lo, hi)
  Report pipeline;

  std::uint64_t freshCount() const { return fresh.second - fresh.first; }
  std::size_t factorCount() const {
    return static_cast<std::size_t>(freshCount()) + 1;
  }

  // Exact reduced product of the full factor list (single linear pass).
  Word foldExact() const;

  // The i-th factor (0-based): inv(y_k), ..., inv(y_1), then g0.
  Word factorAt(std::uint64_t i) const;

  // Deterministic spot subset of factor indices for power certification.
  std::vector<std::uint64_t> spotIndices(std::size_t cap) const;
};

// The ASSGP extension: chooses k = |X| * 4^n + 1 fresh letters, forms
// g0 = (y_1 ... y_k) * g, enriches by the cyclic groups of the fresh letters
// and of g0, and returns the extension together with the factorization
// witness. When runVerification is set, the extension/letter-bound/eta
// batteries run at construction and land in the witness report.
AssgpWitness assgpExtend(AlphabetRegistry& reg, SystemPtr base, const Word& g,
                         std::uint32_t stage, const AssgpOptions& opts = {});

}  // namespace assgp
