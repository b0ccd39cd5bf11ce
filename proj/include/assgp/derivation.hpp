#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "assgp/nbhd_system.hpp"
#include "assgp/word.hpp"

namespace assgp {

struct DerivationTree;
using TreePtr = std::shared_ptr<const DerivationTree>;

// A certificate that a word belongs to level `level` of a system. Mirrors
// canonical representations: explicit leaves cite an inherited or seed
// level (with a sub-certificate for the parent system where one exists),
// base leaves cite the bottom-level set B, and Conj nodes apply the
// conjugated-square rule  x * u * v * x^-1  one level up.
struct DerivationTree {
  enum class Kind { Explicit, BaseWord, BasePower, Conj };

  Kind kind;
  int level = 0;
  Word word;

  TreePtr sub;  // Explicit only: certificate in the parent system

  Word cyclicGen;             // BasePower
  std::int64_t exponent = 0;  // BasePower

  Letter conjugator = 0;  // Conj; 0 encodes e
  TreePtr left, right;    // Conj children, one level down

  static TreePtr explicitLeaf(int level, Word w, TreePtr sub = nullptr);
  static TreePtr baseWord(int level, Word w);
  static TreePtr basePower(int level, Word gen, std::int64_t exponent);
  // Computes the node word from the children.
  static TreePtr conj(int level, Letter x, TreePtr leftChild, TreePtr rightChild);

  std::size_t nodeCount() const;
};

struct CheckResult {
  bool ok = true;
  std::string why;
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
  static CheckResult pass() { return {}; }
};

// Full recursive re-verification of a certificate against a system.
CheckResult checkCertificate(const SystemPtr& sys, const TreePtr& t, int level);

// e belongs to every level; this builds its canonical certificate.
TreePtr identityCert(const SystemPtr& sys, int level);

// Mirror certificate for the inverse word (levels are symmetric).
TreePtr invCert(const SystemPtr& sys, const TreePtr& t);

// Transports a certificate from an ancestor system to a descendant
// (U_i is contained in the extended level).
TreePtr liftCert(const SystemPtr& from, const SystemPtr& to, const TreePtr& t);

// For a fresh-letter cyclic enrichment V of U over X: maps a V-certificate
// to a U-certificate of the retraction of its word onto F(X).
TreePtr retractCert(const SystemPtr& sys, const TreePtr& t);

// For an ASSGP B-enrichment: replaces every <g0>-power leaf by an e-leaf,
// yielding a certificate in the companion fresh-only enrichment.
TreePtr etaCollapseCert(const SystemPtr& sys, const TreePtr& t);

// Level nesting U_{i+1} within U_i: certificate at level+1 -> level.
TreePtr nestDownCert(const SystemPtr& sys, const TreePtr& t);

// Transports a certificate of a descendant system down to an ancestor,
// for words over the ancestor's alphabet. Executes the extension property
// proof: padding unwrap, retraction collapse, and eta collapse; the word
// is asserted unchanged at every step.
TreePtr transportToAncestor(const SystemPtr& from, const SystemPtr& to,
                            const TreePtr& t);

// ---- canonical representations -------------------------------------------

struct Factor {
  enum class Origin { Explicit, CyclicPower, ConjugatorLetter };
  Word word;
  Origin origin;
  Word cyclicGen;             // CyclicPower only
  std::int64_t exponent = 0;  // CyclicPower only
};
using FactorSequence = std::vector<Factor>;

// In-order factor list of a derivation; the ordered product of the factors
// equals the tree's word.
FactorSequence flatten(const TreePtr& t);

Word foldFactors(const FactorSequence& fs);

// Letter-count bound for trees of fresh-letter enrichments:
// sum of |lett(a_l)| over the factors is at most |X| * 4^(depth - level).
// Returns the pair (sum, bound).
std::pair<std::uint64_t, std::uint64_t> letterBoundStats(
    const TreePtr& t, std::uint64_t baseAlphabetCount, int depth);
bool letterBound(const TreePtr& t, std::uint64_t baseAlphabetCount, int depth);

}  // namespace assgp
