#pragma once

#include <memory>
#include <string>
#include <vector>

#include "assgp/word.hpp"

namespace assgp {

// One level U_i of a finite neighbourhood system, stored symbolically:
// a finite explicit set, cyclic-subgroup descriptors (bottom level only),
// and a flag marking levels that additionally contain the conjugated
// squares  x * V_{i+1} * V_{i+1} * x^-1  of the level below.
struct LevelSpec {
  std::vector<Word> explicitWords;  // sorted, deduplicated, closed under inv
  std::vector<Word> cyclicGens;     // <c> is contained in this level
  std::vector<std::pair<GenId, GenId>> cyclicRanges;  // single fresh letters [lo,hi)
  bool recursiveRule = false;

  bool hasExplicit(const Word& w) const;
  bool hasCyclicData() const {
    return !cyclicGens.empty() || !cyclicRanges.empty();
  }
};

enum class SystemKind { Seed, Raw, Padding, Enrichment };
enum class EnrichKind { Generic, CyclicFresh, AssgpB };

class NbhdSystem;
using SystemPtr = std::shared_ptr<const NbhdSystem>;

// A finite neighbourhood system over a finite alphabet, kept symbolic with
// its construction history. Immutable after construction; all builders
// return shared pointers so provenance chains share structure.
//
// Level data never materializes the (generally infinite) enriched levels:
// membership, sampling and certificates are the only interfaces.
class NbhdSystem {
public:
  // All levels are the explicit set {e}.
  static SystemPtr seed(GenSet alphabet, int depth);

  // Standalone symbolic system, e.g. loaded from a manifest. No parent.
  static SystemPtr raw(GenSet alphabet, std::vector<LevelSpec> levels);

  // Extends by explicit {e} levels up to newDepth > depth.
  static SystemPtr padExtend(SystemPtr base, int newDepth);

  struct EnrichmentInput {
    std::vector<Word> explicitWords;  // symmetrized automatically
    std::vector<Word> cyclicGens;
    std::vector<std::pair<GenId, GenId>> cyclicRanges;
  };

  // The B-enrichment of base in F(ambient). ambient must contain the base
  // alphabet and every letter of B.
  static SystemPtr enrich(SystemPtr base, EnrichmentInput b, GenSet ambient);

  // Cyclic C-enrichment: B = union of the cyclic groups <c>, c in C.
  static SystemPtr cyclicEnrich(SystemPtr base, EnrichmentInput cyclicOnly,
                                GenSet ambient);

  // The B-enrichment used by the ASSGP extension: B is the union of the
  // cyclic groups of a fresh-letter block and of g0. Also constructs and
  // stores the companion fresh-only enrichment (the B'-system).
  static SystemPtr assgpEnrich(SystemPtr base, std::pair<GenId, GenId> fresh,
                               Word g0, GenSet ambient);

  const GenSet& alphabet() const { return alphabet_; }
  int depth() const { return depth_; }
  const LevelSpec& level(int i) const;

  SystemKind kind() const { return kind_; }
  EnrichKind enrichKind() const { return enrichKind_; }
  const SystemPtr& parent() const { return parent_; }
  int paddingParentDepth() const { return paddingParentDepth_; }
  const SystemPtr& companionPrime() const { return companion_; }
  const Word& assgpG0() const { return g0_; }

  // True when the construction provably extends the parent system
  // (fresh-letter cyclic enrichments, paddings and ASSGP enrichments).
  bool extendsParent() const;

  std::uint64_t hash() const { return hash_; }
  std::string describe() const;

  // Walks the parent chain (and does not cross companion links).
  static bool isAncestorOf(const NbhdSystem* ancestor, const NbhdSystem* sys);

private:
  NbhdSystem() = default;
  void finalizeHash();

  GenSet alphabet_;
  int depth_ = 0;
  std::vector<LevelSpec> levels_;
  SystemKind kind_ = SystemKind::Seed;
  EnrichKind enrichKind_ = EnrichKind::Generic;
  SystemPtr parent_;
  int paddingParentDepth_ = -1;
  SystemPtr companion_;
  Word g0_;
  std::uint64_t hash_ = 0;
};

// Whether certificates at this level may use the conjugated-square rule.
bool levelAcceptsConj(const NbhdSystem& sys, int level);

}  // namespace assgp
