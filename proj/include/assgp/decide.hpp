#pragma once

#include <optional>

#include "assgp/derivation.hpp"
#include "assgp/enumerate.hpp"
#include "assgp/nbhd_system.hpp"

namespace assgp {

struct SearchBudget {
  int maxExponent = 16;            // cyclic exponents explored by the search
  std::uint64_t maxNodes = 100000; // decision-node budget
  std::size_t maxCandidates = 400; // enumerated witnesses per level
  std::size_t maxWordLen = 1 << 14;
};

enum class VerdictKind { In, NotIn, Unknown };

// One step of a proven exclusion; rule names the condition used.
struct ExclusionStep {
  std::string rule;
  std::uint64_t systemHash = 0;
  int level = 0;
  std::string detail;
};

struct ExclusionProof {
  std::vector<ExclusionStep> steps;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  TreePtr cert;                             // In
  std::optional<ExclusionProof> exclusion;  // NotIn
  std::uint64_t nodesSpent = 0;

  bool in() const { return kind == VerdictKind::In; }
  bool notIn() const { return kind == VerdictKind::NotIn; }
  bool unknown() const { return kind == VerdictKind::Unknown; }

  static Verdict inWith(TreePtr t) { return {VerdictKind::In, std::move(t), {}, 0}; }
  static Verdict notInBy(ExclusionProof p) {
    return {VerdictKind::NotIn, nullptr, std::move(p), 0};
  }
  static Verdict unknownBudget() { return {}; }
};

// Decides membership of w in level `level` of the system. Sound in both
// definite directions: In certificates re-verify, NotIn verdicts carry an
// exclusion chain justified by the extension and retraction properties.
// Words whose letters all predate the newest enrichment are decided
// exactly; words with newest-stage letters fall back to a budget-bounded
// witness search and may come back Unknown.
Verdict memberDecide(const SystemPtr& sys, int level, const Word& w,
                     const SearchBudget& budget = {});

}  // namespace assgp
