#include "assgp/decide.hpp"

#include <array>
#include <map>
#include <tuple>

#include "assgp/errors.hpp"

namespace assgp {

namespace {

struct DecideCtx {
  const SearchBudget& budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::map<std::tuple<const NbhdSystem*, int, Word>, Verdict> memo;
  std::map<std::pair<const NbhdSystem*, int>,
           std::shared_ptr<const std::vector<Enumerated>>>
      candidates;
};

ExclusionStep step(const char* rule, const NbhdSystem& sys, int level,
                   std::string detail = "") {
  return {rule, sys.hash(), level, std::move(detail)};
}

Verdict decide(DecideCtx& ctx, const SystemPtr& sys, int level, const Word& w);

const std::vector<Enumerated>& candidatesFor(DecideCtx& ctx, const SystemPtr& sys,
                                             int level) {
  auto key = std::make_pair(sys.get(), level);
  auto it = ctx.candidates.find(key);
  if (it != ctx.candidates.end()) return *it->second;
  EnumOptions opts;
  opts.depthBudget = sys->depth() - level;
  opts.exponentBudget = ctx.budget.maxExponent;
  opts.maxItems = ctx.budget.maxCandidates;
  opts.maxWordLen = ctx.budget.maxWordLen;
  auto list = std::make_shared<std::vector<Enumerated>>(
      enumerateLevel(sys, level, opts));
  ctx.candidates.emplace(key, list);
  return *list;
}

// Membership of w in the bottom-level base set B of an enrichment.
TreePtr bottomBaseCert(const SystemPtr& sys, int level, const Word& w) {
  const LevelSpec& bottom = sys->level(level);
  if (bottom.hasExplicit(w)) return DerivationTree::baseWord(level, w);
  for (const Word& c : bottom.cyclicGens) {
    if (auto q = cyclicMember(w, c)) return DerivationTree::basePower(level, c, *q);
  }
  if (!w.empty()) {
    // single-letter fresh descriptors: w must be a uniform power y^q
    Letter first = w[0];
    bool uniform = true;
    for (Letter l : w) {
      if (l != first) uniform = false;
    }
    if (uniform) {
      GenId id = baseOf(first);
      for (auto& [lo, hi] : bottom.cyclicRanges) {
        if (id >= lo && id < hi) {
          std::int64_t q = static_cast<std::int64_t>(w.size());
          if (signOf(first) < 0) q = -q;
          return DerivationTree::basePower(level, Word::letter(letterOf(id, 1)), q);
        }
      }
    }
  }
  return nullptr;
}

std::vector<Letter> conjugatorOrderForSearch(const SystemPtr& sys) {
  std::vector<Letter> out;
  std::size_t cap = 8;
  for (auto& [lo, hi] : sys->alphabet().ranges()) {
    for (GenId id = lo; id < hi; ++id) {
      if (out.size() >= 2 * cap) return out;
      out.push_back(letterOf(id, 1));
      out.push_back(letterOf(id, -1));
    }
  }
  return out;
}

Verdict searchWitness(DecideCtx& ctx, const SystemPtr& sys, int level,
                      const Word& w) {
  bool sawUnknown = false;
  // conjugators: e, then letters of w, then the first few alphabet letters
  std::vector<Letter> xs{0};
  for (GenId id : lett(w).toIds(16)) {
    xs.push_back(letterOf(id, 1));
    xs.push_back(letterOf(id, -1));
  }
  for (Letter x : conjugatorOrderForSearch(sys)) {
    bool dup = false;
    for (Letter seen : xs) {
      if (seen == x) dup = true;
    }
    if (!dup) xs.push_back(x);
  }
  for (Letter x : xs) {
    Word wPrime;
    if (x == 0) {
      wPrime = w;
    } else {
      Word xs1 = Word::letter(x);
      wPrime = reduceConcat(std::array<Word, 3>{inv(xs1), w, xs1});
    }
    for (const Enumerated& u : candidatesFor(ctx, sys, level + 1)) {
      if (ctx.nodes >= ctx.budget.maxNodes) {
        ctx.exhausted = true;
        return Verdict::unknownBudget();
      }
      Word v = mul(inv(u.word), wPrime);
      if (v.size() > ctx.budget.maxWordLen) continue;
      Verdict sub = decide(ctx, sys, level + 1, v);
      if (sub.in()) {
        return Verdict::inWith(DerivationTree::conj(level, x, u.cert, sub.cert));
      }
      if (sub.unknown()) sawUnknown = true;
    }
  }
  (void)sawUnknown;
  return Verdict::unknownBudget();
}

Verdict decide(DecideCtx& ctx, const SystemPtr& sys, int level, const Word& w) {
  if (level < 0 || level > sys->depth()) throw ValidationError("level out of range");
  if (++ctx.nodes > ctx.budget.maxNodes) {
    ctx.exhausted = true;
    return Verdict::unknownBudget();
  }
  if (!sys->alphabet().containsWord(w)) {
    return Verdict::notInBy(
        {{step("not-over-alphabet", *sys, level, "condition (1_U)")}});
  }

  bool memoizable = w.size() <= 256;
  auto key = std::make_tuple(sys.get(), level, w);
  if (memoizable) {
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  }
  auto remember = [&](Verdict v) {
    if (memoizable && !v.unknown()) ctx.memo[key] = v;
    return v;
  };

  switch (sys->kind()) {
    case SystemKind::Seed:
    case SystemKind::Raw: {
      const LevelSpec& lv = sys->level(level);
      if (lv.hasExplicit(w)) {
        return remember(Verdict::inWith(DerivationTree::explicitLeaf(level, w)));
      }
      if (sys->kind() == SystemKind::Raw) {
        if (level == sys->depth()) {
          if (TreePtr t = bottomBaseCert(sys, level, w)) {
            return remember(Verdict::inWith(std::move(t)));
          }
        }
        if (level < sys->depth() && lv.recursiveRule) {
          return searchWitness(ctx, sys, level, w);
        }
      }
      return remember(Verdict::notInBy(
          {{step("explicit-miss", *sys, level, "finite lookup failed")}}));
    }

    case SystemKind::Padding: {
      if (level > sys->paddingParentDepth()) {
        if (w.empty()) {
          return remember(
              Verdict::inWith(DerivationTree::explicitLeaf(level, Word())));
        }
        return remember(Verdict::notInBy(
            {{step("explicit-miss", *sys, level, "padding level is {e}")}}));
      }
      return remember(decide(ctx, sys->parent(), level, w));
    }

    case SystemKind::Enrichment: {
      const SystemPtr& base = sys->parent();
      bool overBase = base->alphabet().containsWord(w);
      if (overBase) {
        Verdict fromBase = decide(ctx, base, level, w);
        if (fromBase.in()) {
          return remember(Verdict::inWith(
              DerivationTree::explicitLeaf(level, w, fromBase.cert)));
        }
        if (fromBase.notIn() && sys->extendsParent() && level < sys->depth()) {
          ExclusionProof p = std::move(*fromBase.exclusion);
          p.steps.insert(p.steps.begin(),
                         step("condition-(iii)", *sys, level,
                              "V_i over the base alphabet traces to U_i"));
          return remember(Verdict::notInBy(std::move(p)));
        }
        if (level == sys->depth()) {
          // V_n = U_n union B exactly
          if (TreePtr t = bottomBaseCert(sys, level, w)) {
            return remember(Verdict::inWith(std::move(t)));
          }
          if (fromBase.notIn()) {
            ExclusionProof p = std::move(*fromBase.exclusion);
            p.steps.insert(p.steps.begin(),
                           step("bottom-miss", *sys, level,
                                "w is outside B and outside U_n"));
            return remember(Verdict::notInBy(std::move(p)));
          }
          return Verdict::unknownBudget();
        }
        if (fromBase.notIn() && !sys->extendsParent()) {
          // generic enrichment: the trace equality is unavailable; search
          return searchWitness(ctx, sys, level, w);
        }
        if (fromBase.unknown()) {
          return level < sys->depth() ? searchWitness(ctx, sys, level, w)
                                      : Verdict::unknownBudget();
        }
      }

      // Words carrying newest-stage letters.
      if (level == sys->depth()) {
        if (TreePtr t = bottomBaseCert(sys, level, w)) {
          return remember(Verdict::inWith(std::move(t)));
        }
        // w has fresh letters, so it is not in U_n (a subset of the base
        // group); and it failed the B checks.
        return remember(Verdict::notInBy(
            {{step("bottom-miss", *sys, level,
                   "V_n = U_n (base group) plus B; both exclude w")}}));
      }

      if (sys->enrichKind() == EnrichKind::CyclicFresh) {
        Word image = retraction(base->alphabet(), w);
        Verdict r = decide(ctx, base, level, image);
        if (r.notIn()) {
          ExclusionProof p = std::move(*r.exclusion);
          p.steps.insert(p.steps.begin(),
                         step("retraction-violation", *sys, level,
                              "the retraction image escapes U_i"));
          return remember(Verdict::notInBy(std::move(p)));
        }
      }
      return searchWitness(ctx, sys, level, w);
    }
  }
  throw ValidationError("unreachable");
}

}  // namespace

Verdict memberDecide(const SystemPtr& sys, int level, const Word& w,
                     const SearchBudget& budget) {
  if (!sys) throw ValidationError("memberDecide: null system");
  if (level < 0 || level > sys->depth()) throw ValidationError("level out of range");
  DecideCtx ctx{budget, 0, false, {}, {}};
  Verdict v;
  if (w.empty()) {
    // e belongs to every level of every well-formed system
    try {
      v = Verdict::inWith(identityCert(sys, level));
    } catch (const Error&) {
      v = decide(ctx, sys, level, w);
    }
  } else {
    v = decide(ctx, sys, level, w);
  }
  v.nodesSpent = ctx.nodes;
  return v;
}

}  // namespace assgp
