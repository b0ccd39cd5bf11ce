#include "assgp/enumerate.hpp"

#include <map>
#include <tuple>

#include "assgp/errors.hpp"

namespace assgp {

namespace {

using List = std::vector<Enumerated>;
using ListPtr = std::shared_ptr<const List>;

struct EnumCtx {
  const EnumOptions& opts;
  std::map<std::tuple<const NbhdSystem*, int, int>, ListPtr> memo;
};

std::vector<std::int64_t> exponentOrder(int budget) {
  std::vector<std::int64_t> qs{0};
  for (int q = 1; q <= budget; ++q) {
    qs.push_back(q);
    qs.push_back(-q);
  }
  return qs;
}

std::vector<Letter> conjugatorOrder(const NbhdSystem& sys, std::size_t cap) {
  std::vector<Letter> out{0};
  for (auto& [lo, hi] : sys.alphabet().ranges()) {
    for (GenId id = lo; id < hi; ++id) {
      if (out.size() >= 1 + 2 * cap) return out;
      out.push_back(letterOf(id, 1));
      out.push_back(letterOf(id, -1));
    }
  }
  return out;
}

ListPtr listFor(EnumCtx& ctx, const SystemPtr& sys, int level, int budget);

void pushPowers(EnumCtx& ctx, List& out, int level, const Word& gen) {
  for (std::int64_t q : exponentOrder(ctx.opts.exponentBudget)) {
    if (out.size() >= ctx.opts.maxItems) return;
    if (gen.size() * static_cast<std::size_t>(q < 0 ? -q : q) > ctx.opts.maxWordLen) {
      continue;
    }
    TreePtr t = DerivationTree::basePower(level, gen, q);
    out.push_back({t->word, t});
  }
}

void pushBottom(EnumCtx& ctx, List& out, const SystemPtr& sys, int level) {
  const LevelSpec& bottom = sys->level(level);
  for (const Word& w : bottom.explicitWords) {
    if (out.size() >= ctx.opts.maxItems) return;
    if (sys->kind() == SystemKind::Enrichment) {
      out.push_back({w, DerivationTree::baseWord(level, w)});
    }
  }
  for (const Word& c : bottom.cyclicGens) {
    pushPowers(ctx, out, level, c);
  }
  for (auto& [lo, hi] : bottom.cyclicRanges) {
    GenId take = static_cast<GenId>(
        std::min<std::uint64_t>(hi - lo, ctx.opts.rangeGensCap));
    for (GenId id = lo; id < lo + take; ++id) {
      pushPowers(ctx, out, level, Word::letter(letterOf(id, 1)));
    }
  }
}

ListPtr listFor(EnumCtx& ctx, const SystemPtr& sys, int level, int budget) {
  auto key = std::make_tuple(sys.get(), level, budget);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  auto out = std::make_shared<List>();
  auto push = [&](Word w, TreePtr t) {
    if (out->size() >= ctx.opts.maxItems) return;
    if (w.size() > ctx.opts.maxWordLen) return;
    out->push_back({std::move(w), std::move(t)});
  };

  switch (sys->kind()) {
    case SystemKind::Seed:
    case SystemKind::Raw: {
      for (const Word& w : sys->level(level).explicitWords) {
        push(w, DerivationTree::explicitLeaf(level, w));
      }
      if (level == sys->depth() && sys->kind() == SystemKind::Raw) {
        const LevelSpec& bottom = sys->level(level);
        for (const Word& c : bottom.cyclicGens) pushPowers(ctx, *out, level, c);
        for (auto& [lo, hi] : bottom.cyclicRanges) {
          GenId take = static_cast<GenId>(
              std::min<std::uint64_t>(hi - lo, ctx.opts.rangeGensCap));
          for (GenId id = lo; id < lo + take; ++id) {
            pushPowers(ctx, *out, level, Word::letter(letterOf(id, 1)));
          }
        }
      }
      break;
    }
    case SystemKind::Padding: {
      if (level > sys->paddingParentDepth()) {
        push(Word(), DerivationTree::explicitLeaf(level, Word()));
      } else {
        ctx.memo[key] = listFor(ctx, sys->parent(), level, budget);
        return ctx.memo[key];
      }
      break;
    }
    case SystemKind::Enrichment: {
      ListPtr inherited = listFor(ctx, sys->parent(), level, budget);
      for (const Enumerated& it : *inherited) {
        push(it.word, DerivationTree::explicitLeaf(level, it.word, it.cert));
      }
      if (level == sys->depth()) {
        pushBottom(ctx, *out, sys, level);
      }
      break;
    }
  }

  // Conjugated-square combinations.
  if (level < sys->depth() && budget > 0 && levelAcceptsConj(*sys, level) &&
      out->size() < ctx.opts.maxItems) {
    ListPtr below = listFor(ctx, sys, level + 1, budget - 1);
    for (Letter x : conjugatorOrder(*sys, ctx.opts.conjugatorCap)) {
      for (const Enumerated& u : *below) {
        for (const Enumerated& v : *below) {
          if (out->size() >= ctx.opts.maxItems) break;
          TreePtr t = DerivationTree::conj(level, x, u.cert, v.cert);
          push(t->word, t);
        }
        if (out->size() >= ctx.opts.maxItems) break;
      }
      if (out->size() >= ctx.opts.maxItems) break;
    }
  }

  ListPtr result = out;
  ctx.memo[key] = result;
  return result;
}

}  // namespace

std::vector<Enumerated> enumerateLevel(const SystemPtr& sys, int level,
                                       const EnumOptions& opts) {
  if (!sys) throw ValidationError("enumerateLevel: null system");
  if (level < 0 || level > sys->depth()) throw ValidationError("level out of range");
  EnumCtx ctx{opts, {}};
  return *listFor(ctx, sys, level, opts.depthBudget);
}

TreeSampler::TreeSampler(SystemPtr sys, std::uint64_t seed, EnumOptions opts)
    : sys_(std::move(sys)), opts_(opts), rng_(seed) {}

Letter TreeSampler::randomConjugator(const SystemPtr& sys) {
  std::uint64_t n = sys->alphabet().count();
  std::uniform_int_distribution<std::uint64_t> d(0, 2 * n);
  std::uint64_t pick = d(rng_);
  if (pick == 0) return 0;
  --pick;
  int sign = (pick % 2 == 0) ? 1 : -1;
  std::uint64_t index = pick / 2;
  for (auto& [lo, hi] : sys->alphabet().ranges()) {
    std::uint64_t len = hi - lo;
    if (index < len) return letterOf(lo + static_cast<GenId>(index), sign);
    index -= len;
  }
  return 0;
}

std::optional<Enumerated> TreeSampler::sampleAt(const SystemPtr& sys, int level,
                                                int depthLeft) {
  switch (sys->kind()) {
    case SystemKind::Seed:
    case SystemKind::Raw: {
      const auto& ws = sys->level(level).explicitWords;
      if (ws.empty()) return std::nullopt;
      std::uniform_int_distribution<std::size_t> d(0, ws.size() - 1);
      const Word& w = ws[d(rng_)];
      return Enumerated{w, DerivationTree::explicitLeaf(level, w)};
    }
    case SystemKind::Padding: {
      if (level > sys->paddingParentDepth()) {
        return Enumerated{Word(), DerivationTree::explicitLeaf(level, Word())};
      }
      return sampleAt(sys->parent(), level, depthLeft);
    }
    case SystemKind::Enrichment: {
      const LevelSpec& bottom = sys->level(sys->depth());
      bool atBottom = level == sys->depth();
      // production weights: inherited 2, bottom descriptor 4, conjugation 4
      int wInherited = 2;
      int wBottom = atBottom && (bottom.hasCyclicData() || !bottom.explicitWords.empty()) ? 4 : 0;
      int wConj = (!atBottom && depthLeft > 0) ? 4 : 0;
      std::uniform_int_distribution<int> d(0, wInherited + wBottom + wConj - 1);
      int pick = d(rng_);
      if (pick < wInherited) {
        auto sub = sampleAt(sys->parent(), level, depthLeft);
        if (!sub) return std::nullopt;
        return Enumerated{sub->word, DerivationTree::explicitLeaf(
                                         level, sub->word, sub->cert)};
      }
      pick -= wInherited;
      if (pick < wBottom) {
        // choose a descriptor uniformly: explicit words, then cyclic data
        std::uint64_t nExp = bottom.explicitWords.size();
        std::uint64_t nGen = bottom.cyclicGens.size();
        std::uint64_t nRange = 0;
        for (auto& [lo, hi] : bottom.cyclicRanges) nRange += hi - lo;
        std::uniform_int_distribution<std::uint64_t> pd(0, nExp + nGen + nRange - 1);
        std::uint64_t at = pd(rng_);
        if (at < nExp) {
          const Word& w = bottom.explicitWords[at];
          return Enumerated{w, DerivationTree::baseWord(level, w)};
        }
        at -= nExp;
        Word gen;
        if (at < nGen) {
          gen = bottom.cyclicGens[at];
        } else {
          at -= nGen;
          for (auto& [lo, hi] : bottom.cyclicRanges) {
            std::uint64_t len = hi - lo;
            if (at < len) {
              gen = Word::letter(letterOf(lo + static_cast<GenId>(at), 1));
              break;
            }
            at -= len;
          }
        }
        std::uniform_int_distribution<int> qd(-opts_.exponentBudget,
                                              opts_.exponentBudget);
        std::int64_t q = qd(rng_);
        while (gen.size() * static_cast<std::size_t>(q < 0 ? -q : q) >
               opts_.maxWordLen) {
          q /= 2;
        }
        TreePtr t = DerivationTree::basePower(level, gen, q);
        return Enumerated{t->word, t};
      }
      // conjugation
      for (int attempt = 0; attempt < 4; ++attempt) {
        Letter x = randomConjugator(sys);
        auto u = sampleAt(sys, level + 1, depthLeft - 1);
        auto v = sampleAt(sys, level + 1, depthLeft - 1);
        if (!u || !v) continue;
        if (u->word.size() + v->word.size() + 2 > opts_.maxWordLen) continue;
        TreePtr t = DerivationTree::conj(level, x, u->cert, v->cert);
        return Enumerated{t->word, t};
      }
      // fall back to the inherited branch
      auto sub = sampleAt(sys->parent(), level, depthLeft);
      if (!sub) return std::nullopt;
      return Enumerated{sub->word,
                        DerivationTree::explicitLeaf(level, sub->word, sub->cert)};
    }
  }
  return std::nullopt;
}

std::optional<Enumerated> TreeSampler::sample(int level) {
  if (level < 0 || level > sys_->depth()) throw ValidationError("level out of range");
  return sampleAt(sys_, level, opts_.depthBudget);
}

}  // namespace assgp
