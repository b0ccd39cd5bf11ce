#include "assgp/assgp_extend.hpp"

#include "assgp/decide.hpp"
#include "assgp/errors.hpp"

namespace assgp {

Word AssgpWitness::foldExact() const {
  std::uint64_t k = freshCount();
  std::vector<Letter> stack;
  stack.reserve(static_cast<std::size_t>(k) + g.size() + 1);
  for (GenId id = fresh.second; id-- > fresh.first;) {
    stack.push_back(letterOf(id, -1));  // inv(y_k), ..., inv(y_1): reduced as is
  }
  for (Letter l : g0) {
    if (!stack.empty() && stack.back() == invLetter(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word::fromReduced(std::move(stack));
}

Word AssgpWitness::factorAt(std::uint64_t i) const {
  std::uint64_t k = freshCount();
  if (i < k) {
    // factor i is inv(y_{k-i})
    GenId id = fresh.first + static_cast<GenId>(k - 1 - i);
    return Word::letter(letterOf(id, -1));
  }
  if (i == k) return g0;
  throw ValidationError("factor index out of range");
}

std::vector<std::uint64_t> AssgpWitness::spotIndices(std::size_t cap) const {
  std::uint64_t k = freshCount();
  std::vector<std::uint64_t> out;
  if (k + 1 <= cap) {
    for (std::uint64_t i = 0; i <= k; ++i) out.push_back(i);
    return out;
  }
  std::size_t half = (cap > 1 ? cap - 1 : 1) / 2;
  for (std::uint64_t i = 0; i < half; ++i) out.push_back(i);
  for (std::uint64_t i = k - half; i < k; ++i) out.push_back(i);
  out.push_back(k);  // g0 itself
  return out;
}

AssgpWitness assgpExtend(AlphabetRegistry& reg, SystemPtr base, const Word& g,
                         std::uint32_t stage, const AssgpOptions& opts) {
  if (!base) throw ValidationError("assgpExtend: null base system");
  if (!base->alphabet().containsWord(g)) {
    throw ValidationError("assgpExtend: g must be over the base alphabet");
  }
  for (Letter l : g) {
    if (!reg.knows(baseOf(l))) {
      throw ValidationError("assgpExtend: g contains an unregistered generator");
    }
  }

  std::uint64_t sizeX = base->alphabet().count();
  int n = base->depth();
  std::uint64_t k = sizeX;
  for (int i = 0; i < n; ++i) {
    k *= 4;
    if (k > (1ULL << 40)) {
      throw ValidationError("assgpExtend: fresh-letter count exceeds the supported range");
    }
  }
  k += 1;
  if (k > (1ULL << 31)) {
    throw ValidationError("assgpExtend: fresh-letter count exceeds the supported range");
  }

  auto freshRange = reg.addFreshBlock(k, stage);

  // g0 = (y_1 ... y_k) * g, concatenation without cancellation.
  std::vector<Letter> raw;
  raw.reserve(static_cast<std::size_t>(k) + g.size());
  for (GenId id = freshRange.first; id < freshRange.second; ++id) {
    raw.push_back(letterOf(id, 1));
  }
  for (Letter l : g) raw.push_back(l);
  Word g0 = Word::fromReduced(std::move(raw));

  GenSet ambient = base->alphabet().unionWith(
      GenSet::range(freshRange.first, freshRange.second));
  SystemPtr extended = NbhdSystem::assgpEnrich(base, freshRange, g0, ambient);

  AssgpWitness w;
  w.base = base;
  w.extended = extended;
  w.g = g;
  w.g0 = std::move(g0);
  w.fresh = freshRange;

  // The factorization identity is exact at every scale.
  if (w.foldExact() != g) {
    throw Error("assgpExtend: witness factorization does not fold back to g");
  }

  if (opts.runVerification) {
    bool giant = ambient.count() > opts.giantThreshold;
    VerifyOptions vo;
    vo.samples = giant ? std::min<std::size_t>(opts.verifySamples, 8)
                       : opts.verifySamples;
    vo.seed = opts.seed;
    vo.sampler.exponentBudget = 4;
    vo.sampler.maxWordLen = giant ? 4096 : (1 << 16);
    vo.conjugatorsPerSample = giant ? 2 : 4;

    Report sys = verifySystem(extended, vo);
    for (auto& e : sys.entries) w.pipeline.add("system " + e.condition, e.pass, e.detail);
    Report ext = isExtension(extended, base, vo);
    for (auto& e : ext.entries) w.pipeline.add("extension " + e.condition, e.pass, e.detail);

    // Fresh-letter support of g0 powers: no cancellation in any power, so
    // every fresh letter survives. Exact length arithmetic.
    bool powersOk = true;
    for (std::int64_t q = 1; q <= 4; ++q) {
      std::size_t want = static_cast<std::size_t>(q) * w.g0.size();
      if (want > (1 << 24)) break;  // longer powers follow the same pattern
      if (pow(w.g0, q).size() != want || pow(w.g0, -q).size() != want) {
        powersOk = false;
      }
    }
    w.pipeline.add("g0-powers-support", powersOk,
                   powersOk ? "powers of g0 never cancel; fresh letters survive"
                            : "a power of g0 cancelled");

    // Exclusion spot-check: sampled elements of the companion enrichment
    // meet <g0> only in e.
    const SystemPtr& prime = extended->companionPrime();
    TreeSampler sampler(prime, opts.seed ^ 0x77, vo.sampler);
    std::size_t tested = 0, clean = 0;
    for (int lvl = 0; lvl <= prime->depth(); ++lvl) {
      for (std::size_t s = 0; s < vo.samples; ++s) {
        auto it = sampler.sample(lvl);
        if (!it || it->word.empty()) continue;
        ++tested;
        auto q = cyclicMember(it->word, w.g0);
        if (!q.has_value()) ++clean;
      }
    }
    w.pipeline.add("B-minus-B'-disjointness", tested == clean,
                   std::to_string(clean) + "/" + std::to_string(tested) +
                       " sampled companion elements outside <g0>");

    // Letter-count bound on enumerated companion derivations.
    EnumOptions eo;
    eo.depthBudget = std::min(n, 2);
    eo.exponentBudget = 3;
    eo.maxItems = giant ? 40 : 200;
    std::size_t trees = 0, bounded = 0;
    for (int lvl = 0; lvl <= prime->depth(); ++lvl) {
      for (const auto& it : enumerateLevel(prime, lvl, eo)) {
        ++trees;
        if (letterBound(it.cert, sizeX, n)) ++bounded;
      }
    }
    w.pipeline.add("letter-bound", trees == bounded,
                   std::to_string(bounded) + "/" + std::to_string(trees) +
                       " enumerated derivations within |X|*4^(n-i)");
  }
  return w;
}

}  // namespace assgp
