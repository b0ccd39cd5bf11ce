#include "assgp/nbhd_system.hpp"

#include <algorithm>

#include "assgp/errors.hpp"
#include "assgp/hash.hpp"

namespace assgp {

bool LevelSpec::hasExplicit(const Word& w) const {
  return std::binary_search(explicitWords.begin(), explicitWords.end(), w);
}

namespace {

std::vector<Word> symmetrizeSort(std::vector<Word> ws) {
  std::size_t n = ws.size();
  for (std::size_t i = 0; i < n; ++i) ws.push_back(inv(ws[i]));
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

// Deduplicates cyclic descriptors, identifying c with c^-1. Keeps the input
// order of first occurrence.
std::vector<Word> dedupeCyclic(std::vector<Word> gens) {
  std::vector<Word> out;
  for (Word& c : gens) {
    if (c.empty()) continue;
    bool seen = false;
    for (const Word& d : out) {
      if (c == d || c == inv(d)) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(c));
  }
  return out;
}

void hashLevel(Fnv64& h, const LevelSpec& lv) {
  h.u64(lv.explicitWords.size());
  for (const Word& w : lv.explicitWords) h.span<Letter>(w.letters());
  h.u64(lv.cyclicGens.size());
  for (const Word& w : lv.cyclicGens) h.span<Letter>(w.letters());
  h.u64(lv.cyclicRanges.size());
  for (auto& [lo, hi] : lv.cyclicRanges) {
    h.u32(lo);
    h.u32(hi);
  }
  h.u32(lv.recursiveRule ? 1 : 0);
}

}  // namespace

SystemPtr NbhdSystem::seed(GenSet alphabet, int depth) {
  if (alphabet.empty()) throw ValidationError("seed system needs a nonempty alphabet");
  if (depth < 0) throw ValidationError("depth must be nonnegative");
  auto sys = std::shared_ptr<NbhdSystem>(new NbhdSystem());
  sys->alphabet_ = std::move(alphabet);
  sys->depth_ = depth;
  sys->levels_.resize(depth + 1);
  for (auto& lv : sys->levels_) lv.explicitWords = {Word()};
  sys->kind_ = SystemKind::Seed;
  sys->finalizeHash();
  return sys;
}

SystemPtr NbhdSystem::raw(GenSet alphabet, std::vector<LevelSpec> levels) {
  if (alphabet.empty()) throw ValidationError("system needs a nonempty alphabet");
  if (levels.empty()) throw ValidationError("system needs at least one level");
  auto sys = std::shared_ptr<NbhdSystem>(new NbhdSystem());
  sys->alphabet_ = std::move(alphabet);
  sys->depth_ = static_cast<int>(levels.size()) - 1;
  for (auto& lv : levels) {
    std::sort(lv.explicitWords.begin(), lv.explicitWords.end());
    lv.explicitWords.erase(
        std::unique(lv.explicitWords.begin(), lv.explicitWords.end()),
        lv.explicitWords.end());
  }
  sys->levels_ = std::move(levels);
  sys->kind_ = SystemKind::Raw;
  sys->finalizeHash();
  return sys;
}

SystemPtr NbhdSystem::padExtend(SystemPtr base, int newDepth) {
  if (!base) throw ValidationError("padExtend: null base");
  if (newDepth <= base->depth_) {
    throw ValidationError("padExtend: new depth must exceed the current depth");
  }
  auto sys = std::shared_ptr<NbhdSystem>(new NbhdSystem());
  sys->alphabet_ = base->alphabet_;
  sys->depth_ = newDepth;
  sys->levels_.resize(newDepth + 1);
  for (int i = base->depth_ + 1; i <= newDepth; ++i) {
    sys->levels_[i].explicitWords = {Word()};
  }
  sys->kind_ = SystemKind::Padding;
  sys->paddingParentDepth_ = base->depth_;
  sys->parent_ = std::move(base);
  sys->finalizeHash();
  return sys;
}

SystemPtr NbhdSystem::enrich(SystemPtr base, EnrichmentInput b, GenSet ambient) {
  if (!base) throw ValidationError("enrich: null base");
  if (!ambient.containsAll(base->alphabet())) {
    throw ValidationError("enrich: ambient alphabet must contain the base alphabet");
  }
  for (const Word& w : b.explicitWords) {
    if (!ambient.containsWord(w)) {
      throw ValidationError("enrich: explicit word not over the ambient alphabet");
    }
  }
  for (const Word& w : b.cyclicGens) {
    if (!ambient.containsWord(w)) {
      throw ValidationError("enrich: cyclic generator not over the ambient alphabet");
    }
  }
  for (auto& [lo, hi] : b.cyclicRanges) {
    if (lo >= hi || !ambient.containsAll(GenSet::range(lo, hi))) {
      throw ValidationError("enrich: cyclic range not over the ambient alphabet");
    }
  }

  auto sys = std::shared_ptr<NbhdSystem>(new NbhdSystem());
  sys->alphabet_ = std::move(ambient);
  sys->depth_ = base->depth_;
  sys->levels_.resize(sys->depth_ + 1);
  for (int i = 0; i < sys->depth_; ++i) sys->levels_[i].recursiveRule = true;
  LevelSpec& bottom = sys->levels_[sys->depth_];
  bottom.explicitWords = symmetrizeSort(std::move(b.explicitWords));
  bottom.cyclicGens = dedupeCyclic(std::move(b.cyclicGens));
  bottom.cyclicRanges = std::move(b.cyclicRanges);
  std::sort(bottom.cyclicRanges.begin(), bottom.cyclicRanges.end());

  sys->kind_ = SystemKind::Enrichment;
  // Fresh-letter cyclic enrichments: no explicit part beyond e, every
  // descriptor entirely over letters outside the base alphabet.
  bool fresh = true;
  for (const Word& w : bottom.explicitWords) {
    if (!w.empty()) fresh = false;
  }
  for (const Word& c : bottom.cyclicGens) {
    for (Letter l : c) {
      if (base->alphabet().contains(baseOf(l))) fresh = false;
    }
  }
  for (auto& [lo, hi] : bottom.cyclicRanges) {
    if (base->alphabet().intersectsRange(lo, hi)) fresh = false;
  }
  sys->enrichKind_ = fresh ? EnrichKind::CyclicFresh : EnrichKind::Generic;
  sys->parent_ = std::move(base);
  sys->finalizeHash();
  return sys;
}

SystemPtr NbhdSystem::cyclicEnrich(SystemPtr base, EnrichmentInput cyclicOnly,
                                   GenSet ambient) {
  if (!cyclicOnly.explicitWords.empty()) {
    throw ValidationError("cyclicEnrich: only cyclic descriptors allowed");
  }
  return enrich(std::move(base), std::move(cyclicOnly), std::move(ambient));
}

SystemPtr NbhdSystem::assgpEnrich(SystemPtr base, std::pair<GenId, GenId> fresh,
                                  Word g0, GenSet ambient) {
  if (!base) throw ValidationError("assgpEnrich: null base");
  EnrichmentInput primeInput;
  primeInput.cyclicRanges = {fresh};
  SystemPtr prime = cyclicEnrich(base, primeInput, ambient);

  EnrichmentInput input;
  input.cyclicRanges = {fresh};
  input.cyclicGens = {g0};
  SystemPtr full = enrich(base, std::move(input), std::move(ambient));
  auto sys = std::const_pointer_cast<NbhdSystem>(full);
  sys->enrichKind_ = EnrichKind::AssgpB;
  sys->companion_ = prime;
  sys->g0_ = std::move(g0);
  sys->finalizeHash();
  return sys;
}

const LevelSpec& NbhdSystem::level(int i) const {
  if (i < 0 || i > depth_) throw ValidationError("level out of range");
  return levels_[i];
}

bool NbhdSystem::extendsParent() const {
  switch (kind_) {
    case SystemKind::Seed:
    case SystemKind::Raw:
      return false;
    case SystemKind::Padding:
      return true;
    case SystemKind::Enrichment:
      return enrichKind_ != EnrichKind::Generic;
  }
  return false;
}

void NbhdSystem::finalizeHash() {
  Fnv64 h;
  h.u32(static_cast<std::uint32_t>(kind_));
  h.u32(static_cast<std::uint32_t>(enrichKind_));
  h.u64(alphabet_.ranges().size());
  for (auto& [lo, hi] : alphabet_.ranges()) {
    h.u32(lo);
    h.u32(hi);
  }
  h.i32(depth_);
  h.u64(levels_.size());
  for (const LevelSpec& lv : levels_) hashLevel(h, lv);
  h.u64(parent_ ? parent_->hash() : 0);
  h.u64(companion_ ? companion_->hash() : 0);
  h.span<Letter>(g0_.letters());
  hash_ = h.value();
}

std::string NbhdSystem::describe() const {
  switch (kind_) {
    case SystemKind::Seed:
      return "seed(depth " + std::to_string(depth_) + ")";
    case SystemKind::Raw:
      return "raw(depth " + std::to_string(depth_) + ")";
    case SystemKind::Padding:
      return "padding(to " + std::to_string(depth_) + ") of " + parent_->describe();
    case SystemKind::Enrichment: {
      const char* k = enrichKind_ == EnrichKind::CyclicFresh  ? "cyclic-fresh"
                      : enrichKind_ == EnrichKind::AssgpB     ? "assgp-B"
                                                              : "generic";
      return std::string(k) + "-enrichment of " + parent_->describe();
    }
  }
  return "?";
}

bool NbhdSystem::isAncestorOf(const NbhdSystem* ancestor, const NbhdSystem* sys) {
  while (sys) {
    if (sys == ancestor) return true;
    sys = sys->parent().get();
  }
  return false;
}

bool levelAcceptsConj(const NbhdSystem& sys, int level) {
  if (level < 0 || level >= sys.depth()) return false;
  switch (sys.kind()) {
    case SystemKind::Seed:
      return false;
    case SystemKind::Raw:
      return sys.level(level).recursiveRule;
    case SystemKind::Padding:
      // At the boundary level the children would live one past the parent's
      // depth, so only strictly-above levels take the structural rule.
      if (level > sys.paddingParentDepth()) return true;
      return levelAcceptsConj(*sys.parent(), level);
    case SystemKind::Enrichment:
      return true;
  }
  return false;
}

}  // namespace assgp
