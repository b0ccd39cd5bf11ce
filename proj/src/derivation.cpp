#include "assgp/derivation.hpp"

#include <array>

#include "assgp/errors.hpp"

namespace assgp {

namespace {

Word conjWord(Letter x, const Word& u, const Word& v) {
  if (x == 0) return mul(u, v);
  Word xs = Word::letter(x);
  return reduceConcat(std::array<Word, 4>{xs, u, v, inv(xs)});
}

// Matches a word against the bottom-level cyclic descriptors. Returns the
// descriptor (as stored) or nothing.
const Word* matchCyclicGen(const LevelSpec& bottom, const Word& gen) {
  for (const Word& c : bottom.cyclicGens) {
    if (gen == c || gen == inv(c)) return &c;
  }
  return nullptr;
}

bool inCyclicRanges(const LevelSpec& bottom, const Word& gen) {
  if (gen.size() != 1) return false;
  GenId id = baseOf(gen[0]);
  for (auto& [lo, hi] : bottom.cyclicRanges) {
    if (id >= lo && id < hi) return true;
  }
  return false;
}

}  // namespace

TreePtr DerivationTree::explicitLeaf(int level, Word w, TreePtr sub) {
  auto t = std::make_shared<DerivationTree>();
  t->kind = Kind::Explicit;
  t->level = level;
  t->word = std::move(w);
  t->sub = std::move(sub);
  return t;
}

TreePtr DerivationTree::baseWord(int level, Word w) {
  auto t = std::make_shared<DerivationTree>();
  t->kind = Kind::BaseWord;
  t->level = level;
  t->word = std::move(w);
  return t;
}

TreePtr DerivationTree::basePower(int level, Word gen, std::int64_t exponent) {
  auto t = std::make_shared<DerivationTree>();
  t->kind = Kind::BasePower;
  t->level = level;
  t->word = pow(gen, exponent);
  t->cyclicGen = std::move(gen);
  t->exponent = exponent;
  return t;
}

TreePtr DerivationTree::conj(int level, Letter x, TreePtr leftChild,
                             TreePtr rightChild) {
  auto t = std::make_shared<DerivationTree>();
  t->kind = Kind::Conj;
  t->level = level;
  t->word = conjWord(x, leftChild->word, rightChild->word);
  t->conjugator = x;
  t->left = std::move(leftChild);
  t->right = std::move(rightChild);
  return t;
}

std::size_t DerivationTree::nodeCount() const {
  std::size_t n = 1;
  if (sub) n += sub->nodeCount();
  if (left) n += left->nodeCount();
  if (right) n += right->nodeCount();
  return n;
}

CheckResult checkCertificate(const SystemPtr& sys, const TreePtr& t, int level) {
  if (!sys) return CheckResult::fail("null system");
  if (!t) return CheckResult::fail("null certificate");
  if (t->level != level) {
    return CheckResult::fail("level mismatch: node says " +
                             std::to_string(t->level) + ", expected " +
                             std::to_string(level));
  }
  if (level < 0 || level > sys->depth()) return CheckResult::fail("level out of range");
  if (!sys->alphabet().containsWord(t->word)) {
    return CheckResult::fail("word not over the system alphabet");
  }

  switch (sys->kind()) {
    case SystemKind::Seed:
    case SystemKind::Raw: {
      if (t->kind == DerivationTree::Kind::Explicit) {
        if (t->sub) return CheckResult::fail("explicit leaf at a root system carries a sub-certificate");
        if (!sys->level(level).hasExplicit(t->word)) {
          return CheckResult::fail("word not in the explicit level set");
        }
        return CheckResult::pass();
      }
      if (t->kind == DerivationTree::Kind::BaseWord ||
          t->kind == DerivationTree::Kind::BasePower) {
        if (level != sys->depth()) return CheckResult::fail("base leaf above the bottom level");
        const LevelSpec& bottom = sys->level(level);
        if (t->kind == DerivationTree::Kind::BaseWord) {
          if (!bottom.hasExplicit(t->word)) return CheckResult::fail("base word not in the bottom set");
          return CheckResult::pass();
        }
        if (!matchCyclicGen(bottom, t->cyclicGen) && !inCyclicRanges(bottom, t->cyclicGen)) {
          return CheckResult::fail("cyclic generator is not a bottom-level descriptor");
        }
        if (t->word != pow(t->cyclicGen, t->exponent)) {
          return CheckResult::fail("cyclic power does not recompute");
        }
        return CheckResult::pass();
      }
      // Conj
      if (!levelAcceptsConj(*sys, level)) {
        return CheckResult::fail("level has no conjugated-square closure");
      }
      break;  // falls through to the shared Conj check below
    }
    case SystemKind::Padding: {
      if (level <= sys->paddingParentDepth()) {
        return checkCertificate(sys->parent(), t, level);
      }
      if (!t->word.empty()) return CheckResult::fail("padding level only contains e");
      if (t->kind == DerivationTree::Kind::Explicit) {
        if (t->sub) return CheckResult::fail("padding-level leaf carries a sub-certificate");
        return CheckResult::pass();
      }
      if (t->kind != DerivationTree::Kind::Conj) {
        return CheckResult::fail("padding level admits only e-leaves and conjugations");
      }
      break;
    }
    case SystemKind::Enrichment: {
      switch (t->kind) {
        case DerivationTree::Kind::Explicit: {
          if (!t->sub) return CheckResult::fail("inherited leaf needs a parent certificate");
          if (t->sub->word != t->word) return CheckResult::fail("sub-certificate word mismatch");
          return checkCertificate(sys->parent(), t->sub, level);
        }
        case DerivationTree::Kind::BaseWord: {
          if (level != sys->depth()) return CheckResult::fail("base leaf above the bottom level");
          if (!sys->level(level).hasExplicit(t->word)) {
            return CheckResult::fail("base word not in B");
          }
          return CheckResult::pass();
        }
        case DerivationTree::Kind::BasePower: {
          if (level != sys->depth()) return CheckResult::fail("base leaf above the bottom level");
          const LevelSpec& bottom = sys->level(level);
          if (!matchCyclicGen(bottom, t->cyclicGen) && !inCyclicRanges(bottom, t->cyclicGen)) {
            return CheckResult::fail("cyclic generator is not a bottom-level descriptor");
          }
          if (t->word != pow(t->cyclicGen, t->exponent)) {
            return CheckResult::fail("cyclic power does not recompute");
          }
          return CheckResult::pass();
        }
        case DerivationTree::Kind::Conj:
          if (level >= sys->depth()) return CheckResult::fail("conjugation at the bottom level");
          break;
      }
      break;
    }
  }

  // Shared Conj validation.
  if (t->kind != DerivationTree::Kind::Conj) {
    return CheckResult::fail("unexpected node kind for this system");
  }
  if (!t->left || !t->right) return CheckResult::fail("conjugation node missing children");
  if (t->conjugator != 0 && !sys->alphabet().contains(baseOf(t->conjugator))) {
    return CheckResult::fail("conjugator letter outside the alphabet");
  }
  if (t->word != conjWord(t->conjugator, t->left->word, t->right->word)) {
    return CheckResult::fail("conjugation word does not recompute");
  }
  if (auto r = checkCertificate(sys, t->left, level + 1); !r.ok) return r;
  return checkCertificate(sys, t->right, level + 1);
}

TreePtr identityCert(const SystemPtr& sys, int level) {
  if (level < 0 || level > sys->depth()) throw ValidationError("level out of range");
  switch (sys->kind()) {
    case SystemKind::Seed:
      return DerivationTree::explicitLeaf(level, Word());
    case SystemKind::Raw:
      if (!sys->level(level).hasExplicit(Word())) {
        throw ValidationError("raw system level does not contain e");
      }
      return DerivationTree::explicitLeaf(level, Word());
    case SystemKind::Padding:
      if (level > sys->paddingParentDepth()) {
        return DerivationTree::explicitLeaf(level, Word());
      }
      return identityCert(sys->parent(), level);
    case SystemKind::Enrichment:
      return DerivationTree::explicitLeaf(level, Word(), identityCert(sys->parent(), level));
  }
  throw ValidationError("unreachable");
}

TreePtr invCert(const SystemPtr& sys, const TreePtr& t) {
  switch (sys->kind()) {
    case SystemKind::Padding:
      if (t->level <= sys->paddingParentDepth()) return invCert(sys->parent(), t);
      break;
    default:
      break;
  }
  switch (t->kind) {
    case DerivationTree::Kind::Explicit: {
      TreePtr sub;
      if (t->sub) sub = invCert(sys->parent(), t->sub);
      return DerivationTree::explicitLeaf(t->level, inv(t->word), std::move(sub));
    }
    case DerivationTree::Kind::BaseWord:
      return DerivationTree::baseWord(t->level, inv(t->word));
    case DerivationTree::Kind::BasePower:
      return DerivationTree::basePower(t->level, t->cyclicGen, -t->exponent);
    case DerivationTree::Kind::Conj:
      return DerivationTree::conj(t->level, t->conjugator, invCert(sys, t->right),
                                  invCert(sys, t->left));
  }
  throw ValidationError("unreachable");
}

TreePtr liftCert(const SystemPtr& from, const SystemPtr& to, const TreePtr& t) {
  if (from.get() == to.get()) return t;
  if (!NbhdSystem::isAncestorOf(from.get(), to.get())) {
    throw ValidationError("liftCert: target does not descend from the source system");
  }
  TreePtr viaParent = liftCert(from, to->parent(), t);
  switch (to->kind()) {
    case SystemKind::Padding:
      // Certificates at inherited levels are parent certificates verbatim.
      return viaParent;
    case SystemKind::Enrichment: {
      int level = viaParent->level;
      Word w = viaParent->word;
      return DerivationTree::explicitLeaf(level, std::move(w), std::move(viaParent));
    }
    default:
      throw ValidationError("liftCert: root system cannot have a parent");
  }
}

TreePtr retractCert(const SystemPtr& sys, const TreePtr& t) {
  if (sys->kind() != SystemKind::Enrichment ||
      sys->enrichKind() != EnrichKind::CyclicFresh) {
    throw ValidationError("retractCert applies to fresh-letter cyclic enrichments");
  }
  const SystemPtr& base = sys->parent();
  switch (t->kind) {
    case DerivationTree::Kind::Explicit:
      // The word already lies in U_level and the sub-certificate shows it.
      return t->sub;
    case DerivationTree::Kind::BaseWord:
      throw ValidationError("fresh-letter enrichment has no explicit B words");
    case DerivationTree::Kind::BasePower:
      // Descriptors are fresh, so the retraction of any power is e.
      return identityCert(base, t->level);
    case DerivationTree::Kind::Conj: {
      TreePtr l = retractCert(sys, t->left);
      TreePtr r = retractCert(sys, t->right);
      Letter x = t->conjugator;
      if (x != 0 && !base->alphabet().contains(baseOf(x))) x = 0;
      Word image = conjWord(x, l->word, r->word);
      if (levelAcceptsConj(*base, t->level)) {
        return DerivationTree::conj(t->level, x, std::move(l), std::move(r));
      }
      if (image.empty()) return identityCert(base, t->level);
      // Base levels without structural closure are explicit sets; the image
      // must sit there for the retraction collapse to certify it.
      if (base->kind() != SystemKind::Enrichment && t->level <= base->depth() &&
          base->level(t->level).hasExplicit(image)) {
        return DerivationTree::explicitLeaf(t->level, std::move(image));
      }
      throw ValidationError("retraction image escaped the base level");
    }
  }
  throw ValidationError("unreachable");
}

TreePtr etaCollapseCert(const SystemPtr& sys, const TreePtr& t) {
  if (sys->kind() != SystemKind::Enrichment ||
      sys->enrichKind() != EnrichKind::AssgpB) {
    throw ValidationError("etaCollapseCert applies to ASSGP B-enrichments");
  }
  const Word& g0 = sys->assgpG0();
  switch (t->kind) {
    case DerivationTree::Kind::Explicit:
      return t;  // eta fixes inherited elements
    case DerivationTree::Kind::BaseWord:
      throw ValidationError("ASSGP B-enrichment has no explicit B words");
    case DerivationTree::Kind::BasePower:
      if (t->cyclicGen == g0 || t->cyclicGen == inv(g0)) {
        return DerivationTree::explicitLeaf(
            t->level, Word(), identityCert(sys->parent(), t->level));
      }
      return t;  // fresh-letter powers survive
    case DerivationTree::Kind::Conj:
      return DerivationTree::conj(t->level, t->conjugator,
                                  etaCollapseCert(sys, t->left),
                                  etaCollapseCert(sys, t->right));
  }
  throw ValidationError("unreachable");
}

TreePtr nestDownCert(const SystemPtr& sys, const TreePtr& t) {
  int level = t->level - 1;
  if (level < 0) throw ValidationError("nestDownCert: already at level 0");
  if (t->word.empty()) return identityCert(sys, level);
  if (levelAcceptsConj(*sys, level)) {
    return DerivationTree::conj(level, 0, t, identityCert(sys, t->level));
  }
  throw ValidationError("level does not absorb the lower level structurally");
}

TreePtr transportToAncestor(const SystemPtr& from, const SystemPtr& to,
                            const TreePtr& t) {
  if (from.get() == to.get()) return t;
  if (!NbhdSystem::isAncestorOf(to.get(), from.get())) {
    throw ValidationError("transportToAncestor: not an ancestor");
  }
  Word expected = t->word;
  TreePtr down;
  switch (from->kind()) {
    case SystemKind::Padding:
      down = t;
      break;
    case SystemKind::Enrichment:
      switch (from->enrichKind()) {
        case EnrichKind::CyclicFresh:
          down = retractCert(from, t);
          break;
        case EnrichKind::AssgpB: {
          TreePtr collapsed = etaCollapseCert(from, t);
          if (collapsed->word != expected) {
            throw ValidationError("eta collapse changed a word over the base alphabet");
          }
          down = retractCert(from->companionPrime(), collapsed);
          break;
        }
        case EnrichKind::Generic:
          throw ValidationError("no transport across a generic enrichment");
      }
      break;
    default:
      throw ValidationError("transportToAncestor: reached a root system");
  }
  if (down->word != expected) {
    throw ValidationError("transport changed the represented word");
  }
  return transportToAncestor(from->parent(), to, down);
}

FactorSequence flatten(const TreePtr& t) {
  FactorSequence out;
  auto walk = [&](auto&& self, const TreePtr& node) -> void {
    switch (node->kind) {
      case DerivationTree::Kind::Explicit:
      case DerivationTree::Kind::BaseWord:
        out.push_back({node->word, Factor::Origin::Explicit, {}, 0});
        return;
      case DerivationTree::Kind::BasePower:
        out.push_back({node->word, Factor::Origin::CyclicPower, node->cyclicGen,
                       node->exponent});
        return;
      case DerivationTree::Kind::Conj: {
        Word x = node->conjugator == 0 ? Word() : Word::letter(node->conjugator);
        out.push_back({x, Factor::Origin::ConjugatorLetter, {}, 0});
        self(self, node->left);
        self(self, node->right);
        out.push_back({inv(x), Factor::Origin::ConjugatorLetter, {}, 0});
        return;
      }
    }
  };
  walk(walk, t);
  return out;
}

Word foldFactors(const FactorSequence& fs) {
  std::vector<Word> ws;
  ws.reserve(fs.size());
  for (const Factor& f : fs) ws.push_back(f.word);
  return reduceConcat(ws);
}

std::pair<std::uint64_t, std::uint64_t> letterBoundStats(
    const TreePtr& t, std::uint64_t baseAlphabetCount, int depth) {
  std::uint64_t sum = 0;
  for (const Factor& f : flatten(t)) sum += lett(f.word).count();
  int gap = depth - t->level;
  std::uint64_t bound = baseAlphabetCount;
  for (int i = 0; i < gap; ++i) bound *= 4;
  return {sum, bound};
}

bool letterBound(const TreePtr& t, std::uint64_t baseAlphabetCount, int depth) {
  auto [sum, bound] = letterBoundStats(t, baseAlphabetCount, depth);
  return sum <= bound;
}

}  // namespace assgp
