#include <doctest.h>

#include "assgp/assgp_extend.hpp"
#include "assgp/decide.hpp"
#include "assgp/enumerate.hpp"
#include "assgp/registry.hpp"
#include "oracles.hpp"

using namespace assgp;

namespace {

Letter L(GenId id, int s = 1) { return letterOf(id, s); }

SystemPtr freshCyclic(GenId baseGen, GenId freshGen, int depth) {
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({baseGen}), depth);
  NbhdSystem::EnrichmentInput in;
  in.cyclicGens = {Word::letter(L(freshGen))};
  return NbhdSystem::cyclicEnrich(base, in, GenSet::fromIds({baseGen, freshGen}));
}

}  // namespace

TEST_CASE("flatten basics") {
  SystemPtr sys = freshCyclic(0, 1, 1);
  Word y = Word::letter(L(1));

  // single leaf
  TreePtr leaf = DerivationTree::basePower(1, y, 3);
  auto fs = flatten(leaf);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].word == pow(y, 3));
  CHECK(fs[0].origin == Factor::Origin::CyclicPower);

  // Conj(x, y, y) -> [x, y, y, x^-1]
  TreePtr c = DerivationTree::conj(0, L(0), DerivationTree::basePower(1, y, 1),
                                   DerivationTree::basePower(1, y, 1));
  auto fc = flatten(c);
  REQUIRE(fc.size() == 4);
  CHECK(fc[0].word == Word::letter(L(0)));
  CHECK(fc[0].origin == Factor::Origin::ConjugatorLetter);
  CHECK(fc[1].word == y);
  CHECK(fc[2].word == y);
  CHECK(fc[3].word == Word::letter(L(0, -1)));
  CHECK(foldFactors(fc) == c->word);

  // nested two-level tree: 8 factors, product matches the mul-fold
  SystemPtr sys2 = freshCyclic(0, 1, 2);
  TreePtr inner = DerivationTree::conj(1, L(0), DerivationTree::basePower(2, y, 1),
                                       DerivationTree::basePower(2, y, 2));
  TreePtr outer =
      DerivationTree::conj(0, L(0, -1), inner,
                           DerivationTree::explicitLeaf(1, Word(), identityCert(sys2->parent(), 1)));
  auto fo = flatten(outer);
  CHECK(fo.size() == 7);  // x^-1, (x, y, y^2, x^-1), e, x
  CHECK(foldFactors(fo) == outer->word);
  CHECK(checkCertificate(sys2, outer, 0).ok);
}

TEST_CASE("flatten/product round-trip on enumerated trees") {
  SystemPtr sys = freshCyclic(0, 1, 2);
  EnumOptions opts;
  opts.depthBudget = 2;
  opts.exponentBudget = 3;
  opts.maxItems = 250;
  for (int lvl = 0; lvl <= 2; ++lvl) {
    for (const auto& it : enumerateLevel(sys, lvl, opts)) {
      CHECK(foldFactors(flatten(it.cert)) == it.word);
      CHECK(checkCertificate(sys, it.cert, lvl).ok);
    }
  }
}

TEST_CASE("letter bound") {
  // |X| = 1, n = 1, i = 0, Conj(x, y, y): sum = 4 <= 1*4
  SystemPtr sys = freshCyclic(0, 1, 1);
  Word y = Word::letter(L(1));
  TreePtr t = DerivationTree::conj(0, L(0), DerivationTree::basePower(1, y, 1),
                                   DerivationTree::basePower(1, y, 1));
  auto [sum, bound] = letterBoundStats(t, 1, 1);
  CHECK(sum == 4);
  CHECK(bound == 4);
  CHECK(letterBound(t, 1, 1));

  // bottom-level leaves stay within |X|
  TreePtr leaf = DerivationTree::explicitLeaf(1, Word(), identityCert(sys->parent(), 1));
  auto [s2, b2] = letterBoundStats(leaf, 1, 1);
  CHECK(s2 <= 1);
  CHECK(b2 == 1);

  // exhaustive enumeration stays within the bound
  SystemPtr sys3 = freshCyclic(0, 1, 3);
  EnumOptions opts;
  opts.depthBudget = 3;
  opts.exponentBudget = 8;
  opts.maxItems = 400;
  std::size_t count = 0;
  for (int lvl = 0; lvl <= 3; ++lvl) {
    for (const auto& it : enumerateLevel(sys3, lvl, opts)) {
      ++count;
      CHECK(letterBound(it.cert, 1, 3));
    }
  }
  CHECK(count > 200);
}

TEST_CASE("enumerateLevel shapes") {
  // seed level: just e
  SystemPtr seed = NbhdSystem::seed(GenSet::fromIds({0}), 0);
  auto items = enumerateLevel(seed, 0, {});
  REQUIRE(items.size() == 1);
  CHECK(items[0].word.empty());

  // fresh cyclic bottom with exponent budget 2: e, y, y^-1, y^2, y^-2 (plus U_n)
  SystemPtr sys = freshCyclic(0, 1, 1);
  EnumOptions opts;
  opts.exponentBudget = 2;
  auto bottom = enumerateLevel(sys, 1, opts);
  std::vector<Word> words;
  for (auto& it : bottom) words.push_back(it.word);
  Word y = Word::letter(L(1));
  for (std::int64_t q = -2; q <= 2; ++q) {
    CHECK(std::count(words.begin(), words.end(), pow(y, q)) >= 1);
  }

  // depth-1 Conj tree count = |X-bar| * (bottom count)^2 when uncapped
  EnumOptions big;
  big.exponentBudget = 1;   // bottom: e (inherited), y^0, y^1, y^-1
  big.depthBudget = 1;
  big.maxItems = 100000;
  big.conjugatorCap = 100;
  auto level0 = enumerateLevel(sys, 0, big);
  auto bottomSmall = enumerateLevel(sys, 1, big);
  std::size_t xbar = 2 * 2 + 1;  // both signs of both letters, plus e
  std::size_t expectConj = xbar * bottomSmall.size() * bottomSmall.size();
  // level 0 also inherits U_0 = {e} from the seed
  CHECK(level0.size() == 1 + expectConj);
}

TEST_CASE("enumeration is deterministic and certified") {
  SystemPtr sys = freshCyclic(0, 1, 2);
  EnumOptions opts;
  opts.depthBudget = 2;
  opts.exponentBudget = 2;
  opts.maxItems = 300;
  auto a = enumerateLevel(sys, 0, opts);
  auto b = enumerateLevel(sys, 0, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].word == b[i].word);
  }
}

TEST_CASE("eta collapse on certificates") {
  AlphabetRegistry reg;
  reg.add("x0");
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 1);
  AssgpOptions opts;
  opts.runVerification = false;
  AssgpWitness w = assgpExtend(reg, base, Word::letter(L(0)), 1, opts);
  SystemPtr sys = w.extended;
  SystemPtr prime = sys->companionPrime();
  REQUIRE(prime);

  // CyclicPower(g0, 3) collapses to an e-leaf
  TreePtr t = DerivationTree::basePower(1, w.g0, 3);
  TreePtr c = etaCollapseCert(sys, t);
  CHECK(c->word.empty());
  CHECK(checkCertificate(prime, c, 1).ok);

  // a tree without g0 leaves is unchanged
  Word y1 = Word::letter(L(w.fresh.first));
  TreePtr t2 = DerivationTree::basePower(1, y1, 2);
  CHECK(etaCollapseCert(sys, t2).get() == t2.get());

  // Conj(x, CyclicPower(g0,1), e-leaf) -> Conj(x, e-leaf, e-leaf)
  TreePtr u = DerivationTree::basePower(1, w.g0, 1);
  TreePtr e1 = DerivationTree::explicitLeaf(1, Word(), identityCert(base, 1));
  TreePtr t3 = DerivationTree::conj(0, L(0), u, e1);
  TreePtr c3 = etaCollapseCert(sys, t3);
  CHECK(checkCertificate(prime, c3, 0).ok);
  CHECK(c3->word.empty());  // x * e * e * x^-1
  CHECK(c3->left->word.empty());
}

TEST_CASE("sampled trees re-verify") {
  SystemPtr sys = freshCyclic(0, 1, 2);
  TreeSampler sampler(sys, 4242, {});
  int ok = 0;
  for (int i = 0; i < 500; ++i) {
    int lvl = i % 3;
    auto it = sampler.sample(lvl);
    if (!it) continue;
    REQUIRE(checkCertificate(sys, it->cert, lvl).ok);
    CHECK(it->cert->word == it->word);
    ++ok;
  }
  CHECK(ok > 400);
}
