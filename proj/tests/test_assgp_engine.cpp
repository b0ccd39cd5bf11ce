#include <doctest.h>

#include <random>

#include "assgp/assgp_extend.hpp"
#include "assgp/decide.hpp"
#include "assgp/registry.hpp"
#include "assgp/sandwich.hpp"
#include "oracles.hpp"

using namespace assgp;

namespace {

Letter L(GenId id, int s = 1) { return letterOf(id, s); }

// Builds valid sandwich instances by repeatedly splitting a wall and
// inserting an adjacent inverse filler pair around an empty wall.
struct SandwichGen {
  std::mt19937_64 rng;
  oracle::WordGen words;

  SandwichGen(std::uint64_t seed) : rng(seed), words(seed ^ 0xabcd, 3) {}

  // g0 over generators {0..3} with letter 3 occurring exactly once
  Word makeG0() {
    while (true) {
      Word a = words.word(4), b = words.word(4);
      if (lett(a).contains(3) || lett(b).contains(3)) continue;
      std::uniform_int_distribution<int> sd(0, 1);
      Word g0 = reduceConcat(
          std::array<Word, 3>{a, Word::letter(L(3, sd(rng) ? 1 : -1)), b});
      int occ = 0;
      for (Letter l : g0) {
        if (baseOf(l) == 3) ++occ;
      }
      if (occ == 1) return g0;
    }
  }

  Word wall() {
    while (true) {
      Word w = words.word(5);
      if (!lett(w).contains(3)) return w;
    }
  }

  SandwichInstance make(int pairs) {
    SandwichInstance inst;
    inst.g0 = makeG0();
    inst.distinguishedLetter = 3;
    inst.walls = {wall()};
    for (int p = 0; p < pairs; ++p) {
      std::uniform_int_distribution<std::size_t> pos(0, inst.walls.size() - 1);
      std::size_t i = pos(rng);
      // split wall i and insert (filler, e, -filler)
      const auto& ls = inst.walls[i].letters();
      std::uniform_int_distribution<std::size_t> cut(0, ls.size());
      std::size_t c = cut(rng);
      Word left = Word::fromReduced({ls.begin(), ls.begin() + c});
      Word right = Word::fromReduced({ls.begin() + c, ls.end()});
      std::uniform_int_distribution<int> sd(0, 1);
      int sign = sd(rng) ? 1 : -1;
      inst.walls[i] = left;
      inst.walls.insert(inst.walls.begin() + i + 1, {Word(), right});
      inst.fillerSigns.insert(inst.fillerSigns.begin() + i, {sign, -sign});
    }
    return inst;
  }
};

}  // namespace

TEST_CASE("sandwichReduce examples") {
  AlphabetRegistry reg;
  for (int i = 0; i < 4; ++i) reg.add("x" + std::to_string(i));
  Word x = Word::letter(L(0));
  Word g0 = reduceConcat(std::array<Word, 2>{Word::letter(L(3)), x});  // x3 x0

  {
    // walls all e, fillers g0, g0^-1 -> e
    SandwichInstance inst;
    inst.g0 = g0;
    inst.distinguishedLetter = 3;
    inst.walls = {Word(), Word(), Word()};
    inst.fillerSigns = {1, -1};
    CHECK(sandwichReduce(inst).empty());
  }
  {
    // w1 = x, w2 = e, w3 = x^-1 -> x x^-1 = e
    SandwichInstance inst;
    inst.g0 = g0;
    inst.distinguishedLetter = 3;
    inst.walls = {x, Word(), inv(x)};
    inst.fillerSigns = {1, -1};
    CHECK(sandwichReduce(inst) == mul(x, inv(x)));
  }
  {
    // invariant violation: wall containing the distinguished letter
    SandwichInstance inst;
    inst.g0 = g0;
    inst.distinguishedLetter = 3;
    inst.walls = {Word::letter(L(3)), Word(), Word()};
    inst.fillerSigns = {1, -1};
    CHECK_THROWS_AS(sandwichReduce(inst), ValidationError);
  }
  {
    // (iii) violated: a lone filler leaves the letter in the product
    SandwichInstance inst;
    inst.g0 = g0;
    inst.distinguishedLetter = 3;
    inst.walls = {Word(), Word()};
    inst.fillerSigns = {1};
    CHECK_THROWS_AS(sandwichReduce(inst), ValidationError);
  }
}

TEST_CASE("sandwichReduce equals direct reduction on generated instances") {
  SandwichGen gen(2024);
  for (int it = 0; it < 1000; ++it) {
    SandwichInstance inst = gen.make(1 + it % 4);
    REQUIRE(!validateSandwich(inst).has_value());
    Word viaDeletion = sandwichReduce(inst);
    // direct fold including the fillers
    std::vector<Word> parts;
    Word g0inv = inv(inst.g0);
    for (std::size_t i = 0; i < inst.fillerSigns.size(); ++i) {
      parts.push_back(inst.walls[i]);
      parts.push_back(inst.fillerSigns[i] > 0 ? inst.g0 : g0inv);
    }
    parts.push_back(inst.walls.back());
    CHECK(viaDeletion == reduceConcat(parts));
  }
}

TEST_CASE("etaEquality examples") {
  AlphabetRegistry reg;
  for (int i = 0; i < 4; ++i) reg.add("x" + std::to_string(i));
  Word x = Word::letter(L(0));
  Word g0 = reduceConcat(std::array<Word, 2>{Word::letter(L(3)), x});

  {
    auto r = etaEquality({g0, inv(g0)}, g0, 3);
    CHECK(r.equal);
    CHECK(r.lhs.empty());
    CHECK(r.rhs.empty());
  }
  {
    // no factor contains x3: eta fixes everything
    auto r = etaEquality({x, inv(x), mul(x, x)}, g0, 3);
    CHECK(r.equal);
    CHECK(r.lhs == mul(x, x));
    CHECK(r.rhs == r.lhs);
  }
  {
    // [x, g0^2, g0^-2, x^-1] -> both sides e
    auto r = etaEquality({x, pow(g0, 2), pow(g0, -2), inv(x)}, g0, 3);
    CHECK(r.equal);
    CHECK(r.lhs.empty());
  }
  {
    // clause (b) violated
    CHECK_THROWS_AS(etaEquality({g0}, g0, 3), ValidationError);
  }
  {
    // clause (c) violated: a factor contains x3 but is not a g0 power
    CHECK_THROWS_AS(
        etaEquality({Word::letter(L(3)), Word::letter(L(3, -1))}, g0, 3),
        ValidationError);
  }
}

TEST_CASE("etaEquality holds on generated zero-sum instances") {
  oracle::WordGen words(77, 3);
  std::mt19937_64 rng(99);
  for (int it = 0; it < 1000; ++it) {
    // g0 over {0,1,2} plus distinguished letter 3 occurring once
    Word a = words.word(3), b = words.word(3);
    if (lett(a).contains(3) || lett(b).contains(3)) continue;
    Word g0 = reduceConcat(std::array<Word, 3>{a, Word::letter(L(3)), b});
    int occ = 0;
    for (Letter l : g0) {
      if (baseOf(l) == 3) ++occ;
    }
    if (occ != 1) continue;

    // factors: x3-free words interleaved with zero-sum runs of g0 powers
    std::vector<Word> factors;
    std::uniform_int_distribution<int> runs(1, 3), qd(1, 3), parts(1, 3);
    int nRuns = runs(rng);
    for (int r = 0; r < nRuns; ++r) {
      Word wall = words.word(4);
      if (!lett(wall).contains(3)) factors.push_back(wall);
      int total = 0;
      int nParts = parts(rng);
      for (int p = 0; p < nParts; ++p) {
        int q = qd(rng) * (rng() % 2 ? 1 : -1);
        factors.push_back(pow(g0, q));
        total += q;
      }
      factors.push_back(pow(g0, -total));
    }
    auto r = etaEquality(factors, g0, 3);
    CHECK(r.equal);
  }
}

TEST_CASE("assgpExtend small case: X={x}, n=1, g=x") {
  AlphabetRegistry reg;
  reg.add("x0");
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 1);
  AssgpWitness w = assgpExtend(reg, base, Word::letter(L(0)), 1);

  CHECK(w.freshCount() == 5);  // k = 1*4^1 + 1
  CHECK(w.factorCount() == 6);
  CHECK(w.g0.size() == 6);  // y1..y5 x
  CHECK(w.foldExact() == Word::letter(L(0)));
  CHECK(w.pipeline.ok());

  // factors: inv(y5), ..., inv(y1), g0
  CHECK(w.factorAt(0) == Word::letter(letterOf(w.fresh.first + 4, -1)));
  CHECK(w.factorAt(4) == Word::letter(letterOf(w.fresh.first, -1)));
  CHECK(w.factorAt(5) == w.g0);

  // every factor's cyclic group is structurally inside the bottom level
  for (std::uint64_t i = 0; i <= 5; ++i) {
    Word f = w.factorAt(i);
    for (std::int64_t q = -10; q <= 10; ++q) {
      Verdict v = memberDecide(w.extended, 1, pow(f, q));
      REQUIRE(v.in());
      CHECK(checkCertificate(w.extended, v.cert, 1).ok);
    }
  }

  // the extension relation holds against the base
  CHECK(isExtension(w.extended, base).ok());
}

TEST_CASE("assgpExtend with g = e still yields a valid witness") {
  AlphabetRegistry reg;
  reg.add("x0");
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 0);
  AssgpOptions opts;
  opts.runVerification = false;
  AssgpWitness w = assgpExtend(reg, base, Word(), 1, opts);
  CHECK(w.freshCount() == 2);  // k = 1*4^0 + 1
  CHECK(w.foldExact().empty());
  CHECK(w.g0.size() == 2);  // g0 = y1 y2, not e
}

TEST_CASE("assgpExtend rejects words off the base alphabet") {
  AlphabetRegistry reg;
  reg.add("x0");
  reg.add("x1");
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 0);
  CHECK_THROWS_AS(assgpExtend(reg, base, Word::letter(L(1)), 1), ValidationError);
}
