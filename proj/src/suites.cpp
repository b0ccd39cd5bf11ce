#include "assgp/suites.hpp"

#include <array>

#include "assgp/enumerate.hpp"
#include "assgp/errors.hpp"

namespace assgp {

namespace {

// Random reduced word over generator ids [0, alphabet), avoiding `avoid`.
Word randomWord(std::mt19937_64& rng, GenId alphabet, std::size_t maxLen,
                std::optional<GenId> avoid = std::nullopt) {
  std::uniform_int_distribution<std::size_t> lenD(0, maxLen);
  std::size_t len = lenD(rng);
  std::vector<Letter> ls;
  std::uniform_int_distribution<GenId> genD(0, alphabet - 1);
  std::uniform_int_distribution<int> signD(0, 1);
  while (ls.size() < len) {
    GenId id = genD(rng);
    if (avoid && id == *avoid) continue;
    Letter l = letterOf(id, signD(rng) ? 1 : -1);
    if (!ls.empty() && ls.back() == invLetter(l)) continue;
    ls.push_back(l);
  }
  return Word::fromReduced(std::move(ls));
}

// g0 over ids {0..3} with id 3 occurring exactly once.
Word randomDistinguishedG0(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> signD(0, 1);
  while (true) {
    Word a = randomWord(rng, 3, 4);
    Word b = randomWord(rng, 3, 4);
    Word g0 = reduceConcat(std::array<Word, 3>{
        a, Word::letter(letterOf(3, signD(rng) ? 1 : -1)), b});
    int occ = 0;
    for (Letter l : g0) {
      if (baseOf(l) == 3) ++occ;
    }
    if (occ == 1) return g0;
  }
}

}  // namespace

SandwichInstance randomSandwichInstance(std::mt19937_64& rng, int pairs) {
  SandwichInstance inst;
  inst.g0 = randomDistinguishedG0(rng);
  inst.distinguishedLetter = 3;
  inst.walls = {randomWord(rng, 3, 5)};
  std::uniform_int_distribution<int> signD(0, 1);
  for (int p = 0; p < pairs; ++p) {
    std::uniform_int_distribution<std::size_t> pos(0, inst.walls.size() - 1);
    std::size_t i = pos(rng);
    const auto& ls = inst.walls[i].letters();
    std::uniform_int_distribution<std::size_t> cutD(0, ls.size());
    std::size_t cut = cutD(rng);
    Word left = Word::fromReduced({ls.begin(), ls.begin() + cut});
    Word right = Word::fromReduced({ls.begin() + cut, ls.end()});
    int sign = signD(rng) ? 1 : -1;
    inst.walls[i] = left;
    inst.walls.insert(inst.walls.begin() + i + 1, {Word(), right});
    inst.fillerSigns.insert(inst.fillerSigns.begin() + i, {sign, -sign});
  }
  return inst;
}

EtaInstance randomEtaInstance(std::mt19937_64& rng) {
  EtaInstance inst;
  inst.g0 = randomDistinguishedG0(rng);
  inst.xj = 3;
  std::uniform_int_distribution<int> runsD(1, 3), partsD(1, 3), qD(1, 3);
  int runs = runsD(rng);
  for (int r = 0; r < runs; ++r) {
    Word wall = randomWord(rng, 3, 4);
    if (!wall.empty()) inst.factors.push_back(wall);
    int total = 0;
    int parts = partsD(rng);
    for (int p = 0; p < parts; ++p) {
      int q = qD(rng) * (rng() % 2 ? 1 : -1);
      inst.factors.push_back(pow(inst.g0, q));
      total += q;
    }
    inst.factors.push_back(pow(inst.g0, -total));
  }
  return inst;
}

Report sandwichSuite(const SuiteOptions& opts) {
  Report rep;
  std::mt19937_64 rng(opts.seed);
  std::size_t pass = 0;
  std::string detail;
  for (std::size_t i = 0; i < opts.samples; ++i) {
    SandwichInstance inst = randomSandwichInstance(rng, 1 + static_cast<int>(i % 4));
    try {
      Word w = sandwichReduce(inst);
      std::vector<Word> parts;
      Word g0inv = inv(inst.g0);
      for (std::size_t f = 0; f < inst.fillerSigns.size(); ++f) {
        parts.push_back(inst.walls[f]);
        parts.push_back(inst.fillerSigns[f] > 0 ? inst.g0 : g0inv);
      }
      parts.push_back(inst.walls.back());
      if (w == reduceConcat(parts)) {
        ++pass;
      } else {
        detail = "filler deletion disagreed with direct reduction";
      }
    } catch (const Error& e) {
      detail = e.what();
    }
  }
  rep.add("trivial-sandwich", pass == opts.samples,
          std::to_string(pass) + "/" + std::to_string(opts.samples) +
              " instances matched direct reduction" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report etaEqualitySuite(const SuiteOptions& opts) {
  Report rep;
  std::mt19937_64 rng(opts.seed ^ 0xe7a);
  std::size_t pass = 0;
  std::string detail;
  for (std::size_t i = 0; i < opts.samples; ++i) {
    EtaInstance inst = randomEtaInstance(rng);
    try {
      auto r = etaEquality(inst.factors, inst.g0, inst.xj);
      if (r.equal) {
        ++pass;
      } else {
        detail = "products diverged";
      }
    } catch (const Error& e) {
      detail = e.what();
    }
  }
  rep.add("eta-equality", pass == opts.samples,
          std::to_string(pass) + "/" + std::to_string(opts.samples) +
              " instances equal after the collapse" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

namespace {

// A small family of fresh-letter cyclic enrichments over varying alphabet
// sizes and depths; generator ids are sized per instance so the suites are
// self-contained.
struct FreshFamily {
  SystemPtr base;
  SystemPtr enriched;
  std::uint64_t baseCount;
};

std::vector<FreshFamily> freshFamily(std::size_t howMany) {
  std::vector<FreshFamily> out;
  for (std::size_t i = 0; i < howMany; ++i) {
    GenId baseSize = 1 + static_cast<GenId>(i % 3);
    int depth = 1 + static_cast<int>(i % 3);
    GenId freshSize = 1 + static_cast<GenId>((i / 3) % 2);
    std::vector<GenId> baseIds, allIds;
    for (GenId g = 0; g < baseSize; ++g) baseIds.push_back(g);
    for (GenId g = 0; g < baseSize + freshSize; ++g) allIds.push_back(g);
    SystemPtr base = NbhdSystem::seed(GenSet::fromIds(baseIds), depth);
    NbhdSystem::EnrichmentInput in;
    for (GenId g = baseSize; g < baseSize + freshSize; ++g) {
      in.cyclicGens.push_back(Word::letter(letterOf(g, 1)));
    }
    SystemPtr enriched = NbhdSystem::cyclicEnrich(base, in, GenSet::fromIds(allIds));
    out.push_back({std::move(base), std::move(enriched), baseSize});
  }
  return out;
}

}  // namespace

Report letterBoundSuite(const SuiteOptions& opts) {
  Report rep;
  std::size_t trees = 0, within = 0;
  double maxRatio = 0;
  for (const FreshFamily& f : freshFamily(6)) {
    EnumOptions eo;
    eo.depthBudget = 3;
    eo.exponentBudget = 8;
    eo.maxItems = opts.samples / 4 + 50;
    for (int lvl = 0; lvl <= f.enriched->depth(); ++lvl) {
      for (const auto& it : enumerateLevel(f.enriched, lvl, eo)) {
        ++trees;
        auto [sum, bound] = letterBoundStats(it.cert, f.baseCount, f.enriched->depth());
        if (sum <= bound) ++within;
        if (bound > 0) maxRatio = std::max(maxRatio, double(sum) / double(bound));
      }
    }
  }
  rep.add("letter-bound", trees == within,
          std::to_string(within) + "/" + std::to_string(trees) +
              " enumerated derivations within the bound; max ratio " +
              std::to_string(maxRatio));
  return rep;
}

Report retractionSuite(const SuiteOptions& opts) {
  Report rep;
  std::size_t tested = 0, pass = 0;
  std::string detail;
  for (const FreshFamily& f : freshFamily(6)) {
    EnumOptions eo;
    eo.exponentBudget = 4;
    TreeSampler sampler(f.enriched, opts.seed + f.baseCount, eo);
    std::size_t per = opts.samples / 6 + 1;
    for (int lvl = 0; lvl <= f.enriched->depth(); ++lvl) {
      for (std::size_t s = 0; s < per; ++s) {
        auto it = sampler.sample(lvl);
        if (!it) continue;
        ++tested;
        try {
          TreePtr down = retractCert(f.enriched, it->cert);
          Word expect = retraction(f.base->alphabet(), it->word);
          auto r = checkCertificate(f.base, down, lvl);
          if (r.ok && down->word == expect) {
            ++pass;
          } else {
            detail = r.ok ? "retraction image mismatch" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
  }
  rep.add("retraction", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " retraction images certified in the base" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report traceSuite(const SuiteOptions& opts) {
  Report rep;
  std::size_t tested = 0, pass = 0, skipped = 0;
  std::string detail;
  for (const FreshFamily& f : freshFamily(6)) {
    EnumOptions eo;
    eo.exponentBudget = 4;
    TreeSampler sampler(f.enriched, opts.seed ^ (0xabc + f.baseCount), eo);
    std::size_t per = opts.samples / 6 + 1;
    for (int lvl = 0; lvl <= f.enriched->depth(); ++lvl) {
      for (std::size_t s = 0; s < per; ++s) {
        auto it = sampler.sample(lvl);
        if (!it) continue;
        if (!f.base->alphabet().containsWord(it->word)) {
          ++skipped;
          continue;
        }
        ++tested;
        try {
          TreePtr down = transportToAncestor(f.enriched, f.base, it->cert);
          auto r = checkCertificate(f.base, down, lvl);
          if (r.ok && down->word == it->word) {
            ++pass;
          } else {
            detail = r.ok ? "trace word changed" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
  }
  rep.add("trace", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " base-alphabet samples traced into the base levels (" +
              std::to_string(skipped) + " off-alphabet skipped)" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report lemmaSuites(const SuiteOptions& opts) {
  Report rep;
  for (const Report& r : {sandwichSuite(opts), etaEqualitySuite(opts),
                          letterBoundSuite(opts), retractionSuite(opts),
                          traceSuite(opts)}) {
    rep.entries.insert(rep.entries.end(), r.entries.begin(), r.entries.end());
  }
  return rep;
}

namespace {

struct StageSampleCtx {
  const ChainState& chain;
  const OracleSuiteOptions& opts;

  EnumOptions samplerOpts(const Condition& c) const {
    EnumOptions eo;
    eo.exponentBudget = 4;
    eo.maxWordLen = c.alphabet().count() > 20000 ? 512 : opts.maxWordLen;
    return eo;
  }
};

Letter randomStageLetter(std::mt19937_64& rng, const Condition& c) {
  std::uint64_t n = c.alphabet().count();
  std::uniform_int_distribution<std::uint64_t> d(0, 2 * n - 1);
  std::uint64_t pick = d(rng);
  int sign = pick % 2 == 0 ? 1 : -1;
  std::uint64_t index = pick / 2;
  for (auto& [lo, hi] : c.alphabet().ranges()) {
    std::uint64_t len = hi - lo;
    if (index < len) return letterOf(lo + static_cast<GenId>(index), sign);
    index -= len;
  }
  return letterOf(c.alphabet().ranges().front().first, 1);
}

}  // namespace

Report oracleSymmetrySuite(const ChainState& chain, const OracleSuiteOptions& opts) {
  Report rep;
  StageSampleCtx ctx{chain, opts};
  std::size_t tested = 0, pass = 0;
  std::string detail;
  for (const Condition& c : chain.stages()) {
    TreeSampler sampler(c.system, opts.seed + c.stageId, ctx.samplerOpts(c));
    for (int n = 0; n <= c.depth(); ++n) {
      for (std::size_t s = 0; s < opts.samplesPerStage; ++s) {
        auto it = sampler.sample(n);
        if (!it) continue;
        ++tested;
        try {
          TreePtr m = invCert(c.system, it->cert);
          auto r = checkCertificate(c.system, m, n);
          if (r.ok && m->word == inv(it->word)) {
            ++pass;
          } else {
            detail = r.ok ? "mirrored word mismatch" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
  }
  rep.add("symmetry", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " inverses certified" + (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report oracleProductSuite(const ChainState& chain, const OracleSuiteOptions& opts) {
  Report rep;
  StageSampleCtx ctx{chain, opts};
  std::size_t tested = 0, pass = 0;
  std::string detail;
  for (const Condition& c : chain.stages()) {
    TreeSampler sampler(c.system, opts.seed ^ (0x9d + c.stageId), ctx.samplerOpts(c));
    for (int n = 0; n + 1 <= c.depth(); ++n) {
      for (std::size_t s = 0; s < opts.samplesPerStage; ++s) {
        auto u = sampler.sample(n + 1);
        auto v = sampler.sample(n + 1);
        if (!u || !v) continue;
        ++tested;
        try {
          Word prod = mul(u->word, v->word);
          TreePtr cert;
          if (levelAcceptsConj(*c.system, n)) {
            cert = DerivationTree::conj(n, 0, u->cert, v->cert);
          } else if (prod.empty()) {
            cert = identityCert(c.system, n);
          } else {
            detail = "product escaped an explicit-only level";
            continue;
          }
          auto r = checkCertificate(c.system, cert, n);
          if (r.ok && cert->word == prod) {
            ++pass;
          } else {
            detail = r.ok ? "product word mismatch" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
  }
  rep.add("product-nesting", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " products of level n+1 certified at level n" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report oracleConjugationSuite(const ChainState& chain, const OracleSuiteOptions& opts) {
  Report rep;
  StageSampleCtx ctx{chain, opts};
  std::mt19937_64 rng(opts.seed ^ 0xc0);
  std::size_t tested = 0, pass = 0;
  std::string detail;
  for (const Condition& c : chain.stages()) {
    TreeSampler sampler(c.system, opts.seed ^ (0x51c + c.stageId), ctx.samplerOpts(c));
    for (int n = 0; n + 1 <= c.depth(); ++n) {
      for (std::size_t s = 0; s < opts.samplesPerStage; ++s) {
        auto h = sampler.sample(n + 1);
        if (!h) continue;
        Letter y = randomStageLetter(rng, c);
        ++tested;
        try {
          TreePtr cert;
          Word conjWordVal = reduceConcat(std::array<Word, 3>{
              Word::letter(y), h->word, inv(Word::letter(y))});
          if (levelAcceptsConj(*c.system, n)) {
            cert = DerivationTree::conj(n, y, h->cert, identityCert(c.system, n + 1));
          } else if (conjWordVal.empty()) {
            cert = identityCert(c.system, n);
          } else {
            detail = "conjugate escaped an explicit-only level";
            continue;
          }
          auto r = checkCertificate(c.system, cert, n);
          if (r.ok && cert->word == conjWordVal) {
            ++pass;
          } else {
            detail = r.ok ? "conjugate word mismatch" : r.why;
          }
        } catch (const Error& e) {
          detail = e.what();
        }
      }
    }
  }
  rep.add("letter-conjugation", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " conjugates certified one level down" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report oracleMonotoneSuite(const ChainState& chain, const OracleSuiteOptions& opts) {
  Report rep;
  StageSampleCtx ctx{chain, opts};
  std::size_t tested = 0, pass = 0;
  std::string detail;
  for (const Condition& c : chain.stages()) {
    if (c.depth() == 0) continue;
    TreeSampler sampler(c.system, opts.seed ^ (0x3f + c.stageId), ctx.samplerOpts(c));
    for (std::size_t s = 0; s < opts.samplesPerStage; ++s) {
      int m = static_cast<int>(1 + (s % c.depth()));
      auto it = sampler.sample(m);
      if (!it) continue;
      ++tested;
      try {
        TreePtr cert = it->cert;
        for (int lvl = m; lvl > 0; --lvl) cert = nestDownCert(c.system, cert);
        auto r = checkCertificate(c.system, cert, 0);
        if (r.ok && cert->word == it->word) {
          ++pass;
        } else {
          detail = r.ok ? "nested word changed" : r.why;
        }
      } catch (const Error& e) {
        detail = e.what();
      }
    }
  }
  rep.add("level-monotonicity", tested == pass && tested > 0,
          std::to_string(pass) + "/" + std::to_string(tested) +
              " deeper-level samples certified at level 0" +
              (detail.empty() ? "" : ": " + detail));
  return rep;
}

Report oracleSuites(const ChainState& chain, const OracleSuiteOptions& opts) {
  Report rep;
  for (const Report& r :
       {oracleSymmetrySuite(chain, opts), oracleProductSuite(chain, opts),
        oracleConjugationSuite(chain, opts), oracleMonotoneSuite(chain, opts)}) {
    rep.entries.insert(rep.entries.end(), r.entries.begin(), r.entries.end());
  }
  return rep;
}

}  // namespace assgp
