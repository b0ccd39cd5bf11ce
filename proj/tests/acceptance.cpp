// Acceptance suite: every criterion prints one pass/fail line and the
// binary exits nonzero if any of them fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "assgp/run_io.hpp"
#include "assgp/schedule.hpp"
#include "assgp/suites.hpp"
#include "oracles.hpp"

using namespace assgp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  double limitSeconds;
  Clock::time_point start = Clock::now();

  Criterion(std::string n, double limit) : name(std::move(n)), limitSeconds(limit) {}

  void finish(bool pass, const std::string& detail) {
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool inTime = secs < limitSeconds;
    bool ok = pass && inTime;
    if (!ok) ++failures;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2fs", secs);
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << " (" << buf
              << (inTime ? "" : ", OVER TIME LIMIT") << ")" << std::endl;
  }
};

Letter L(GenId id, int s = 1) { return letterOf(id, s); }

void criterion1() {
  Criterion c("criterion 1, free-group kernel", 10.0);
  oracle::WordGen gen(101, 8);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    Word u = gen.word(30), v = gen.word(30), w = gen.word(30);
    if (mul(mul(u, v), w) != mul(u, mul(v, w))) ++bad;
    if (!mul(w, inv(w)).empty()) ++bad;
    if (mul(Word(), w) != w || mul(w, Word()) != w) ++bad;
  }
  std::size_t splitChecked = 0, splitBad = 0;
  oracle::WordGen gen2(103, 8);
  for (int i = 0; i < 10000; ++i) {
    Word v = gen2.word(12), w = gen2.word(12);
    auto cuts = oracle::validSplitCuts(v, w);
    std::size_t maximal = *std::max_element(cuts.begin(), cuts.end());
    auto s = splitCancellation(v, w);
    ++splitChecked;
    if (s.vSuffix.size() != maximal || s.wPrefix != inv(s.vSuffix) ||
        mul(s.vPrefix, s.wSuffix) != mul(v, w)) {
      ++splitBad;
    }
  }
  // exhaustive sweep over a small alphabet
  auto smallWords = oracle::reducedWordsUpTo(2, 3);
  for (const Word& v : smallWords) {
    for (const Word& w : smallWords) {
      auto cuts = oracle::validSplitCuts(v, w);
      std::size_t maximal = *std::max_element(cuts.begin(), cuts.end());
      ++splitChecked;
      if (splitCancellation(v, w).vSuffix.size() != maximal) ++splitBad;
    }
  }
  c.finish(bad == 0 && splitBad == 0,
           "10^4 law triples exact, " + std::to_string(splitChecked) +
               " splits match the brute-force oracle");
}

void criterion2() {
  Criterion c("criterion 2, support lemma", 5.0);
  std::mt19937_64 rng(211);
  oracle::WordGen gen(223, 5);
  int tested = 0;
  std::size_t bad = 0;
  while (tested < 200) {
    Word a = gen.word(6), b = gen.word(6);
    if (lett(a).contains(5) || lett(b).contains(5)) continue;
    std::uniform_int_distribution<int> sd(0, 1);
    Word g0 = reduceConcat(
        std::array<Word, 3>{a, Word::letter(L(5, sd(rng) ? 1 : -1)), b});
    int occ = 0;
    for (Letter l : g0) {
      if (baseOf(l) == 5) ++occ;
    }
    if (occ != 1) continue;
    ++tested;
    for (std::int64_t q = -8; q <= 8; ++q) {
      if (q == 0) continue;
      if (!lett(pow(g0, q)).contains(5)) ++bad;
    }
  }
  c.finish(bad == 0, "200 words with a unique letter keep it in all powers |q| <= 8");
}

void criterion3() {
  Criterion c("criterion 3, enrichment conditions", 30.0);
  std::vector<SystemPtr> systems;
  // seeds
  for (int i = 0; i < 5; ++i) {
    std::vector<GenId> ids;
    for (GenId g = 0; g <= static_cast<GenId>(i % 3); ++g) ids.push_back(g);
    systems.push_back(NbhdSystem::seed(GenSet::fromIds(ids), i % 4));
  }
  // paddings
  for (int i = 0; i < 5; ++i) {
    systems.push_back(NbhdSystem::padExtend(systems[i], systems[i]->depth() + 1 + i % 2));
  }
  // fresh cyclic enrichments
  for (int i = 0; i < 5; ++i) {
    SystemPtr base = systems[i];
    GenId fresh = 10 + static_cast<GenId>(i);
    NbhdSystem::EnrichmentInput in;
    in.cyclicGens = {Word::letter(L(fresh))};
    systems.push_back(NbhdSystem::cyclicEnrich(
        base, in, base->alphabet().unionWith(GenSet::fromIds({fresh}))));
  }
  // generic B-enrichments with explicit words
  for (int i = 0; i < 5; ++i) {
    SystemPtr base = systems[i];
    NbhdSystem::EnrichmentInput in;
    Word w = pow(Word::letter(L(0)), 1 + i % 3);
    in.explicitWords = {w};
    systems.push_back(NbhdSystem::enrich(base, in, base->alphabet()));
  }

  std::size_t pass = 0;
  std::string detail;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    VerifyOptions vo;
    vo.seed = 31 + i;
    int depth = systems[i]->depth();
    vo.samples = depth > 0 ? (1000 / (3 * depth) + 1) : 8;
    vo.conjugatorsPerSample = 3;
    Report r = verifySystem(systems[i], vo);
    if (r.ok()) {
      ++pass;
    } else {
      detail = "system " + std::to_string(i) + ": " + r.summary();
    }
  }
  c.finish(pass == systems.size(),
           std::to_string(pass) + "/20 systems pass (1_U)(2_U)(4_U) exactly and "
           "(3_U) on sampled certified conjugated squares" +
               (detail.empty() ? "" : "; " + detail));
}

void criterion4() {
  Criterion c("criterion 4, extension conditions", 30.0);
  std::size_t extOk = 0, retractTested = 0, retractOk = 0, traceTested = 0,
              traceOk = 0;
  for (int i = 0; i < 10; ++i) {
    GenId baseSize = 1 + static_cast<GenId>(i % 3);
    int depth = 1 + i % 3;
    std::vector<GenId> baseIds;
    for (GenId g = 0; g < baseSize; ++g) baseIds.push_back(g);
    SystemPtr base = NbhdSystem::seed(GenSet::fromIds(baseIds), depth);
    GenId fresh = 20 + static_cast<GenId>(i);
    NbhdSystem::EnrichmentInput in;
    in.cyclicGens = {Word::letter(L(fresh))};
    SystemPtr big = NbhdSystem::cyclicEnrich(
        base, in, base->alphabet().unionWith(GenSet::fromIds({fresh})));

    VerifyOptions vo;
    vo.seed = 41 + i;
    if (isExtension(big, base, vo).ok()) ++extOk;

    EnumOptions eo;
    eo.exponentBudget = 4;
    TreeSampler sampler(big, 43 + i, eo);
    for (int lvl = 0; lvl <= big->depth(); ++lvl) {
      for (int s = 0; s < 36; ++s) {  // 10 systems x 29 levels x 36 > 10^3
        auto it = sampler.sample(lvl);
        if (!it) continue;
        ++retractTested;
        try {
          TreePtr down = retractCert(big, it->cert);
          if (down->word == retraction(base->alphabet(), it->word) &&
              checkCertificate(base, down, lvl).ok) {
            ++retractOk;
          }
        } catch (const Error&) {
        }
        if (base->alphabet().containsWord(it->word)) {
          ++traceTested;
          try {
            TreePtr t = transportToAncestor(big, base, it->cert);
            if (t->word == it->word && checkCertificate(base, t, lvl).ok) ++traceOk;
          } catch (const Error&) {
          }
        }
      }
    }
  }
  c.finish(extOk == 10 && retractTested >= 1000 && retractOk == retractTested &&
               traceOk == traceTested && traceTested > 0,
           "10/10 extensions pass; retraction " + std::to_string(retractOk) + "/" +
               std::to_string(retractTested) + "; trace " + std::to_string(traceOk) +
               "/" + std::to_string(traceTested));
}

void criterion5() {
  Criterion c("criterion 5, letter-count bound", 30.0);
  std::size_t trees = 0, within = 0;
  double maxRatio = 0;
  for (int i = 0; i < 6; ++i) {
    GenId baseSize = 1 + static_cast<GenId>(i % 3);
    int depth = 1 + i % 3;
    std::vector<GenId> baseIds;
    for (GenId g = 0; g < baseSize; ++g) baseIds.push_back(g);
    SystemPtr base = NbhdSystem::seed(GenSet::fromIds(baseIds), depth);
    GenId fresh = 30 + static_cast<GenId>(i);
    NbhdSystem::EnrichmentInput in;
    in.cyclicGens = {Word::letter(L(fresh))};
    SystemPtr big = NbhdSystem::cyclicEnrich(
        base, in, base->alphabet().unionWith(GenSet::fromIds({fresh})));
    EnumOptions eo;
    eo.depthBudget = 3;
    eo.exponentBudget = 8;
    eo.maxItems = 1500;
    for (int lvl = 0; lvl <= big->depth(); ++lvl) {
      for (const auto& it : enumerateLevel(big, lvl, eo)) {
        ++trees;
        auto [sum, bound] = letterBoundStats(it.cert, baseSize, big->depth());
        if (sum <= bound) ++within;
        maxRatio = std::max(maxRatio, double(sum) / double(bound));
      }
    }
  }
  c.finish(trees == within && maxRatio <= 1.0,
           std::to_string(within) + "/" + std::to_string(trees) +
               " enumerated derivations within |X|*4^(n-i), max ratio " +
               std::to_string(maxRatio));
}

void criterion6() {
  Criterion c("criterion 6, rewriting lemma batteries", 20.0);
  SuiteOptions so;
  so.samples = 1000;
  so.seed = 61;
  Report sandwich = sandwichSuite(so);
  Report eta = etaEqualitySuite(so);
  c.finish(sandwich.ok() && eta.ok(),
           sandwich.entries[0].detail + "; " + eta.entries[0].detail);
}

void criterion7() {
  Criterion c("criterion 7, assgp extension", 60.0);
  bool ok = true;
  std::string detail;

  {
    AlphabetRegistry reg;
    reg.add("x0");
    SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 1);
    AssgpWitness w = assgpExtend(reg, base, Word::letter(L(0)), 1);
    if (w.freshCount() != 5 || w.foldExact() != Word::letter(L(0)) ||
        !w.pipeline.ok()) {
      ok = false;
      detail = "k=5 case failed";
    }
  }
  {
    AlphabetRegistry reg;
    reg.add("x0");
    reg.add("x1");
    SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0, 1}), 2);
    Word g = mul(Word::letter(L(0)), Word::letter(L(1, -1)));
    AssgpWitness w = assgpExtend(reg, base, g, 1);
    if (w.freshCount() != 33) {
      ok = false;
      detail = "expected k = 33, got " + std::to_string(w.freshCount());
    }
    if (w.foldExact() != g || !w.pipeline.ok()) {
      ok = false;
      detail = "k=33 witness failed to re-verify";
    }
    std::size_t certified = 0, wanted = 0;
    for (std::uint64_t i = 0; i < w.factorCount(); ++i) {
      Word f = w.factorAt(i);
      for (std::int64_t q = -10; q <= 10; ++q) {
        ++wanted;
        Verdict v = memberDecide(w.extended, 2, pow(f, q));
        if (v.in() && checkCertificate(w.extended, v.cert, 2).ok) ++certified;
      }
    }
    if (certified != wanted) {
      ok = false;
      detail = "factor powers certified " + std::to_string(certified) + "/" +
               std::to_string(wanted);
    } else if (detail.empty()) {
      detail = "k=5 and k=33 witnesses fold back; " + std::to_string(certified) +
               " factor powers certified at the bottom level";
    }
  }
  c.finish(ok, detail);
}

struct Criterion8Result {
  bool pass = false;
  std::filesystem::path runDir;
};

Criterion8Result criterion8(const std::filesystem::path& dir, int round,
                            bool printLine) {
  Criterion c("criterion 8, end-to-end countable construction", 120.0);
  Criterion8Result result;
  result.runDir = dir / ("run-" + std::to_string(round));

  ChainOptions opts;
  opts.seed = 8;
  ChainState chain(opts);
  AlphabetRegistry scratch;
  ScheduleParams params;  // maxWordLen 4, 3 generators, maxDepth 3
  std::vector<Task> tasks = defaultSchedule(scratch, params);
  chain.run(tasks);

  bool leqOk = true;
  for (const Report& r : chain.leqReports()) leqOk = leqOk && r.ok();

  auto words = oracle::reducedWordsUpTo(3, 4);
  std::size_t sepOk = 0, sepWanted = 0, certOk = 0, certWanted = 0;
  for (const Word& w : words) {
    if (!w.empty()) {
      ++sepWanted;
      auto sep = chain.separationWitness(w);
      if (sep &&
          memberDecide(chain.stages()[sep->stage].system, sep->level, w).notIn()) {
        ++sepOk;
      }
    }
    for (int n = 0; n <= 3; ++n) {
      ++certWanted;
      auto q = chain.assgpCertificate(w, n);
      if (q && q->fold == w && q->spotReport.ok()) ++certOk;
    }
  }

  OracleSuiteOptions so;
  so.seed = 8;
  Report suites = oracleSuites(chain, so);

  std::map<std::string, double> phases;
  phases["build-and-queries"] =
      std::chrono::duration<double>(Clock::now() - c.start).count();
  RunPaths paths{result.runDir};
  writeRun(paths, chain, tasks, phases);
  writeReportFile(paths, "oracle-suites", suites);

  result.pass = leqOk && sepOk == sepWanted && certOk == certWanted && suites.ok();
  if (printLine) {
    c.finish(result.pass,
             "chain of " + std::to_string(chain.stages().size()) + " stages; " +
                 std::to_string(sepOk) + "/" + std::to_string(sepWanted) +
                 " separations replay; " + std::to_string(certOk) + "/" +
                 std::to_string(certWanted) +
                 " factorizations fold and spot-check; suites " +
                 (suites.ok() ? "pass" : "FAIL"));
  }
  return result;
}

void criterion9(const std::filesystem::path& dir,
                const Criterion8Result& first) {
  Criterion c("criterion 9, determinism", 300.0);
  Criterion8Result second = criterion8(dir, 2, false);
  auto bytes = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  std::string a = bytes(RunPaths{first.runDir}.manifest());
  std::string b = bytes(RunPaths{second.runDir}.manifest());
  bool ok = second.pass && !a.empty() && a == b;
  c.finish(ok, ok ? "replayed run manifest is byte-identical (" +
                        std::to_string(a.size()) + " bytes)"
                  : "manifests differ or the replay failed");
}

}  // namespace

int main() {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "assgp-acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  Criterion8Result c8 = criterion8(dir, 1, true);
  criterion9(dir, c8);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " acceptance criteria failed" << std::endl;
  return 1;
}
