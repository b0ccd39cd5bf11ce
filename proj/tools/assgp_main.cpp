#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "assgp/hash.hpp"
#include "assgp/run_io.hpp"
#include "assgp/schedule.hpp"
#include "assgp/suites.hpp"
#include "assgp/word_text.hpp"

namespace {

using namespace assgp;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUnknown = 2;

void printReport(const Report& rep, bool asJson, const std::string& title) {
  if (asJson) {
    Json j = reportToJson(rep);
    j["suite"] = title;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << title << ":\n";
  for (const auto& e : rep.entries) {
    std::cout << "  [" << (e.pass ? "pass" : "FAIL") << "] " << e.condition
              << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
  }
}

struct BuildArgs {
  std::string scheduleFile;
  std::string outDir;
  std::uint64_t seed = 1;
  std::size_t samples = 40;
  int maxExponent = 16;
  std::size_t maxWordLen = 4;
  std::size_t generators = 3;
  int maxDepth = 3;
  bool json = false;
};

int runBuild(const BuildArgs& a) {
  ChainOptions opts;
  opts.seed = a.seed;
  opts.search.maxExponent = a.maxExponent;
  opts.leqSamples = a.samples;
  opts.assgp.verifySamples = a.samples;
  opts.assgp.seed = a.seed;

  std::map<std::string, double> phases;
  auto t0 = Clock::now();
  ChainState chain(opts);
  std::vector<Task> tasks;
  if (!a.scheduleFile.empty()) {
    tasks = scheduleFromJson(readJsonFile(a.scheduleFile), chain.registry());
  } else {
    ScheduleParams p;
    p.maxWordLen = a.maxWordLen;
    p.generators = a.generators;
    p.maxDepth = a.maxDepth;
    tasks = defaultSchedule(chain.registry(), p);
  }
  phases["schedule"] = std::chrono::duration<double>(Clock::now() - t0).count();

  auto t1 = Clock::now();
  chain.run(tasks);
  phases["build"] = std::chrono::duration<double>(Clock::now() - t1).count();

  auto t2 = Clock::now();
  OracleSuiteOptions so;
  so.seed = a.seed;
  Report suites = oracleSuites(chain, so);
  phases["suites"] = std::chrono::duration<double>(Clock::now() - t2).count();

  auto t3 = Clock::now();
  RunPaths paths{a.outDir};
  writeRun(paths, chain, tasks, phases);
  Json suitesJson = reportToJson(suites);
  suitesJson["options"] = Json{{"samplesPerStage", so.samplesPerStage},
                               {"seed", so.seed},
                               {"maxWordLen", so.maxWordLen}};
  writeJsonFile(paths.reportsDir() / "oracle-suites.json", suitesJson);
  phases["write"] = std::chrono::duration<double>(Clock::now() - t3).count();

  bool leqOk = true;
  for (const Report& r : chain.leqReports()) leqOk = leqOk && r.ok();
  if (a.json) {
    Json j;
    j["stages"] = chain.stages().size();
    j["tasks"] = chain.log().size();
    j["alphabet"] = chain.tail().alphabet().count();
    j["suitesOk"] = suites.ok();
    j["leqOk"] = leqOk;
    j["out"] = a.outDir;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "chain built: " << chain.stages().size() << " stages, "
              << chain.log().size() << " tasks, alphabet size "
              << chain.tail().alphabet().count() << "\n";
    printReport(suites, false, "invariant suites");
    std::cout << "run written to " << a.outDir << "\n";
  }
  return suites.ok() && leqOk ? kExitOk : kExitFailure;
}

int runSeparate(const std::string& runDir, const std::string& gText, bool asJson) {
  RunPaths paths{runDir};
  LoadedRun run = loadRun(paths);
  Word g = parseWord(run.chain.registry(), gText);
  if (g.empty()) {
    std::cerr << "error: the identity is never separated\n";
    return kExitFailure;
  }
  auto cert = run.chain.separationWitness(g);
  if (!cert) {
    std::cerr << "error: no separation witness recorded for '" << gText
              << "' (the schedule never met its dense set)\n";
    return kExitUnknown;
  }
  const Condition& stage = run.chain.stages()[cert->stage];
  Verdict replay = memberDecide(stage.system, cert->level, g);
  bool ok = replay.notIn();
  if (asJson) {
    Json j;
    j["g"] = gText;
    j["level"] = cert->level;
    j["stage"] = cert->stage;
    j["replays"] = ok;
    if (replay.exclusion) {
      Json steps = Json::array();
      for (const auto& s : replay.exclusion->steps) {
        steps.push_back(Json{{"rule", s.rule},
                             {"system", hashHex(s.systemHash)},
                             {"level", s.level},
                             {"detail", s.detail}});
      }
      j["exclusion"] = std::move(steps);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "separation witness for " << gText << ": level " << cert->level
              << " at stage " << cert->stage << (ok ? " (replays)" : " (REPLAY FAILED)")
              << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int runCertify(const std::string& runDir, const std::string& gText, int n,
               bool asJson) {
  RunPaths paths{runDir};
  LoadedRun run = loadRun(paths);
  Word g = parseWord(run.chain.registry(), gText);
  auto q = run.chain.assgpCertificate(g, n);
  if (!q) {
    std::cerr << "error: no factorization recorded for '" << gText
              << "' at level " << n << "\n";
    return kExitUnknown;
  }
  bool ok = q->fold == g && q->spotReport.ok();
  if (asJson) {
    Json j;
    j["g"] = gText;
    j["n"] = n;
    j["stage"] = q->record->stage;
    j["factorCount"] = q->factorCount;
    j["foldsToG"] = q->fold == g;
    j["spot"] = reportToJson(q->spotReport);
    if (q->factorCount <= 64) {
      Json factors = Json::array();
      for (std::uint64_t i = 0; i < q->factorCount; ++i) {
        factors.push_back(run.chain.registry().format(
            run.chain.recordFactorAt(*q->record, i)));
      }
      j["factors"] = std::move(factors);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "factorization of " << gText << " at level " << n << ": "
              << q->factorCount << " factors, fold "
              << (q->fold == g ? "matches" : "MISMATCH") << ", spot checks "
              << (q->spotReport.ok() ? "pass" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int runChainReport(const std::string& runDir, bool asJson) {
  RunPaths paths{runDir};
  LoadedRun run = loadRun(paths);
  const Json& m = run.manifest;
  Json suites;
  bool suitesOk = true;
  auto suitesPath = paths.reportsDir() / "oracle-suites.json";
  if (std::filesystem::exists(suitesPath)) {
    suites = readJsonFile(suitesPath);
    suitesOk = suites.value("ok", false);
  }
  if (asJson) {
    Json j;
    j["manifest"] = m;
    if (!suites.is_null()) j["oracleSuites"] = suites;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "run " << runDir << "\n";
    std::cout << "  schedule hash: " << m.value("scheduleHash", "?") << "\n";
    std::cout << "  seed: " << m.value("seed", 0) << "\n";
    std::cout << "  stages:\n";
    for (const auto& s : m.at("stages")) {
      std::cout << "    #" << s.at("id") << " depth " << s.at("depth")
                << " alphabet " << s.at("alphabet") << "  " << s.value("note", "")
                << "\n";
    }
    const auto& counts = m.at("counts");
    std::cout << "  tasks: " << counts.at("tasks") << ", separations: "
              << counts.at("separations") << ", factorizations: "
              << counts.at("assgpRecords") << "\n";
    std::cout << "  oracle suites: " << (suitesOk ? "pass" : "FAIL") << "\n";
  }
  return suitesOk ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified neighbourhood-system engine for free-group topologies"};
  app.require_subcommand(1);

  // ---- word ----
  auto* word = app.add_subcommand("word", "reduced-word arithmetic");
  word->require_subcommand(1);
  static std::string wa, wb;
  auto addWordCmd = [&](const char* name, const char* help, int arity) {
    auto* c = word->add_subcommand(name, help);
    c->add_option("a", wa, "word, e.g. \"x0 x1^-1\"")->required();
    if (arity == 2) c->add_option("b", wb, "second word")->required();
    return c;
  };
  auto* wReduce = addWordCmd("reduce", "reduce a raw word", 1);
  auto* wMul = addWordCmd("mul", "product of two words", 2);
  auto* wInv = addWordCmd("inv", "inverse of a word", 1);
  auto* wLett = addWordCmd("lett", "letters occurring in a word", 1);
  auto* wCyc = addWordCmd("cyclic-member", "exponent q with a = b^q, if any", 2);

  // ---- chain ----
  auto* chainCmd = app.add_subcommand("chain", "generic chain construction and queries");
  chainCmd->require_subcommand(1);
  static BuildArgs ba;
  auto* build = chainCmd->add_subcommand("build", "run a schedule and persist the chain");
  build->add_option("--schedule", ba.scheduleFile, "schedule JSON file");
  build->add_option("--out", ba.outDir, "run directory")->required();
  build->add_option("--seed", ba.seed, "deterministic seed");
  build->add_option("--samples", ba.samples, "verification samples per battery");
  build->add_option("--max-exponent", ba.maxExponent, "search exponent budget");
  build->add_option("--max-word-len", ba.maxWordLen, "default schedule: word length");
  build->add_option("--generators", ba.generators, "default schedule: seed letters");
  build->add_option("--max-depth", ba.maxDepth, "default schedule: depth");
  build->add_flag("--json", ba.json, "machine-readable output");

  static std::string runDir, gText;
  static int levelN = 0;
  static bool qJson = false;
  auto* sep = chainCmd->add_subcommand("separate", "separation witness for a word");
  sep->add_option("g", gText)->required();
  sep->add_option("--run", runDir)->required();
  sep->add_flag("--json", qJson);
  auto* cert = chainCmd->add_subcommand("certify-assgp", "factorization certificate");
  cert->add_option("g", gText)->required();
  cert->add_option("n", levelN)->required();
  cert->add_option("--run", runDir)->required();
  cert->add_flag("--json", qJson);
  auto* rep = chainCmd->add_subcommand("report", "summarize a stored run");
  rep->add_option("--run", runDir)->required();
  rep->add_flag("--json", qJson);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "lemma batteries and system checks");
  verify->require_subcommand(1);
  static std::size_t samples = 1000;
  static std::uint64_t vseed = 7;
  static bool vJson = false;
  static std::string systemFile;
  auto* lemmas = verify->add_subcommand("lemmas", "rewriting/equality/bound batteries");
  lemmas->add_option("--samples", samples);
  lemmas->add_option("--seed", vseed);
  lemmas->add_flag("--json", vJson);
  auto* vsys = verify->add_subcommand("system", "check a system manifest");
  vsys->add_option("file", systemFile)->required();
  vsys->add_flag("--json", vJson);

  CLI11_PARSE(app, argc, argv);

  try {
    if (word->parsed()) {
      AlphabetRegistry reg;
      if (wReduce->parsed()) {
        std::cout << reg.format(parseWordRegistering(reg, wa)) << "\n";
      } else if (wMul->parsed()) {
        Word a = parseWordRegistering(reg, wa);
        Word b = parseWordRegistering(reg, wb);
        std::cout << reg.format(mul(a, b)) << "\n";
      } else if (wInv->parsed()) {
        std::cout << reg.format(inv(parseWordRegistering(reg, wa))) << "\n";
      } else if (wLett->parsed()) {
        Word a = parseWordRegistering(reg, wa);
        std::string out;
        for (GenId id : lett(a).toIds(1 << 20)) {
          if (!out.empty()) out += ' ';
          out += reg.name(id);
        }
        std::cout << (out.empty() ? "(none)" : out) << "\n";
      } else if (wCyc->parsed()) {
        Word h = parseWordRegistering(reg, wa);
        Word c = parseWordRegistering(reg, wb);
        auto q = cyclicMember(h, c);
        if (q) {
          std::cout << *q << "\n";
        } else {
          std::cout << "not a power\n";
          return kExitFailure;
        }
      }
      return kExitOk;
    }

    if (chainCmd->parsed()) {
      if (build->parsed()) return runBuild(ba);
      if (sep->parsed()) return runSeparate(runDir, gText, qJson);
      if (cert->parsed()) return runCertify(runDir, gText, levelN, qJson);
      if (rep->parsed()) return runChainReport(runDir, qJson);
    }

    if (verify->parsed()) {
      if (lemmas->parsed()) {
        SuiteOptions so;
        so.samples = samples;
        so.seed = vseed;
        Report r = lemmaSuites(so);
        printReport(r, vJson, "lemma batteries");
        return r.ok() ? kExitOk : kExitFailure;
      }
      if (vsys->parsed()) {
        SystemPtr sys = rawSystemFromJson(readJsonFile(systemFile));
        Report r = verifySystem(sys);
        printReport(r, vJson, "system conditions");
        return r.ok() ? kExitOk : kExitFailure;
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
