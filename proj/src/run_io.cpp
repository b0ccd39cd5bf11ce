#include "assgp/run_io.hpp"

#include <fstream>

#include "assgp/errors.hpp"
#include "assgp/hash.hpp"

namespace assgp {

Json readJsonFile(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ValidationError("cannot open " + p.string());
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("bad JSON in " + p.string() + ": " + e.what());
  }
  return j;
}

void writeJsonFile(const std::filesystem::path& p, const Json& j) {
  std::ofstream out(p);
  if (!out) throw ValidationError("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

namespace {

std::string stageFileName(std::uint32_t id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "stage-%05u.json", id);
  return buf;
}

Json budgetsToJson(const ChainOptions& o) {
  Json j;
  j["searchMaxExponent"] = o.search.maxExponent;
  j["searchMaxNodes"] = o.search.maxNodes;
  j["searchMaxCandidates"] = o.search.maxCandidates;
  j["searchMaxWordLen"] = o.search.maxWordLen;
  j["leqSamples"] = o.leqSamples;
  j["assgpVerifySamples"] = o.assgp.verifySamples;
  j["assgpSpotExponent"] = o.assgp.spotExponent;
  j["giantThreshold"] = o.giantThreshold;
  return j;
}

}  // namespace

struct ChainIo {
  static void save(const RunPaths& paths, const ChainState& chain,
                   const std::vector<Task>& schedule,
                   const std::map<std::string, double>& phaseSeconds) {
    namespace fs = std::filesystem;
    fs::create_directories(paths.root);
    fs::create_directories(paths.stagesDir());
    fs::create_directories(paths.certsDir());
    fs::create_directories(paths.reportsDir());

    const AlphabetRegistry& reg = chain.registry();
    writeJsonFile(paths.registryFile(), registryToJson(reg));

    Json scheduleJson = scheduleToJson(schedule, reg);
    writeJsonFile(paths.scheduleFile(), scheduleJson);

    for (const Condition& c : chain.stages()) {
      writeJsonFile(paths.stagesDir() / stageFileName(c.stageId), stageToJson(c, reg));
    }

    // certificates
    Json seps = Json::array();
    for (const auto& [g, cert] : chain.separations()) {
      seps.push_back(Json{{"g", wordToJson(g)},
                          {"stage", cert.stage},
                          {"level", cert.level}});
    }
    writeJsonFile(paths.certsDir() / "separations.json",
                  Json{{"schema", "assgp-separations/1"}, {"certs", std::move(seps)}});

    Json witnesses = Json::array();
    for (const LetterWitness& w : chain.letterWitnesses()) {
      const Condition& stage = chain.stages()[w.stage];
      Json wj;
      wj["target"] = wordToJson(w.target);
      wj["stage"] = w.stage;
      wj["baseHash"] = hashHex(stage.system->parent()->hash());
      wj["extendedHash"] = hashHex(stage.system->hash());
      wj["fresh"] = Json::array({w.fresh.first, w.fresh.second});
      wj["bottomLevel"] = w.bottomLevel;
      wj["factorCount"] = w.freshCount() + 1;  // fresh inverses plus g0
      witnesses.push_back(std::move(wj));
    }
    Json records = Json::array();
    for (const auto& [g, rec] : chain.assgpRecords()) {
      Json runs = Json::array();
      for (const auto& r : rec.runs) {
        runs.push_back(Json{{"witness", r.witnessIndex}, {"inverted", r.inverted}});
      }
      records.push_back(Json{{"g", wordToJson(g)},
                             {"stage", rec.stage},
                             {"bottom", rec.bottom},
                             {"runs", std::move(runs)}});
    }
    Json processed = Json::array();
    for (const auto& [g, n] : chain.processedAssgp_) {
      processed.push_back(Json{{"g", wordToJson(g)}, {"n", n}});
    }
    writeJsonFile(paths.certsDir() / "assgp.json",
                  Json{{"schema", "assgp-factorizations/1"},
                       {"letterWitnesses", std::move(witnesses)},
                       {"records", std::move(records)},
                       {"processed", std::move(processed)}});

    Json leq = Json::array();
    for (const Report& r : chain.leqReports()) leq.push_back(reportToJson(r));
    writeJsonFile(paths.reportsDir() / "leq.json",
                  Json{{"schema", "assgp-leq/1"}, {"reports", std::move(leq)}});

    // manifest (deterministic; timings live in their own file)
    Json manifest;
    manifest["schema"] = "assgp-run/1";
    manifest["scheduleHash"] = hashHex(jsonContentHash(scheduleJson));
    manifest["seed"] = chain.options().seed;
    manifest["budgets"] = budgetsToJson(chain.options());
    Json stages = Json::array();
    for (const Condition& c : chain.stages()) {
      stages.push_back(Json{{"id", c.stageId},
                            {"parent", c.parentStage},
                            {"hash", hashHex(c.system->hash())},
                            {"alphabet", c.alphabet().count()},
                            {"depth", c.depth()},
                            {"note", c.note}});
    }
    manifest["stages"] = std::move(stages);
    Json log = Json::array();
    for (const TaskRecord& r : chain.log()) {
      Json t = taskToJson(r.task, reg);
      t["index"] = r.index;
      t["met"] = r.metStage;
      t["detail"] = r.detail;
      log.push_back(std::move(t));
    }
    manifest["tasks"] = std::move(log);
    manifest["counts"] = Json{{"stages", chain.stages().size()},
                              {"separations", chain.separations().size()},
                              {"assgpRecords", chain.assgpRecords().size()},
                              {"letterWitnesses", chain.letterWitnesses().size()},
                              {"tasks", chain.log().size()}};
    writeJsonFile(paths.manifest(), manifest);

    Json timings;
    timings["schema"] = "assgp-timings/1";
    Json phases;
    for (const auto& [name, secs] : phaseSeconds) phases[name] = secs;
    timings["phasesSeconds"] = std::move(phases);
    writeJsonFile(paths.timings(), timings);
  }

  static ChainState load(const RunPaths& paths, ChainOptions opts) {
    Json manifest = readJsonFile(paths.manifest());
    if (manifest.value("schema", "") != "assgp-run/1") {
      throw ValidationError("not a run manifest: " + paths.manifest().string());
    }
    opts.seed = manifest.at("seed").get<std::uint64_t>();
    ChainState chain(opts);
    chain.registry_ = registryFromJson(readJsonFile(paths.registryFile()));
    chain.stages_.clear();

    std::map<std::string, SystemPtr> byHash;
    for (const auto& s : manifest.at("stages")) {
      std::uint32_t id = s.at("id").get<std::uint32_t>();
      Json sj = readJsonFile(paths.stagesDir() / stageFileName(id));
      SystemPtr sys = rebuildSystem(sj, byHash);
      std::string wantHash = sj.at("hash").get<std::string>();
      if (hashHex(sys->hash()) != wantHash) {
        throw ValidationError("stage " + std::to_string(id) +
                              " rebuilt with a different content hash");
      }
      byHash[wantHash] = sys;
      Condition c;
      c.stageId = id;
      c.parentStage = sj.at("parentStage").get<std::uint32_t>();
      c.system = std::move(sys);
      c.note = sj.value("note", "");
      chain.stages_.push_back(std::move(c));
    }
    if (chain.stages_.empty()) throw ValidationError("run has no stages");

    Json certs = readJsonFile(paths.certsDir() / "separations.json");
    for (const auto& cj : certs.at("certs")) {
      SeparationCert cert{wordFromJson(cj.at("g")), cj.at("stage").get<std::uint32_t>(),
                          cj.at("level").get<int>()};
      chain.processedSep_.insert(cert.g);
      chain.separations_[cert.g] = std::move(cert);
    }

    Json aj = readJsonFile(paths.certsDir() / "assgp.json");
    for (const auto& wj : aj.at("letterWitnesses")) {
      LetterWitness w;
      w.target = wordFromJson(wj.at("target"));
      w.stage = wj.at("stage").get<std::uint32_t>();
      w.fresh = {wj.at("fresh")[0].get<GenId>(), wj.at("fresh")[1].get<GenId>()};
      w.bottomLevel = wj.at("bottomLevel").get<int>();
      w.g0 = chain.stages_.at(w.stage).system->assgpG0();
      if (w.g0.empty()) {
        throw ValidationError("letter witness points at a stage without g0");
      }
      chain.witnesses_.push_back(std::move(w));
      const LetterWitness& stored = chain.witnesses_.back();
      if (stored.target.size() == 1 && signOf(stored.target[0]) > 0) {
        chain.witnessByLetter_.emplace(baseOf(stored.target[0]),
                                       chain.witnesses_.size() - 1);
      }
    }
    for (const auto& rj : aj.at("records")) {
      AssgpRecord rec;
      rec.g = wordFromJson(rj.at("g"));
      rec.stage = rj.at("stage").get<std::uint32_t>();
      rec.bottom = rj.at("bottom").get<int>();
      for (const auto& run : rj.at("runs")) {
        rec.runs.push_back(
            {run.at("witness").get<std::size_t>(), run.at("inverted").get<bool>()});
      }
      chain.assgpRecords_[rec.g] = std::move(rec);
    }
    for (const auto& pj : aj.at("processed")) {
      chain.processedAssgp_.insert({wordFromJson(pj.at("g")), pj.at("n").get<int>()});
    }

    for (const auto& tj : manifest.at("tasks")) {
      TaskRecord r;
      r.index = tj.at("index").get<std::size_t>();
      r.task = taskFromJson(tj, chain.registry_);
      r.metStage = tj.at("met").get<std::uint32_t>();
      r.detail = tj.value("detail", "");
      chain.log_.push_back(std::move(r));
    }
    chain.taskCounter_ = chain.log_.size();
    return chain;
  }

  static SystemPtr rebuildSystem(const Json& sj,
                                 const std::map<std::string, SystemPtr>& byHash) {
    std::string kind = sj.at("kind").get<std::string>();
    GenSet alphabet = genSetFromJson(sj.at("alphabet"));
    int depth = sj.at("depth").get<int>();
    if (kind == "seed") {
      return NbhdSystem::seed(std::move(alphabet), depth);
    }
    SystemPtr parent;
    if (kind == "padding" || kind == "enrichment") {
      auto it = byHash.find(sj.at("parentHash").get<std::string>());
      if (it == byHash.end()) {
        throw ValidationError("stage parent hash not found among earlier stages");
      }
      parent = it->second;
    }
    if (kind == "padding") {
      return NbhdSystem::padExtend(parent, depth);
    }
    if (kind == "enrichment") {
      const Json& b = sj.at("bottom");
      std::string ek = sj.at("enrichKind").get<std::string>();
      if (ek == "assgp-B") {
        const Json& g0j = b.at("g0");
        GenId lo = g0j.at("freshRange")[0].get<GenId>();
        GenId hi = g0j.at("freshRange")[1].get<GenId>();
        Word tail = wordFromJson(g0j.at("tail"));
        std::vector<Letter> raw;
        raw.reserve(hi - lo + tail.size());
        for (GenId id = lo; id < hi; ++id) raw.push_back(letterOf(id, 1));
        for (Letter l : tail) raw.push_back(l);
        Word g0 = Word::fromReduced(std::move(raw));
        return NbhdSystem::assgpEnrich(parent, {lo, hi}, std::move(g0),
                                       std::move(alphabet));
      }
      NbhdSystem::EnrichmentInput in;
      for (const auto& w : b.at("explicit")) in.explicitWords.push_back(wordFromJson(w));
      for (const auto& w : b.at("cyclicGens")) in.cyclicGens.push_back(wordFromJson(w));
      for (const auto& r : b.at("cyclicRanges")) {
        in.cyclicRanges.push_back({r[0].get<GenId>(), r[1].get<GenId>()});
      }
      return NbhdSystem::enrich(parent, std::move(in), std::move(alphabet));
    }
    throw ValidationError("unknown stage kind: " + kind);
  }
};

void writeRun(const RunPaths& paths, const ChainState& chain,
              const std::vector<Task>& schedule,
              const std::map<std::string, double>& phaseSeconds) {
  ChainIo::save(paths, chain, schedule, phaseSeconds);
}

void writeReportFile(const RunPaths& paths, const std::string& name,
                     const Report& report) {
  std::filesystem::create_directories(paths.reportsDir());
  writeJsonFile(paths.reportsDir() / (name + ".json"), reportToJson(report));
}

LoadedRun loadRun(const RunPaths& paths, ChainOptions opts) {
  ChainState chain = ChainIo::load(paths, std::move(opts));
  AlphabetRegistry& reg = chain.registry();
  std::vector<Task> schedule =
      scheduleFromJson(readJsonFile(paths.scheduleFile()), reg);
  Json manifest = readJsonFile(paths.manifest());
  return {std::move(chain), std::move(schedule), std::move(manifest)};
}

}  // namespace assgp
