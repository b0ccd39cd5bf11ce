#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "assgp/run_io.hpp"
#include "assgp/schedule.hpp"
#include "assgp/suites.hpp"
#include "assgp/word_text.hpp"

namespace py = pybind11;
using namespace assgp;

namespace {

struct PyEngine {
  std::shared_ptr<AlphabetRegistry> reg = std::make_shared<AlphabetRegistry>();
  Word parse(const std::string& s) { return parseWordRegistering(*reg, s); }
  std::string fmt(const Word& w) const { return reg->format(w); }
};

struct PySystem {
  std::shared_ptr<AlphabetRegistry> reg;
  SystemPtr sys;
};

struct PyChain {
  std::shared_ptr<ChainState> chain;
};

py::list reportToList(const Report& r) {
  py::list out;
  for (const auto& e : r.entries) {
    out.append(py::make_tuple(e.condition, e.pass, e.detail));
  }
  return out;
}

py::dict verdictToDict(const PyEngine& eng, const Verdict& v) {
  py::dict d;
  d["verdict"] = v.in() ? "in" : v.notIn() ? "not-in" : "unknown";
  d["nodes"] = v.nodesSpent;
  if (v.in()) {
    d["word"] = eng.fmt(v.cert->word);
    d["certificate"] = treeToJson(v.cert).dump();
  }
  if (v.notIn() && v.exclusion) {
    py::list steps;
    for (const auto& s : v.exclusion->steps) {
      steps.append(py::make_tuple(s.rule, s.level, s.detail));
    }
    d["exclusion"] = steps;
  }
  return d;
}

GenSet namesToGenSet(PyEngine& eng, const std::vector<std::string>& names) {
  std::vector<GenId> ids;
  for (const auto& n : names) ids.push_back(eng.reg->ensureNamed(n));
  return GenSet::fromIds(ids);
}

}  // namespace

PYBIND11_MODULE(_assgp, m) {
  m.doc() = "free-group neighbourhood systems with machine-checkable certificates";

  py::register_exception<Error>(m, "EngineError");

  py::class_<PyEngine>(m, "Engine")
      .def(py::init<>())
      .def("reduce", [](PyEngine& e, const std::string& s) { return e.fmt(e.parse(s)); })
      .def("mul",
           [](PyEngine& e, const std::string& a, const std::string& b) {
             return e.fmt(mul(e.parse(a), e.parse(b)));
           })
      .def("inv",
           [](PyEngine& e, const std::string& a) { return e.fmt(inv(e.parse(a))); })
      .def("pow",
           [](PyEngine& e, const std::string& a, std::int64_t q) {
             return e.fmt(pow(e.parse(a), q));
           })
      .def("lett",
           [](PyEngine& e, const std::string& a) {
             std::vector<std::string> out;
             for (GenId id : lett(e.parse(a)).toIds(1 << 20)) {
               out.push_back(e.reg->name(id));
             }
             return out;
           })
      .def("split_cancellation",
           [](PyEngine& e, const std::string& a, const std::string& b) {
             auto s = splitCancellation(e.parse(a), e.parse(b));
             return py::make_tuple(e.fmt(s.vPrefix), e.fmt(s.vSuffix),
                                   e.fmt(s.wPrefix), e.fmt(s.wSuffix));
           })
      .def("cyclic_member",
           [](PyEngine& e, const std::string& h, const std::string& c)
               -> std::optional<std::int64_t> {
             return cyclicMember(e.parse(h), e.parse(c));
           })
      .def("retraction",
           [](PyEngine& e, const std::vector<std::string>& keep,
              const std::string& w) {
             return e.fmt(retraction(namesToGenSet(e, keep), e.parse(w)));
           })
      .def("sandwich_reduce",
           [](PyEngine& e, const std::string& g0, const std::string& xj,
              const std::vector<std::string>& walls, const std::vector<int>& signs) {
             SandwichInstance inst;
             inst.g0 = e.parse(g0);
             auto id = e.reg->find(xj);
             if (!id) throw ValidationError("unknown distinguished letter");
             inst.distinguishedLetter = *id;
             for (const auto& w : walls) inst.walls.push_back(e.parse(w));
             inst.fillerSigns = signs;
             return e.fmt(sandwichReduce(inst));
           })
      .def("eta_equality",
           [](PyEngine& e, const std::vector<std::string>& factors,
              const std::string& g0, const std::string& xj) {
             std::vector<Word> fs;
             for (const auto& f : factors) fs.push_back(e.parse(f));
             auto id = e.reg->find(xj);
             if (!id) throw ValidationError("unknown distinguished letter");
             auto r = etaEquality(fs, e.parse(g0), *id);
             return py::make_tuple(r.equal, e.fmt(r.lhs), e.fmt(r.rhs));
           })
      .def("seed_system",
           [](PyEngine& e, const std::vector<std::string>& alphabet, int depth) {
             return PySystem{e.reg, NbhdSystem::seed(namesToGenSet(e, alphabet), depth)};
           })
      .def("assgp_extend", [](PyEngine& e, const PySystem& base,
                              const std::string& g) {
        AssgpWitness w = assgpExtend(*e.reg, base.sys, e.parse(g), 1);
        py::dict d;
        d["k"] = w.freshCount();
        d["g0"] = e.fmt(w.g0);
        d["folds_to_g"] = w.foldExact() == e.parse(g);
        d["pipeline_ok"] = w.pipeline.ok();
        d["pipeline"] = reportToList(w.pipeline);
        d["extended"] = PySystem{e.reg, w.extended};
        return d;
      });

  py::class_<PySystem>(m, "System")
      .def_property_readonly("depth", [](const PySystem& s) { return s.sys->depth(); })
      .def_property_readonly(
          "alphabet_size", [](const PySystem& s) { return s.sys->alphabet().count(); })
      .def("describe", [](const PySystem& s) { return s.sys->describe(); })
      .def("pad_extend",
           [](const PySystem& s, int depth) {
             return PySystem{s.reg, NbhdSystem::padExtend(s.sys, depth)};
           })
      .def("cyclic_enrich",
           [](const PySystem& s, const std::vector<std::string>& gens) {
             NbhdSystem::EnrichmentInput in;
             GenSet ambient = s.sys->alphabet();
             for (const auto& text : gens) {
               Word c = parseWordRegistering(*s.reg, text);
               in.cyclicGens.push_back(c);
               ambient = ambient.unionWith(lett(c));
             }
             return PySystem{s.reg, NbhdSystem::cyclicEnrich(s.sys, in, ambient)};
           })
      .def("member",
           [](const PySystem& s, int level, const std::string& w,
              std::uint64_t maxNodes) {
             SearchBudget b;
             b.maxNodes = maxNodes;
             PyEngine shim{s.reg};
             return verdictToDict(shim, memberDecide(s.sys, level,
                                                     parseWordRegistering(*s.reg, w), b));
           },
           py::arg("level"), py::arg("word"), py::arg("max_nodes") = 100000)
      .def("verify",
           [](const PySystem& s) { return reportToList(verifySystem(s.sys)); })
      .def("is_extension_of", [](const PySystem& s, const PySystem& small) {
        return reportToList(isExtension(s.sys, small.sys));
      })
      .def("enumerate_level",
           [](const PySystem& s, int level, int depthBudget, int exponentBudget,
              std::size_t maxItems) {
             EnumOptions eo;
             eo.depthBudget = depthBudget;
             eo.exponentBudget = exponentBudget;
             eo.maxItems = maxItems;
             std::vector<std::string> out;
             for (const auto& it : enumerateLevel(s.sys, level, eo)) {
               out.push_back(s.reg->format(it.word));
             }
             return out;
           },
           py::arg("level"), py::arg("depth_budget") = 2,
           py::arg("exponent_budget") = 3, py::arg("max_items") = 200);

  py::class_<PyChain>(m, "Chain")
      .def_property_readonly(
          "stage_count", [](const PyChain& c) { return c.chain->stages().size(); })
      .def_property_readonly("alphabet_size",
                             [](const PyChain& c) {
                               return c.chain->tail().alphabet().count();
                             })
      .def("u_member",
           [](const PyChain& c, const std::string& g, int n) {
             PyEngine shim{std::make_shared<AlphabetRegistry>(c.chain->registry())};
             Word w = parseWord(c.chain->registry(), g);
             return verdictToDict(shim, c.chain->uMember(w, n));
           })
      .def("separation_witness",
           [](const PyChain& c, const std::string& g) -> py::object {
             Word w = parseWord(c.chain->registry(), g);
             auto cert = c.chain->separationWitness(w);
             if (!cert) return py::none();
             py::dict d;
             d["stage"] = cert->stage;
             d["level"] = cert->level;
             d["replays"] =
                 memberDecide(c.chain->stages()[cert->stage].system, cert->level, w)
                     .notIn();
             return d;
           })
      .def("assgp_certificate",
           [](const PyChain& c, const std::string& g, int n) -> py::object {
             Word w = parseWord(c.chain->registry(), g);
             auto q = c.chain->assgpCertificate(w, n);
             if (!q) return py::none();
             py::dict d;
             d["stage"] = q->record->stage;
             d["factor_count"] = q->factorCount;
             d["folds_to_g"] = q->fold == w;
             d["spot_ok"] = q->spotReport.ok();
             return d;
           })
      .def("conjugation_level",
           [](const PyChain& c, const std::string& g, int n) {
             return c.chain->conjugationLevel(parseWord(c.chain->registry(), g), n);
           })
      .def("invariant_suites",
           [](const PyChain& c, std::size_t samples) {
             OracleSuiteOptions so;
             so.samplesPerStage = samples;
             return reportToList(oracleSuites(*c.chain, so));
           },
           py::arg("samples") = 20)
      .def("save", [](const PyChain& c, const std::string& dir) {
        // persists stages and certificates; schedule replay data comes from
        // the log
        std::vector<Task> tasks;
        for (const TaskRecord& r : c.chain->log()) tasks.push_back(r.task);
        writeRun(RunPaths{dir}, *c.chain, tasks, {});
      });

  m.def(
      "build_chain",
      [](std::size_t maxWordLen, std::size_t generators, int maxDepth,
         std::uint64_t seed, std::size_t samples) {
        ChainOptions opts;
        opts.seed = seed;
        opts.leqSamples = samples;
        opts.assgp.verifySamples = samples;
        auto chain = std::make_shared<ChainState>(opts);
        ScheduleParams p;
        p.maxWordLen = maxWordLen;
        p.generators = generators;
        p.maxDepth = maxDepth;
        std::vector<Task> tasks = defaultSchedule(chain->registry(), p);
        chain->run(tasks);
        return PyChain{std::move(chain)};
      },
      py::arg("max_word_len") = 2, py::arg("generators") = 2,
      py::arg("max_depth") = 1, py::arg("seed") = 1, py::arg("samples") = 16);

  m.def("load_run", [](const std::string& dir) {
    auto loaded = std::make_shared<LoadedRun>(loadRun(RunPaths{dir}));
    return PyChain{std::shared_ptr<ChainState>(loaded, &loaded->chain)};
  });

  m.def(
      "lemma_suites",
      [](std::size_t samples, std::uint64_t seed) {
        SuiteOptions so;
        so.samples = samples;
        so.seed = seed;
        return reportToList(lemmaSuites(so));
      },
      py::arg("samples") = 200, py::arg("seed") = 7);
}
