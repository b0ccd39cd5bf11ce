#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "assgp/run_io.hpp"
#include "assgp/schedule.hpp"
#include "assgp/word_text.hpp"
#include "oracles.hpp"

using namespace assgp;

namespace {

Letter L(GenId id, int s = 1) { return letterOf(id, s); }

}  // namespace

TEST_CASE("word and tree JSON round-trips") {
  oracle::WordGen gen(5, 4);
  for (int i = 0; i < 200; ++i) {
    Word w = gen.word(12);
    CHECK(wordFromJson(wordToJson(w)) == w);
  }
  CHECK_THROWS_AS(wordFromJson(Json{{"letters", Json::array({1, -1})}}),
                  ValidationError);
  CHECK_THROWS_AS(wordFromJson(Json{{"letters", Json::array({0})}}), ValidationError);

  // a certificate survives the round trip and still checks
  SystemPtr base = NbhdSystem::seed(GenSet::fromIds({0}), 1);
  NbhdSystem::EnrichmentInput in;
  in.cyclicGens = {Word::letter(L(1))};
  SystemPtr sys = NbhdSystem::cyclicEnrich(base, in, GenSet::fromIds({0, 1}));
  Verdict v = memberDecide(sys, 0,
                           reduceConcat(std::array<Word, 3>{
                               Word::letter(L(0)), pow(Word::letter(L(1)), 2),
                               Word::letter(L(0, -1))}));
  REQUIRE(v.in());
  TreePtr back = treeFromJson(treeToJson(v.cert));
  CHECK(checkCertificate(sys, back, 0).ok);
  CHECK(back->word == v.cert->word);
}

TEST_CASE("registry JSON replay") {
  AlphabetRegistry reg;
  reg.add("x0");
  reg.add("x1");
  reg.addFreshBlock(5, 1);
  reg.add("x2", 2);
  reg.addFreshBlock(3, 2);
  AlphabetRegistry back = registryFromJson(registryToJson(reg));
  CHECK(back.size() == reg.size());
  for (GenId id = 0; id < reg.size(); ++id) {
    CHECK(back.name(id) == reg.name(id));
    CHECK(back.stage(id) == reg.stage(id));
  }
}

TEST_CASE("raw system JSON and corrupted input") {
  LevelSpec lv0, lv1;
  lv0.explicitWords = {Word(), Word::letter(L(0)), Word::letter(L(0, -1))};
  lv1.explicitWords = {Word()};
  lv1.cyclicGens = {Word::letter(L(1))};
  SystemPtr sys = NbhdSystem::raw(GenSet::fromIds({0, 1}), {lv0, lv1});
  SystemPtr back = rawSystemFromJson(rawSystemToJson(sys));
  CHECK(back->hash() == sys->hash());
  CHECK(back->depth() == 1);
  CHECK(verifySystem(back).ok());

  Json bad = rawSystemToJson(sys);
  bad["levels"][0]["explicit"][1]["letters"] = Json::array({1, -1});
  CHECK_THROWS_AS(rawSystemFromJson(bad), ValidationError);
}

TEST_CASE("schedule JSON round-trip") {
  AlphabetRegistry reg;
  ScheduleParams p;
  p.maxWordLen = 1;
  p.generators = 2;
  p.maxDepth = 1;
  std::vector<Task> tasks = defaultSchedule(reg, p);
  Json j = scheduleToJson(tasks, reg);
  AlphabetRegistry reg2;
  std::vector<Task> back = scheduleFromJson(j, reg2);
  REQUIRE(back.size() == tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CHECK(back[i].kind == tasks[i].kind);
    CHECK(back[i].g == tasks[i].g);
    CHECK(back[i].n == tasks[i].n);
    CHECK(back[i].names == tasks[i].names);
  }
}

TEST_CASE("run directory write, reload, and deterministic manifests") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "assgp-run-test";
  fs::remove_all(dir);

  ChainOptions opts;
  opts.assgp.verifySamples = 8;
  opts.leqSamples = 8;
  AlphabetRegistry tmp;
  ScheduleParams p;
  p.maxWordLen = 1;
  p.generators = 2;
  p.maxDepth = 1;
  std::vector<Task> tasks = defaultSchedule(tmp, p);

  ChainState chain(opts);
  chain.run(tasks);
  RunPaths paths{dir / "a"};
  writeRun(paths, chain, tasks, {{"build", 0.5}});

  // reload: stages rebuild hash-identically, certificates replay
  LoadedRun loaded = loadRun(paths, opts);
  CHECK(loaded.chain.stages().size() == chain.stages().size());
  for (std::size_t i = 0; i < chain.stages().size(); ++i) {
    CHECK(loaded.chain.stages()[i].system->hash() == chain.stages()[i].system->hash());
  }
  Word x0 = Word::letter(L(0));
  auto sep = loaded.chain.separationWitness(x0);
  REQUIRE(sep.has_value());
  CHECK(memberDecide(loaded.chain.stages()[sep->stage].system, sep->level, x0).notIn());
  auto q = loaded.chain.assgpCertificate(x0, 1);
  REQUIRE(q.has_value());
  CHECK(q->fold == x0);

  // a rebuilt chain with the same inputs produces byte-identical manifests
  ChainState chain2(opts);
  chain2.run(tasks);
  RunPaths paths2{dir / "b"};
  writeRun(paths2, chain2, tasks, {{"build", 0.7}});
  auto bytes = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  CHECK(bytes(paths.manifest()) == bytes(paths2.manifest()));
  CHECK(bytes(paths.manifest()).size() > 100);
  fs::remove_all(dir);
}
