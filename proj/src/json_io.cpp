#include "assgp/json_io.hpp"

#include <algorithm>

#include "assgp/errors.hpp"
#include "assgp/hash.hpp"
#include "assgp/word_text.hpp"

namespace assgp {

Json wordToJson(const Word& w) {
  Json j;
  j["letters"] = w.letters();
  return j;
}

Word wordFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("letters") || !j["letters"].is_array()) {
    throw ValidationError("word JSON must be {\"letters\": [...]}");
  }
  std::vector<Letter> ls;
  for (const auto& v : j["letters"]) {
    if (!v.is_number_integer()) throw ValidationError("word letters must be integers");
    Letter l = v.get<Letter>();
    if (l == 0) throw ValidationError("word letters must be nonzero");
    ls.push_back(l);
  }
  if (!ls.empty() && !isReduced(ls)) {
    throw ValidationError("word JSON is not reduced");
  }
  return Word::fromReduced(std::move(ls));
}

Json genSetToJson(const GenSet& s) {
  Json ranges = Json::array();
  for (auto& [lo, hi] : s.ranges()) ranges.push_back(Json::array({lo, hi}));
  return ranges;
}

GenSet genSetFromJson(const Json& j) {
  GenSet s;
  if (!j.is_array()) throw ValidationError("alphabet JSON must be an array of ranges");
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2) {
      throw ValidationError("alphabet range must be [lo, hi]");
    }
    s.addRange(r[0].get<GenId>(), r[1].get<GenId>());
  }
  return s;
}

Json registryToJson(const AlphabetRegistry& reg) {
  Json j;
  Json named = Json::array();
  for (const Generator& g : reg.namedGenerators()) {
    named.push_back(Json{{"id", g.id}, {"name", g.name}, {"stage", g.stage}});
  }
  Json blocks = Json::array();
  for (const auto& b : reg.blocks()) {
    blocks.push_back(Json{{"base", b.base},
                          {"count", b.count},
                          {"stage", b.stage},
                          {"firstIndex", b.firstIndex}});
  }
  j["named"] = std::move(named);
  j["blocks"] = std::move(blocks);
  return j;
}

AlphabetRegistry registryFromJson(const Json& j) {
  struct Item {
    GenId id;
    bool isBlock;
    std::string name;
    std::uint64_t count;
    std::uint32_t stage;
  };
  std::vector<Item> items;
  for (const auto& n : j.at("named")) {
    items.push_back({n.at("id").get<GenId>(), false, n.at("name").get<std::string>(),
                     0, n.at("stage").get<std::uint32_t>()});
  }
  for (const auto& b : j.at("blocks")) {
    items.push_back({b.at("base").get<GenId>(), true, "",
                     b.at("count").get<std::uint64_t>(),
                     b.at("stage").get<std::uint32_t>()});
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  AlphabetRegistry reg;
  for (const Item& it : items) {
    if (it.isBlock) {
      auto [lo, hi] = reg.addFreshBlock(it.count, it.stage);
      if (lo != it.id) throw ValidationError("registry replay diverged");
      (void)hi;
    } else {
      GenId id = reg.add(it.name, it.stage);
      if (id != it.id) throw ValidationError("registry replay diverged");
    }
  }
  return reg;
}

namespace {

Json levelToJson(const LevelSpec& lv) {
  Json j;
  Json ex = Json::array();
  for (const Word& w : lv.explicitWords) ex.push_back(wordToJson(w));
  Json cg = Json::array();
  for (const Word& w : lv.cyclicGens) cg.push_back(wordToJson(w));
  Json cr = Json::array();
  for (auto& [lo, hi] : lv.cyclicRanges) cr.push_back(Json::array({lo, hi}));
  j["explicit"] = std::move(ex);
  j["cyclicGens"] = std::move(cg);
  j["cyclicRanges"] = std::move(cr);
  j["recursive"] = lv.recursiveRule;
  return j;
}

LevelSpec levelFromJson(const Json& j) {
  LevelSpec lv;
  for (const auto& w : j.at("explicit")) lv.explicitWords.push_back(wordFromJson(w));
  if (j.contains("cyclicGens")) {
    for (const auto& w : j["cyclicGens"]) lv.cyclicGens.push_back(wordFromJson(w));
  }
  if (j.contains("cyclicRanges")) {
    for (const auto& r : j["cyclicRanges"]) {
      lv.cyclicRanges.push_back({r[0].get<GenId>(), r[1].get<GenId>()});
    }
  }
  lv.recursiveRule = j.value("recursive", false);
  return lv;
}

}  // namespace

Json rawSystemToJson(const SystemPtr& sys) {
  Json j;
  j["schema"] = "assgp-system/1";
  j["alphabet"] = genSetToJson(sys->alphabet());
  j["depth"] = sys->depth();
  Json levels = Json::array();
  for (int i = 0; i <= sys->depth(); ++i) levels.push_back(levelToJson(sys->level(i)));
  j["levels"] = std::move(levels);
  j["hash"] = hashHex(sys->hash());
  return j;
}

SystemPtr rawSystemFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("levels")) {
    throw ValidationError("system JSON needs alphabet and levels");
  }
  GenSet alphabet = genSetFromJson(j["alphabet"]);
  std::vector<LevelSpec> levels;
  for (const auto& lv : j["levels"]) levels.push_back(levelFromJson(lv));
  return NbhdSystem::raw(std::move(alphabet), std::move(levels));
}

Json stageToJson(const Condition& c, const AlphabetRegistry& reg) {
  (void)reg;
  const SystemPtr& sys = c.system;
  Json j;
  j["id"] = c.stageId;
  j["parentStage"] = c.parentStage;
  j["hash"] = hashHex(sys->hash());
  j["note"] = c.note;
  j["alphabet"] = genSetToJson(sys->alphabet());
  j["depth"] = sys->depth();
  switch (sys->kind()) {
    case SystemKind::Seed:
      j["kind"] = "seed";
      break;
    case SystemKind::Raw:
      j["kind"] = "raw";
      break;
    case SystemKind::Padding:
      j["kind"] = "padding";
      j["parentHash"] = hashHex(sys->parent()->hash());
      break;
    case SystemKind::Enrichment: {
      j["kind"] = "enrichment";
      j["parentHash"] = hashHex(sys->parent()->hash());
      const LevelSpec& bottom = sys->level(sys->depth());
      Json b;
      Json ex = Json::array();
      for (const Word& w : bottom.explicitWords) {
        if (!w.empty()) ex.push_back(wordToJson(w));
      }
      b["explicit"] = std::move(ex);
      Json cr = Json::array();
      for (auto& [lo, hi] : bottom.cyclicRanges) cr.push_back(Json::array({lo, hi}));
      b["cyclicRanges"] = std::move(cr);
      switch (sys->enrichKind()) {
        case EnrichKind::Generic:
          j["enrichKind"] = "generic";
          break;
        case EnrichKind::CyclicFresh:
          j["enrichKind"] = "cyclic-fresh";
          break;
        case EnrichKind::AssgpB:
          j["enrichKind"] = "assgp-B";
          break;
      }
      if (sys->enrichKind() == EnrichKind::AssgpB) {
        // g0 = fresh block * tail; stored compactly (the block can be huge)
        const Word& g0 = sys->assgpG0();
        auto [lo, hi] = sys->level(sys->depth()).cyclicRanges.at(0);
        std::size_t k = hi - lo;
        std::vector<Letter> tail(g0.letters().begin() + k, g0.letters().end());
        Json g0j;
        g0j["freshRange"] = Json::array({lo, hi});
        g0j["tail"] = wordToJson(Word::fromReduced(std::move(tail)));
        g0j["length"] = g0.size();
        b["g0"] = std::move(g0j);
        Json cg = Json::array();
        for (const Word& w : bottom.cyclicGens) {
          if (w == sys->assgpG0()) continue;  // reconstructed from g0 data
          cg.push_back(wordToJson(w));
        }
        b["cyclicGens"] = std::move(cg);
      } else {
        Json cg = Json::array();
        for (const Word& w : bottom.cyclicGens) cg.push_back(wordToJson(w));
        b["cyclicGens"] = std::move(cg);
      }
      j["bottom"] = std::move(b);
      break;
    }
  }
  return j;
}

Json treeToJson(const TreePtr& t) {
  Json j;
  j["level"] = t->level;
  switch (t->kind) {
    case DerivationTree::Kind::Explicit:
      j["kind"] = "explicit";
      j["word"] = wordToJson(t->word);
      if (t->sub) j["sub"] = treeToJson(t->sub);
      break;
    case DerivationTree::Kind::BaseWord:
      j["kind"] = "base-word";
      j["word"] = wordToJson(t->word);
      break;
    case DerivationTree::Kind::BasePower:
      j["kind"] = "base-power";
      j["gen"] = wordToJson(t->cyclicGen);
      j["exponent"] = t->exponent;
      break;
    case DerivationTree::Kind::Conj:
      j["kind"] = "conj";
      j["x"] = t->conjugator;
      j["left"] = treeToJson(t->left);
      j["right"] = treeToJson(t->right);
      break;
  }
  return j;
}

TreePtr treeFromJson(const Json& j) {
  int level = j.at("level").get<int>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    TreePtr sub;
    if (j.contains("sub")) sub = treeFromJson(j["sub"]);
    return DerivationTree::explicitLeaf(level, wordFromJson(j.at("word")), sub);
  }
  if (kind == "base-word") {
    return DerivationTree::baseWord(level, wordFromJson(j.at("word")));
  }
  if (kind == "base-power") {
    return DerivationTree::basePower(level, wordFromJson(j.at("gen")),
                                     j.at("exponent").get<std::int64_t>());
  }
  if (kind == "conj") {
    return DerivationTree::conj(level, j.at("x").get<Letter>(),
                                treeFromJson(j.at("left")),
                                treeFromJson(j.at("right")));
  }
  throw ValidationError("unknown certificate node kind: " + kind);
}

Json taskToJson(const Task& t, const AlphabetRegistry& reg) {
  Json j;
  switch (t.kind) {
    case Task::Kind::Sep:
      j["kind"] = "sep";
      j["g"] = reg.format(t.g);
      break;
    case Task::Kind::Assgp:
      j["kind"] = "assgp";
      j["g"] = reg.format(t.g);
      j["n"] = t.n;
      break;
    case Task::Kind::Alphabet:
      j["kind"] = "alphabet";
      j["names"] = t.names;
      break;
    case Task::Kind::Depth:
      j["kind"] = "depth";
      j["n"] = t.n;
      break;
  }
  return j;
}

Task taskFromJson(const Json& j, AlphabetRegistry& reg) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sep") {
    return Task::sep(parseWordRegistering(reg, j.at("g").get<std::string>()));
  }
  if (kind == "assgp") {
    return Task::assgp(parseWordRegistering(reg, j.at("g").get<std::string>()),
                       j.at("n").get<int>());
  }
  if (kind == "alphabet") {
    return Task::alphabet(j.at("names").get<std::vector<std::string>>());
  }
  if (kind == "depth") {
    return Task::depth(j.at("n").get<int>());
  }
  throw ValidationError("unknown task kind: " + kind);
}

Json scheduleToJson(const std::vector<Task>& tasks, const AlphabetRegistry& reg) {
  Json j;
  j["schema"] = "assgp-schedule/1";
  Json list = Json::array();
  for (const Task& t : tasks) list.push_back(taskToJson(t, reg));
  j["tasks"] = std::move(list);
  return j;
}

std::vector<Task> scheduleFromJson(const Json& j, AlphabetRegistry& reg) {
  std::vector<Task> out;
  if (!j.is_object() || !j.contains("tasks") || !j["tasks"].is_array()) {
    throw ValidationError("schedule JSON needs a tasks array");
  }
  for (const auto& t : j["tasks"]) out.push_back(taskFromJson(t, reg));
  return out;
}

Json reportToJson(const Report& r) {
  Json list = Json::array();
  for (const auto& e : r.entries) {
    list.push_back(Json{{"condition", e.condition}, {"pass", e.pass}, {"detail", e.detail}});
  }
  return Json{{"ok", r.ok()}, {"entries", std::move(list)}};
}

std::uint64_t jsonContentHash(const Json& j) {
  Fnv64 h;
  h.str(j.dump());
  return h.value();
}

}  // namespace assgp
