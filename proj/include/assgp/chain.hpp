#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>

#include "assgp/assgp_extend.hpp"
#include "assgp/decide.hpp"
#include "assgp/registry.hpp"
#include "assgp/verify.hpp"

namespace assgp {

// One element of the poset: a finite alphabet, a depth, and a finite
// neighbourhood system over that alphabet. Conditions shrink along the
// chain; q <= p holds when q's system extends p's.
struct Condition {
  std::uint32_t stageId = 0;
  std::uint32_t parentStage = 0;
  SystemPtr system;
  std::string note;

  int depth() const { return system->depth(); }
  const GenSet& alphabet() const { return system->alphabet(); }
};

struct Task {
  enum class Kind { Sep, Assgp, Alphabet, Depth };
  Kind kind = Kind::Depth;
  Word g;                          // Sep, Assgp
  int n = 0;                       // Assgp, Depth
  std::vector<std::string> names;  // Alphabet

  static Task sep(Word g) { return {Kind::Sep, std::move(g), 0, {}}; }
  static Task assgp(Word g, int n) { return {Kind::Assgp, std::move(g), n, {}}; }
  static Task alphabet(std::vector<std::string> names) {
    return {Kind::Alphabet, {}, 0, std::move(names)};
  }
  static Task depth(int n) { return {Kind::Depth, {}, n, {}}; }
};

struct TaskRecord {
  std::size_t index = 0;
  Task task;
  std::uint32_t metStage = 0;
  std::string detail;
};

// Hausdorff witness: the logged stage's top level excludes g.
struct SeparationCert {
  Word g;
  std::uint32_t stage = 0;
  int level = 0;
};

// A direct ASSGP extension outcome kept for composition: the factorization
// of its target into fresh-letter inverses and g0.
struct LetterWitness {
  Word target;  // the word the extension was run for
  std::uint32_t stage = 0;
  std::pair<GenId, GenId> fresh{0, 0};
  Word g0;
  int bottomLevel = 0;  // depth of the stage system

  std::uint64_t freshCount() const { return fresh.second - fresh.first; }
};

// Factorization certificate for one word: a sequence of letter-witness
// runs (possibly inverted), concatenated in order.
struct AssgpRecord {
  Word g;
  std::uint32_t stage = 0;  // latest involved stage; hosts every factor
  int bottom = 0;           // deepest level the factors certify at
  struct Run {
    std::size_t witnessIndex = 0;  // into ChainState::letterWitnesses()
    bool inverted = false;
  };
  std::vector<Run> runs;  // empty means the trivial factorization of e
};

struct ChainOptions {
  std::uint64_t seed = 1;
  std::vector<std::string> seedAlphabet{"x0"};
  int seedDepth = 0;
  bool checkLeq = true;
  std::size_t leqSamples = 24;
  SearchBudget search;
  AssgpOptions assgp;
  std::uint64_t giantThreshold = 20000;
};

// The decreasing chain of conditions plus the induced neighbourhood oracle.
// Building is strictly sequential; the finished state is immutable and all
// query operations are const.
class ChainState {
public:
  explicit ChainState(ChainOptions opts = {});

  // Processes tasks in order. A task whose dense set already contains one
  // of the existing stages is logged against that stage; otherwise the
  // matching refiner extends the tail.
  void run(const std::vector<Task>& tasks);

  // Dense-set refiners. Each returns the stage that realizes membership,
  // appending at most a few stages to the chain.
  const Condition& refineDepth(int n);
  const Condition& refineAlphabet(const std::vector<std::string>& names);
  const Condition& refineSeparate(const Word& g);
  const Condition& refineAssgp(const Word& g);

  // q <= p: delegated to the extension checks, sampled.
  Report leq(const Condition& q, const Condition& p) const;

  // ---- oracle queries over U_n = union of stage levels ----
  Verdict uMember(const Word& g, int n) const;
  std::optional<SeparationCert> separationWitness(const Word& g) const;

  struct AssgpQuery {
    const AssgpRecord* record = nullptr;
    int n = 0;
    std::uint64_t factorCount = 0;
    Word fold;        // exact product of all factors
    Report spotReport;  // power certificates at level n
  };
  std::optional<AssgpQuery> assgpCertificate(const Word& g, int n,
                                             std::size_t spotFactorCap = 16,
                                             int spotExponent = 10) const;

  // k with g * U_k * g^-1 inside U_n: n + len(g).
  int conjugationLevel(const Word& g, int n) const;

  // accessors
  const std::vector<Condition>& stages() const { return stages_; }
  const Condition& tail() const { return stages_.back(); }
  const std::vector<TaskRecord>& log() const { return log_; }
  const std::vector<Report>& leqReports() const { return leqReports_; }
  const std::vector<LetterWitness>& letterWitnesses() const { return witnesses_; }
  const std::map<Word, SeparationCert>& separations() const { return separations_; }
  const std::map<Word, AssgpRecord>& assgpRecords() const { return assgpRecords_; }
  bool taskProcessed(const Task& t) const;
  AlphabetRegistry& registry() { return registry_; }
  const AlphabetRegistry& registry() const { return registry_; }
  const ChainOptions& options() const { return opts_; }

  // Word for one factor of a record (0-based over the concatenated runs).
  Word recordFactorAt(const AssgpRecord& rec, std::uint64_t i) const;
  std::uint64_t recordFactorCount(const AssgpRecord& rec) const;
  Word recordFold(const AssgpRecord& rec) const;

private:
  friend struct ChainIo;

  const Condition& push(SystemPtr sys, std::string note);
  std::optional<std::uint32_t> scanSeparation(const Word& g);
  std::optional<AssgpRecord> composeFromLetters(const Word& g, int n) const;
  void noteTask(std::size_t index, const Task& t, std::uint32_t stage,
                std::string detail);

  ChainOptions opts_;
  AlphabetRegistry registry_;
  std::vector<Condition> stages_;
  std::vector<TaskRecord> log_;
  std::vector<Report> leqReports_;
  std::vector<LetterWitness> witnesses_;
  std::map<GenId, std::size_t> witnessByLetter_;  // positive single-letter targets
  std::map<Word, SeparationCert> separations_;
  std::map<Word, AssgpRecord> assgpRecords_;
  std::set<std::pair<Word, int>> processedAssgp_;
  std::set<Word> processedSep_;
  std::size_t taskCounter_ = 0;

  // spot-check reports per witness, shared across composed queries
  mutable std::unique_ptr<std::mutex> spotMutex_ = std::make_unique<std::mutex>();
  mutable std::map<std::tuple<std::size_t, int, std::size_t, int>,
                   std::pair<std::size_t, std::size_t>>
      spotCache_;
};

// buildChain with a fresh seed condition.
ChainState buildChain(const std::vector<Task>& tasks, ChainOptions opts = {});

}  // namespace assgp
