#include "assgp/schedule.hpp"

namespace assgp {

std::vector<Word> lengthLexWords(std::size_t generators, std::size_t maxLen) {
  std::vector<Letter> order;
  for (GenId g = 0; g < generators; ++g) {
    order.push_back(letterOf(g, 1));
    order.push_back(letterOf(g, -1));
  }
  std::vector<Word> out{Word()};
  std::vector<Letter> cur;
  auto rec = [&](auto&& self, std::size_t target) -> void {
    if (cur.size() == target) {
      out.push_back(Word::fromReduced(cur));
      return;
    }
    for (Letter l : order) {
      if (!cur.empty() && cur.back() == invLetter(l)) continue;
      cur.push_back(l);
      self(self, target);
      cur.pop_back();
    }
  };
  for (std::size_t len = 1; len <= maxLen; ++len) rec(rec, len);
  return out;
}

std::vector<Task> defaultSchedule(AlphabetRegistry& reg, const ScheduleParams& p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.generators; ++i) {
    names.push_back("x" + std::to_string(i));
    reg.ensureNamed(names.back(), 0);
  }
  std::vector<Task> tasks;
  tasks.push_back(Task::alphabet(names));
  tasks.push_back(Task::depth(p.maxDepth));
  // One direct extension per generator at full depth; everything else
  // composes from these witnesses.
  for (std::size_t i = 0; i < p.generators; ++i) {
    tasks.push_back(Task::assgp(Word::letter(letterOf(static_cast<GenId>(i), 1)),
                                p.maxDepth));
  }
  for (const Word& w : lengthLexWords(p.generators, p.maxWordLen)) {
    if (!w.empty()) tasks.push_back(Task::sep(w));
    for (int n = 0; n <= p.maxDepth; ++n) tasks.push_back(Task::assgp(w, n));
  }
  return tasks;
}

}  // namespace assgp
