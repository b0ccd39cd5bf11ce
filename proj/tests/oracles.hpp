#pragma once

// Brute-force reference implementations used only by tests. Each oracle is
// deliberately independent of the engine's algorithms: repeated-scan
// reduction instead of the stack pass, exhaustive split search instead of
// greedy matching, bounded power scans instead of the root normal form.

#include <optional>
#include <random>
#include <vector>

#include "assgp/word.hpp"

namespace assgp::oracle {

// Reduction by repeated full scans: removes one adjacent inverse pair per
// pass until none remains.
inline std::vector<Letter> scanReduce(std::vector<Letter> ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
      if (ls[i] == invLetter(ls[i + 1])) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return ls;
}

inline Word concatThenScanReduce(const Word& v, const Word& w) {
  std::vector<Letter> ls(v.letters());
  ls.insert(ls.end(), w.letters().begin(), w.letters().end());
  return Word::fromReduced(scanReduce(std::move(ls)));
}

// All valid cancellation splits of (v, w) by brute force over the cut size.
// A cut t is valid if the t-suffix of v and t-prefix of w are mutual
// inverses and the remaining concatenation is reduced.
inline std::vector<std::size_t> validSplitCuts(const Word& v, const Word& w) {
  std::vector<std::size_t> cuts;
  const auto& a = v.letters();
  const auto& b = w.letters();
  for (std::size_t t = 0; t <= std::min(a.size(), b.size()); ++t) {
    bool inverse = true;
    for (std::size_t i = 0; i < t; ++i) {
      if (b[i] != invLetter(a[a.size() - 1 - i])) {
        inverse = false;
        break;
      }
    }
    if (!inverse) continue;
    std::vector<Letter> rest(a.begin(), a.end() - t);
    rest.insert(rest.end(), b.begin() + t, b.end());
    if (isReduced(rest) || rest.empty()) cuts.push_back(t);
  }
  return cuts;
}

// Bounded scan for h = c^q.
inline std::optional<std::int64_t> cyclicScan(const Word& h, const Word& c,
                                              std::int64_t bound) {
  for (std::int64_t q = -bound; q <= bound; ++q) {
    if (pow(c, q) == h) return q;
  }
  return std::nullopt;
}

// Deterministic random reduced words.
class WordGen {
public:
  WordGen(std::uint64_t seed, GenId alphabetSize)
      : rng_(seed), alphabet_(alphabetSize) {}

  Word word(std::size_t maxLen) {
    std::uniform_int_distribution<std::size_t> lenD(0, maxLen);
    std::size_t len = lenD(rng_);
    std::vector<Letter> ls;
    ls.reserve(len);
    while (ls.size() < len) {
      std::uniform_int_distribution<GenId> genD(0, alphabet_ - 1);
      std::uniform_int_distribution<int> signD(0, 1);
      Letter l = letterOf(genD(rng_), signD(rng_) ? 1 : -1);
      if (!ls.empty() && ls.back() == invLetter(l)) continue;
      ls.push_back(l);
    }
    return Word::fromReduced(std::move(ls));
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  GenId alphabet_;
};

// Enumerates all reduced words of length exactly n over the first k
// generators, in length-lex order (letter order: x0, x0^-1, x1, ...).
inline void reducedWordsOfLength(GenId k, std::size_t n,
                                 std::vector<Word>& out) {
  std::vector<Letter> order;
  for (GenId g = 0; g < k; ++g) {
    order.push_back(letterOf(g, 1));
    order.push_back(letterOf(g, -1));
  }
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == n) {
      out.push_back(Word::fromReduced(cur));
      return;
    }
    for (Letter l : order) {
      if (!cur.empty() && cur.back() == invLetter(l)) continue;
      cur.push_back(l);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

inline std::vector<Word> reducedWordsUpTo(GenId k, std::size_t maxLen) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= maxLen; ++n) reducedWordsOfLength(k, n, out);
  return out;
}

}  // namespace assgp::oracle
