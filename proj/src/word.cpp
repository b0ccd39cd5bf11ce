#include "assgp/word.hpp"

#include <algorithm>

#include "assgp/hash.hpp"

namespace assgp {

std::string hashHex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

bool isReduced(std::span<const Letter> ls) {
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] == 0) return false;
    if (i + 1 < ls.size() && ls[i] == invLetter(ls[i + 1])) return false;
  }
  return true;
}

Word Word::reduceFrom(std::vector<Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw ValidationError("invalid zero letter");
    if (!stack.empty() && stack.back() == invLetter(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word Word::fromReduced(std::vector<Letter> ls) {
  if (!ls.empty() && !isReduced(ls)) {
    throw ValidationError("letter sequence is not reduced");
  }
  return Word(std::move(ls));
}

Word Word::letter(Letter l) {
  if (l == 0) throw ValidationError("invalid zero letter");
  return Word(std::vector<Letter>{l});
}

GenSet GenSet::fromIds(std::vector<GenId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  GenSet s;
  for (GenId id : ids) s.addRange(id, id + 1);
  return s;
}

GenSet GenSet::range(GenId lo, GenId hi) {
  GenSet s;
  s.addRange(lo, hi);
  return s;
}

void GenSet::addRange(GenId lo, GenId hi) {
  if (lo >= hi) return;
  rs_.push_back({lo, hi});
  std::sort(rs_.begin(), rs_.end());
  std::vector<std::pair<GenId, GenId>> merged;
  for (auto& r : rs_) {
    if (!merged.empty() && r.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  rs_ = std::move(merged);
}

bool GenSet::contains(GenId id) const {
  auto it = std::upper_bound(rs_.begin(), rs_.end(), id,
                             [](GenId v, const auto& r) { return v < r.first; });
  if (it == rs_.begin()) return false;
  --it;
  return id >= it->first && id < it->second;
}

bool GenSet::containsWord(const Word& w) const {
  for (Letter l : w) {
    if (!contains(baseOf(l))) return false;
  }
  return true;
}

bool GenSet::containsAll(const GenSet& other) const {
  for (auto& [lo, hi] : other.rs_) {
    GenId p = lo;
    while (true) {
      auto it = std::upper_bound(rs_.begin(), rs_.end(), p,
                                 [](GenId v, const auto& r) { return v < r.first; });
      if (it == rs_.begin()) return false;
      --it;
      if (p < it->first || p >= it->second) return false;
      if (it->second >= hi) break;
      p = it->second;  // rs_ ranges are disjoint, so the next id is uncovered
    }
  }
  return true;
}

bool GenSet::intersectsRange(GenId lo, GenId hi) const {
  for (auto& [a, b] : rs_) {
    if (a < hi && lo < b) return true;
  }
  return false;
}

std::uint64_t GenSet::count() const {
  std::uint64_t n = 0;
  for (auto& [lo, hi] : rs_) n += hi - lo;
  return n;
}

GenSet GenSet::unionWith(const GenSet& other) const {
  GenSet s = *this;
  for (auto& [lo, hi] : other.rs_) s.addRange(lo, hi);
  return s;
}

std::vector<GenId> GenSet::differenceIds(const GenSet& other, std::size_t cap) const {
  std::vector<GenId> out;
  for (auto& [lo, hi] : rs_) {
    for (GenId id = lo; id < hi && out.size() < cap; ++id) {
      if (!other.contains(id)) out.push_back(id);
    }
    if (out.size() >= cap) break;
  }
  return out;
}

std::vector<GenId> GenSet::toIds(std::size_t cap) const {
  std::vector<GenId> out;
  for (auto& [lo, hi] : rs_) {
    for (GenId id = lo; id < hi && out.size() < cap; ++id) out.push_back(id);
    if (out.size() >= cap) break;
  }
  return out;
}

GenSet lett(const Word& w) {
  std::vector<GenId> ids;
  ids.reserve(w.size());
  for (Letter l : w) ids.push_back(baseOf(l));
  return GenSet::fromIds(std::move(ids));
}

Word mul(const Word& v, const Word& w) {
  const auto& a = v.letters();
  const auto& b = w.letters();
  std::size_t t = 0;
  std::size_t limit = std::min(a.size(), b.size());
  while (t < limit && a[a.size() - 1 - t] == invLetter(b[t])) ++t;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * t);
  out.insert(out.end(), a.begin(), a.end() - t);
  out.insert(out.end(), b.begin() + t, b.end());
  return Word::fromReduced(std::move(out));
}

Word inv(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(invLetter(*it));
  }
  return Word::fromReduced(std::move(out));
}

Word pow(const Word& w, std::int64_t q) {
  if (q == 0 || w.empty()) return Word();
  Word base = q > 0 ? w : inv(w);
  std::uint64_t n = q > 0 ? static_cast<std::uint64_t>(q) : static_cast<std::uint64_t>(-q);
  std::vector<Word> parts(n, base);
  return reduceConcat(parts);
}

Word reduceConcat(std::span<const Word> ws) {
  std::size_t total = 0;
  for (const Word& w : ws) total += w.size();
  std::vector<Letter> stack;
  stack.reserve(total);
  for (const Word& w : ws) {
    for (Letter l : w) {
      if (!stack.empty() && stack.back() == invLetter(l)) {
        stack.pop_back();
      } else {
        stack.push_back(l);
      }
    }
  }
  return Word::fromReduced(std::move(stack));
}

CancellationSplit splitCancellation(const Word& v, const Word& w) {
  const auto& a = v.letters();
  const auto& b = w.letters();
  std::size_t t = 0;
  std::size_t limit = std::min(a.size(), b.size());
  while (t < limit && a[a.size() - 1 - t] == invLetter(b[t])) ++t;
  CancellationSplit s;
  s.vPrefix = Word::fromReduced({a.begin(), a.end() - t});
  s.vSuffix = Word::fromReduced({a.end() - t, a.end()});
  s.wPrefix = Word::fromReduced({b.begin(), b.begin() + t});
  s.wSuffix = Word::fromReduced({b.begin() + t, b.end()});
  return s;
}

CyclicRoot cyclicRootDecompose(const Word& c) {
  if (c.empty()) throw DomainError("cyclic root of the identity is undefined");
  const auto& ls = c.letters();
  std::size_t lo = 0, hi = ls.size();
  std::vector<Letter> u;
  while (hi - lo >= 2 && ls[lo] == invLetter(ls[hi - 1])) {
    u.push_back(ls[lo]);
    ++lo;
    --hi;
  }
  CyclicRoot r;
  r.conjugator = Word::fromReduced(std::move(u));
  r.core = Word::fromReduced({ls.begin() + lo, ls.begin() + hi});
  return r;
}

std::optional<std::int64_t> cyclicMember(const Word& h, const Word& c) {
  if (c.empty()) throw DomainError("cyclic subgroup of the identity is just {e}");
  if (h.empty()) return 0;
  CyclicRoot root = cyclicRootDecompose(c);
  // h = c^q iff u^-1 h u = d^q, and d^q is |q| literal copies of d.
  Word conj = reduceConcat(std::array<Word, 3>{inv(root.conjugator), h, root.conjugator});
  if (conj.empty() || conj.size() % root.core.size() != 0) return std::nullopt;
  std::int64_t q = static_cast<std::int64_t>(conj.size() / root.core.size());
  const auto& d = root.core.letters();
  const auto& x = conj.letters();
  bool fwd = true, bwd = true;
  Word dInv = inv(root.core);
  const auto& di = dInv.letters();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != d[i % d.size()]) fwd = false;
    if (x[i] != di[i % di.size()]) bwd = false;
    if (!fwd && !bwd) return std::nullopt;
  }
  if (fwd) return q;
  if (bwd) return -q;
  return std::nullopt;
}

Word retraction(const GenSet& keep, const Word& w) {
  std::vector<Letter> kept;
  kept.reserve(w.size());
  for (Letter l : w) {
    if (keep.contains(baseOf(l))) kept.push_back(l);
  }
  return Word::reduceFrom(std::move(kept));
}

}  // namespace assgp
