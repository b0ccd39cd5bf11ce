#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "assgp/errors.hpp"

namespace assgp {

using GenId = std::uint32_t;

// A signed generator reference: +(id+1) for x, -(id+1) for x^-1.
// 0 is never a valid letter.
using Letter = std::int32_t;

constexpr Letter letterOf(GenId id, int sign) {
  return sign >= 0 ? static_cast<Letter>(id) + 1 : -(static_cast<Letter>(id) + 1);
}
constexpr GenId baseOf(Letter l) {
  return static_cast<GenId>((l < 0 ? -l : l) - 1);
}
constexpr Letter invLetter(Letter l) { return -l; }
constexpr int signOf(Letter l) { return l < 0 ? -1 : 1; }

bool isReduced(std::span<const Letter> ls);

// A reduced word in a free group. Immutable value type; the empty word is
// the identity. Construction always goes through a factory that either
// reduces or verifies reducedness.
class Word {
public:
  Word() = default;

  // Reduces an arbitrary letter sequence (single stack pass, O(n)).
  static Word reduceFrom(std::vector<Letter> raw);

  // Wraps a sequence that is already reduced; throws if it is not.
  static Word fromReduced(std::vector<Letter> ls);

  static Word letter(Letter l);

  bool empty() const { return ls_.empty(); }
  std::size_t size() const { return ls_.size(); }
  Letter operator[](std::size_t i) const { return ls_[i]; }
  const std::vector<Letter>& letters() const { return ls_; }
  auto begin() const { return ls_.begin(); }
  auto end() const { return ls_.end(); }

  friend bool operator==(const Word& a, const Word& b) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.ls_ <=> b.ls_;
  }

private:
  explicit Word(std::vector<Letter> ls) : ls_(std::move(ls)) {}
  std::vector<Letter> ls_;
};

// A set of generator ids stored as sorted disjoint half-open ranges, so that
// alphabets with millions of block-registered letters stay O(#blocks).
class GenSet {
public:
  GenSet() = default;
  static GenSet fromIds(std::vector<GenId> ids);
  static GenSet range(GenId lo, GenId hi);

  void add(GenId id) { addRange(id, id + 1); }
  void addRange(GenId lo, GenId hi);

  bool contains(GenId id) const;
  bool containsWord(const Word& w) const;
  bool containsAll(const GenSet& other) const;
  bool intersectsRange(GenId lo, GenId hi) const;
  bool empty() const { return rs_.empty(); }
  std::uint64_t count() const;

  const std::vector<std::pair<GenId, GenId>>& ranges() const { return rs_; }
  GenSet unionWith(const GenSet& other) const;
  // Ids of this \ other, up to cap entries.
  std::vector<GenId> differenceIds(const GenSet& other, std::size_t cap) const;
  std::vector<GenId> toIds(std::size_t cap) const;

  friend bool operator==(const GenSet&, const GenSet&) = default;

private:
  std::vector<std::pair<GenId, GenId>> rs_;
};

// Support of a word: the set of base generators occurring in it.
GenSet lett(const Word& w);

Word mul(const Word& v, const Word& w);
Word inv(const Word& w);
Word pow(const Word& w, std::int64_t q);

// Reduces the concatenation of many words in one pass; equal to a mul-fold
// by associativity but linear in the total length.
Word reduceConcat(std::span<const Word> ws);

// The unique maximal-cancellation split of a product v*w:
// v = vPrefix * vSuffix, w = wPrefix * wSuffix, vSuffix = wPrefix^-1,
// and vPrefix * wSuffix is reduced.
struct CancellationSplit {
  Word vPrefix, vSuffix, wPrefix, wSuffix;
};
CancellationSplit splitCancellation(const Word& v, const Word& w);

// Normal form c = u d u^-1 with d cyclically reduced and nonempty,
// no cancellation at either junction. Requires c != e.
struct CyclicRoot {
  Word conjugator;  // u
  Word core;        // d
};
CyclicRoot cyclicRootDecompose(const Word& c);

// Exact membership in the cyclic subgroup <c>: returns q with h = c^q,
// or nullopt. q = 0 iff h = e. Requires c != e.
std::optional<std::int64_t> cyclicMember(const Word& h, const Word& c);

// Homomorphic extension of a generator assignment. The callable maps a
// generator id to its image word; it must cover every letter of w.
template <typename ImageFn>
Word homExtend(ImageFn&& image, const Word& w) {
  std::vector<Word> parts;
  parts.reserve(w.size());
  for (Letter l : w) {
    const Word& img = image(baseOf(l));
    parts.push_back(signOf(l) > 0 ? img : inv(img));
  }
  return reduceConcat(parts);
}

// Retraction onto F(keep): identity on kept letters, e elsewhere.
Word retraction(const GenSet& keep, const Word& w);

}  // namespace assgp
