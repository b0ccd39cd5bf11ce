#include "assgp/sandwich.hpp"

#include "assgp/errors.hpp"

namespace assgp {

namespace {

int occurrences(const Word& w, GenId id) {
  int n = 0;
  for (Letter l : w) {
    if (baseOf(l) == id) ++n;
  }
  return n;
}

Word directProduct(const SandwichInstance& inst) {
  std::vector<Word> parts;
  parts.reserve(inst.walls.size() + inst.fillerSigns.size());
  Word g0inv = inv(inst.g0);
  for (std::size_t i = 0; i < inst.fillerSigns.size(); ++i) {
    parts.push_back(inst.walls[i]);
    parts.push_back(inst.fillerSigns[i] > 0 ? inst.g0 : g0inv);
  }
  parts.push_back(inst.walls.back());
  return reduceConcat(parts);
}

}  // namespace

std::optional<std::string> validateSandwich(const SandwichInstance& inst) {
  if (inst.walls.size() != inst.fillerSigns.size() + 1) {
    return "walls must outnumber fillers by exactly one";
  }
  if (inst.g0.empty()) return "g0 must be nonempty";
  if (occurrences(inst.g0, inst.distinguishedLetter) != 1) {
    return "(i): the distinguished letter must occur exactly once in g0";
  }
  for (std::size_t i = 0; i < inst.walls.size(); ++i) {
    if (lett(inst.walls[i]).contains(inst.distinguishedLetter)) {
      return "(ii): wall " + std::to_string(i + 1) + " contains the distinguished letter";
    }
  }
  for (int s : inst.fillerSigns) {
    if (s != 1 && s != -1) return "(iv): filler signs must be +1 or -1";
  }
  if (lett(directProduct(inst)).contains(inst.distinguishedLetter)) {
    return "(iii): the distinguished letter survives in the reduced product";
  }
  return std::nullopt;
}

Word sandwichReduce(const SandwichInstance& inst) {
  if (auto why = validateSandwich(inst)) {
    throw ValidationError("sandwichReduce: " + *why);
  }
  Word expected = directProduct(inst);

  std::vector<Word> walls = inst.walls;
  std::vector<int> signs = inst.fillerSigns;
  while (!signs.empty()) {
    // An adjacent inverse filler pair separated by an empty wall must exist:
    // the distinguished letter cancels innermost-first, which forces the
    // wall between the cancelling pair to collapse to e.
    std::size_t hit = signs.size();
    for (std::size_t j = 0; j + 1 < signs.size(); ++j) {
      if (signs[j + 1] == -signs[j] && walls[j + 1].empty()) {
        hit = j;
        break;
      }
    }
    if (hit == signs.size()) {
      throw ValidationError(
          "sandwichReduce: no collapsible filler pair; invariants violated");
    }
    walls[hit] = mul(walls[hit], walls[hit + 2]);
    walls.erase(walls.begin() + hit + 1, walls.begin() + hit + 3);
    signs.erase(signs.begin() + hit, signs.begin() + hit + 2);
  }
  Word result = reduceConcat(walls);
  if (result != expected) {
    throw Error("sandwichReduce: filler deletion disagrees with direct reduction");
  }
  return result;
}

EtaEqualityResult etaEquality(const std::vector<Word>& factors, const Word& g0,
                              GenId xj) {
  if (g0.empty()) throw ValidationError("etaEquality: g0 must be nonempty");
  int occ = 0;
  for (Letter l : g0) {
    if (baseOf(l) == xj) ++occ;
  }
  if (occ != 1) {
    throw ValidationError(
        "etaEquality: clause (a) violated: distinguished letter count is " +
        std::to_string(occ));
  }
  Word lhs = reduceConcat(factors);
  if (lett(lhs).contains(xj)) {
    throw ValidationError(
        "etaEquality: clause (b) violated: the product contains the distinguished letter");
  }
  std::vector<Word> image;
  image.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Word& a = factors[i];
    auto q = cyclicMember(a, g0);
    if (lett(a).contains(xj)) {
      if (!q || *q == 0) {
        throw ValidationError(
            "etaEquality: clause (c) violated: factor " + std::to_string(i + 1) +
            " contains the distinguished letter but is not a nontrivial power of g0");
      }
    }
    image.push_back(q.has_value() ? Word() : a);
  }
  EtaEqualityResult r;
  r.lhs = std::move(lhs);
  r.rhs = reduceConcat(image);
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace assgp
