#include "assgp/registry.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

namespace assgp {

AlphabetRegistry::AlphabetRegistry(const AlphabetRegistry& other) {
  std::shared_lock lock(*other.mu_);
  entries_ = other.entries_;
  blocks_ = other.blocks_;
  byName_ = other.byName_;
  stageCounts_ = other.stageCounts_;
  nextId_ = other.nextId_;
}

GenId AlphabetRegistry::add(const std::string& name, std::uint32_t stage) {
  if (name.empty()) throw ValidationError("generator name must be nonempty");
  if (find(name)) {
    throw ValidationError("duplicate generator name: " + name);
  }
  std::unique_lock lock(*mu_);
  GenId id = nextId_++;
  entries_.push_back({id, name, stage});
  byName_.emplace(name, id);
  return id;
}

GenId AlphabetRegistry::ensureNamed(const std::string& name, std::uint32_t stage) {
  if (auto id = find(name)) return *id;
  return add(name, stage);
}

std::pair<GenId, GenId> AlphabetRegistry::addFreshBlock(std::uint64_t count,
                                                        std::uint32_t stage) {
  std::unique_lock lock(*mu_);
  if (count == 0) throw ValidationError("fresh block must be nonempty");
  if (count > (1ULL << 31) || nextId_ + count > (1ULL << 32) - 1) {
    throw ValidationError("generator id space exhausted");
  }
  Block b;
  b.base = nextId_;
  b.count = count;
  b.stage = stage;
  b.firstIndex = stageCounts_[stage];
  stageCounts_[stage] += count;
  nextId_ += static_cast<GenId>(count);
  blocks_.push_back(b);
  return {b.base, b.base + static_cast<GenId>(count)};
}

bool AlphabetRegistry::knows(GenId id) const {
  std::shared_lock lock(*mu_);
  return id < nextId_;
}

std::uint64_t AlphabetRegistry::size() const {
  std::shared_lock lock(*mu_);
  return nextId_;
}

std::string AlphabetRegistry::name(GenId id) const {
  std::shared_lock lock(*mu_);
  if (id >= nextId_) throw ValidationError("unregistered generator id");
  auto bit = std::upper_bound(blocks_.begin(), blocks_.end(), id,
                              [](GenId v, const Block& b) { return v < b.base; });
  if (bit != blocks_.begin()) {
    const Block& b = *std::prev(bit);
    if (id >= b.base && id < b.base + b.count) {
      return "a" + std::to_string(b.stage) + "_" +
             std::to_string(b.firstIndex + (id - b.base));
    }
  }
  auto eit = std::lower_bound(entries_.begin(), entries_.end(), id,
                              [](const NamedEntry& e, GenId v) { return e.id < v; });
  if (eit == entries_.end() || eit->id != id) {
    throw ValidationError("unregistered generator id");
  }
  return eit->name;
}

std::uint32_t AlphabetRegistry::stage(GenId id) const {
  std::shared_lock lock(*mu_);
  if (id >= nextId_) throw ValidationError("unregistered generator id");
  auto bit = std::upper_bound(blocks_.begin(), blocks_.end(), id,
                              [](GenId v, const Block& b) { return v < b.base; });
  if (bit != blocks_.begin()) {
    const Block& b = *std::prev(bit);
    if (id >= b.base && id < b.base + b.count) return b.stage;
  }
  auto eit = std::lower_bound(entries_.begin(), entries_.end(), id,
                              [](const NamedEntry& e, GenId v) { return e.id < v; });
  if (eit == entries_.end() || eit->id != id) {
    throw ValidationError("unregistered generator id");
  }
  return eit->stage;
}

std::optional<GenId> AlphabetRegistry::find(std::string_view name) const {
  std::shared_lock lock(*mu_);
  auto it = byName_.find(name);
  if (it != byName_.end()) return it->second;
  // Block letters have computed names: a<stage>_<index>.
  if (name.size() < 4 || name[0] != 'a') return std::nullopt;
  auto sep = name.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  std::uint32_t st = 0;
  std::uint64_t idx = 0;
  auto stBytes = name.substr(1, sep - 1);
  auto idxBytes = name.substr(sep + 1);
  auto r1 = std::from_chars(stBytes.data(), stBytes.data() + stBytes.size(), st);
  auto r2 = std::from_chars(idxBytes.data(), idxBytes.data() + idxBytes.size(), idx);
  if (r1.ec != std::errc() || r1.ptr != stBytes.data() + stBytes.size()) return std::nullopt;
  if (r2.ec != std::errc() || r2.ptr != idxBytes.data() + idxBytes.size()) return std::nullopt;
  for (const Block& b : blocks_) {
    if (b.stage == st && idx >= b.firstIndex && idx < b.firstIndex + b.count) {
      return b.base + static_cast<GenId>(idx - b.firstIndex);
    }
  }
  return std::nullopt;
}

std::string AlphabetRegistry::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(baseOf(w[i]));
    if (signOf(w[i]) < 0) out += "^-1";
  }
  return out;
}

std::vector<Generator> AlphabetRegistry::namedGenerators() const {
  std::shared_lock lock(*mu_);
  std::vector<Generator> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.id, e.name, e.stage});
  return out;
}

std::vector<AlphabetRegistry::Block> AlphabetRegistry::blocks() const {
  std::shared_lock lock(*mu_);
  return blocks_;
}

}  // namespace assgp
