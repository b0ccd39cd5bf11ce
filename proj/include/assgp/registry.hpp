#pragma once

#include <map>
#include <optional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "assgp/word.hpp"

namespace assgp {

// Generator metadata as exposed to callers.
struct Generator {
  GenId id;
  std::string name;
  std::uint32_t stage;  // chain stage at which the letter was introduced
};

// Registry of generators. Ids are assigned sequentially in registration
// order. Letters come in two flavours: individually named ones (seed letters
// like x0, x1, ...) and fresh blocks introduced at a chain stage, named
// a<stage>_<index>. Blocks are stored as ranges so registering millions of
// fresh letters is O(1).
//
// Single-writer registration, concurrent reads.
class AlphabetRegistry {
public:
  AlphabetRegistry() = default;
  AlphabetRegistry(const AlphabetRegistry& other);
  AlphabetRegistry(AlphabetRegistry&&) = default;
  AlphabetRegistry& operator=(const AlphabetRegistry&) = delete;
  AlphabetRegistry& operator=(AlphabetRegistry&&) = default;

  // Registers a named generator; throws ValidationError on duplicate name.
  GenId add(const std::string& name, std::uint32_t stage = 0);

  // Returns the existing id or registers the name.
  GenId ensureNamed(const std::string& name, std::uint32_t stage = 0);

  // Registers `count` fresh letters at a stage; returns [lo, hi).
  std::pair<GenId, GenId> addFreshBlock(std::uint64_t count, std::uint32_t stage);

  bool knows(GenId id) const;
  std::uint64_t size() const;  // one past the largest id
  std::string name(GenId id) const;
  std::uint32_t stage(GenId id) const;
  std::optional<GenId> find(std::string_view name) const;

  // Formats a word with this registry's names ("e" for the identity).
  std::string format(const Word& w) const;

  struct Block {
    GenId base;
    std::uint64_t count;
    std::uint32_t stage;
    std::uint64_t firstIndex;  // index of base within its stage's numbering
  };
  std::vector<Generator> namedGenerators() const;
  std::vector<Block> blocks() const;

private:
  mutable std::unique_ptr<std::shared_mutex> mu_ = std::make_unique<std::shared_mutex>();
  struct NamedEntry {
    GenId id;
    std::string name;
    std::uint32_t stage;
  };
  std::vector<NamedEntry> entries_;
  std::vector<Block> blocks_;
  std::map<std::string, GenId, std::less<>> byName_;
  std::map<std::uint32_t, std::uint64_t> stageCounts_;
  GenId nextId_ = 0;
};

}  // namespace assgp
