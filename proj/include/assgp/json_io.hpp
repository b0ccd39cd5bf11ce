#pragma once

#include <json.hpp>

#include "assgp/chain.hpp"
#include "assgp/derivation.hpp"
#include "assgp/registry.hpp"
#include "assgp/schedule.hpp"
#include "assgp/verify.hpp"

namespace assgp {

// ordered_json keeps insertion order, which makes every dump deterministic.
using Json = nlohmann::ordered_json;

// Word wire form: {"letters": [signed ints]}, sign = exponent,
// magnitude = generator id + 1.
Json wordToJson(const Word& w);
Word wordFromJson(const Json& j);

Json genSetToJson(const GenSet& s);
GenSet genSetFromJson(const Json& j);

Json registryToJson(const AlphabetRegistry& reg);
AlphabetRegistry registryFromJson(const Json& j);

// Self-contained symbolic system (used by `verify system`): materialized
// levels, no provenance.
Json rawSystemToJson(const SystemPtr& sys);
SystemPtr rawSystemFromJson(const Json& j);

// Stage manifest: enough construction data to rebuild the system on top of
// its parent, plus the content hash for verification.
Json stageToJson(const Condition& c, const AlphabetRegistry& reg);

Json treeToJson(const TreePtr& t);
TreePtr treeFromJson(const Json& j);

Json taskToJson(const Task& t, const AlphabetRegistry& reg);
Task taskFromJson(const Json& j, AlphabetRegistry& reg);
Json scheduleToJson(const std::vector<Task>& tasks, const AlphabetRegistry& reg);
std::vector<Task> scheduleFromJson(const Json& j, AlphabetRegistry& reg);

Json reportToJson(const Report& r);

std::uint64_t jsonContentHash(const Json& j);

}  // namespace assgp
