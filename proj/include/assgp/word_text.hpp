#pragma once

#include <string_view>

#include "assgp/registry.hpp"
#include "assgp/word.hpp"

namespace assgp {

// Inline word syntax: whitespace-separated generator tokens with an optional
// integer power suffix, e.g. "x0 x1^-1 x0^3". "e" denotes the identity.
// Unknown names raise ParseError carrying the character position.
Word parseWord(const AlphabetRegistry& reg, std::string_view text);

// Like parseWord but registers unseen seed-style names on the fly.
Word parseWordRegistering(AlphabetRegistry& reg, std::string_view text,
                          std::uint32_t stage = 0);

}  // namespace assgp
