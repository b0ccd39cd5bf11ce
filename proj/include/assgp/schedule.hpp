#pragma once

#include "assgp/chain.hpp"

namespace assgp {

struct ScheduleParams {
  std::size_t maxWordLen = 4;
  std::size_t generators = 3;  // seed letters x0..x_{g-1}
  int maxDepth = 3;
};

// The default task schedule: register the seed letters, raise the depth,
// run one direct extension per generator (these witnesses compose into
// factorizations for every word over the alphabet), then round-robin
// separation and factorization tasks over all reduced words of bounded
// length in length-lex order.
std::vector<Task> defaultSchedule(AlphabetRegistry& reg, const ScheduleParams& p = {});

// Reduced words over the first `generators` seed letters in length-lex
// order (letter order x0, x0^-1, x1, ...), lengths 0..maxLen.
std::vector<Word> lengthLexWords(std::size_t generators, std::size_t maxLen);

}  // namespace assgp
