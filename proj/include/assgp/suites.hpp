#pragma once

#include <random>

#include "assgp/chain.hpp"
#include "assgp/sandwich.hpp"
#include "assgp/verify.hpp"

namespace assgp {

struct SuiteOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
};

// Random valid sandwich instances: walls free of the distinguished letter,
// fillers inserted as adjacent inverse pairs around empty walls.
SandwichInstance randomSandwichInstance(std::mt19937_64& rng, int pairs);

// Random factor sequences meeting the eta-equality hypotheses: walls free
// of the distinguished letter interleaved with zero-sum runs of g0 powers.
struct EtaInstance {
  std::vector<Word> factors;
  Word g0;
  GenId xj;
};
EtaInstance randomEtaInstance(std::mt19937_64& rng);

Report sandwichSuite(const SuiteOptions& opts = {});
Report etaEqualitySuite(const SuiteOptions& opts = {});
// Enumerated derivations of fresh-letter enrichments stay within the
// letter-count bound; also reports the maximum observed sum/bound ratio.
Report letterBoundSuite(const SuiteOptions& opts = {});
// Retraction and trace transport across a family of fresh-letter
// enrichments over varying alphabets and depths.
Report retractionSuite(const SuiteOptions& opts = {});
Report traceSuite(const SuiteOptions& opts = {});
Report lemmaSuites(const SuiteOptions& opts = {});

struct OracleSuiteOptions {
  std::size_t samplesPerStage = 40;
  std::uint64_t seed = 11;
  std::size_t maxWordLen = 4096;
};

// Invariants of the built topology oracle, checked per stage on sampled
// certified elements: symmetry, the product rule U_{n+1} U_{n+1} within
// U_n, letter conjugation, and level monotonicity.
Report oracleSymmetrySuite(const ChainState& chain, const OracleSuiteOptions& opts = {});
Report oracleProductSuite(const ChainState& chain, const OracleSuiteOptions& opts = {});
Report oracleConjugationSuite(const ChainState& chain, const OracleSuiteOptions& opts = {});
Report oracleMonotoneSuite(const ChainState& chain, const OracleSuiteOptions& opts = {});
Report oracleSuites(const ChainState& chain, const OracleSuiteOptions& opts = {});

}  // namespace assgp
