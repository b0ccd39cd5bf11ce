#pragma once

#include <string>
#include <vector>

#include "assgp/decide.hpp"
#include "assgp/enumerate.hpp"
#include "assgp/nbhd_system.hpp"

namespace assgp {

struct CheckEntry {
  std::string condition;  // names the violated/checked condition, e.g. "(3_U)"
  bool pass = true;
  std::string detail;
};

struct Report {
  std::vector<CheckEntry> entries;
  bool ok() const {
    for (const auto& e : entries) {
      if (!e.pass) return false;
    }
    return true;
  }
  void add(std::string condition, bool pass, std::string detail = "") {
    entries.push_back({std::move(condition), pass, std::move(detail)});
  }
  std::string summary() const;
};

struct VerifyOptions {
  std::size_t samples = 200;       // per level for the sampled conditions
  std::uint64_t seed = 1;
  EnumOptions sampler;             // budgets for the certified-element sampler
  std::size_t conjugatorsPerSample = 4;
  std::size_t explicitCap = 256;   // explicit elements pushed through checks
  SearchBudget search;             // used when certificates cannot be transported
};

// Checks (1_U), (2_U), (4_U) exactly on the stored data and (3_U) on
// sampled certified elements (certificates are constructed and re-checked).
Report verifySystem(const SystemPtr& sys, const VerifyOptions& opts = {});

// Extension checks: (i) alphabet inclusion and (ii) depth exactly, (iii) in
// both directions on explicit data and samples. Certificates are
// transported along the provenance chain where possible, otherwise the
// bounded decision procedure is consulted.
Report isExtension(const SystemPtr& big, const SystemPtr& small,
                   const VerifyOptions& opts = {});

}  // namespace assgp
