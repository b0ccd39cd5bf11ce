#pragma once

#include <filesystem>
#include <map>

#include "assgp/json_io.hpp"

namespace assgp {

// Run directory layout:
//   manifest.json   deterministic summary (schedule hash, seed, budgets,
//                   stage hashes, verdict counts); byte-identical across
//                   replays with the same inputs
//   timings.json    wall-clock per phase, excluded from the manifest so the
//                   manifest stays reproducible
//   registry.json   generator registry replay data
//   schedule.json   the processed task list
//   stages/         one manifest per chain stage
//   certificates/   separation and factorization bundles
//   reports/        verification suite outputs
struct RunPaths {
  std::filesystem::path root;
  std::filesystem::path manifest() const { return root / "manifest.json"; }
  std::filesystem::path timings() const { return root / "timings.json"; }
  std::filesystem::path registryFile() const { return root / "registry.json"; }
  std::filesystem::path scheduleFile() const { return root / "schedule.json"; }
  std::filesystem::path stagesDir() const { return root / "stages"; }
  std::filesystem::path certsDir() const { return root / "certificates"; }
  std::filesystem::path reportsDir() const { return root / "reports"; }
};

void writeRun(const RunPaths& paths, const ChainState& chain,
              const std::vector<Task>& schedule,
              const std::map<std::string, double>& phaseSeconds);

void writeReportFile(const RunPaths& paths, const std::string& name,
                     const Report& report);

// Rebuilds the chain state from a run directory; stage hashes are
// recomputed and must match the manifest.
struct LoadedRun {
  ChainState chain;
  std::vector<Task> schedule;
  Json manifest;
};
LoadedRun loadRun(const RunPaths& paths, ChainOptions opts = {});

Json readJsonFile(const std::filesystem::path& p);
void writeJsonFile(const std::filesystem::path& p, const Json& j);

}  // namespace assgp
