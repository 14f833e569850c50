#pragma once

#include <cstdint>
#include <filesystem>

#include "multisir/scenario.hpp"

namespace multisir {

struct RunOptions {
  std::string format = "csv";
  bool auto_extend = true;    ///< double t_end until the infection settles
  double settle_tol = 1e-3;   ///< terminal ||z||_inf target for auto-extension
  int max_extensions = 5;
};

struct RunResult {
  Scenario scenario;  ///< with the horizon actually used
  Trajectory trajectory;
  std::vector<TheoremReport> theorems;
  PeakReport peak;
  bool all_hold = false;  ///< no claim verdict came back violated
};

/// Validates, simulates (extending the horizon if requested), attaches the
/// recorded traces, and runs the claim suite plus peak analysis.
/// Throws ValidationError when the parameters are inadmissible.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Generates `trials` scenarios seeded seed, seed+1, ..., runs each, and
/// writes artifacts under out_dir/seed_<k>/. Returns 0 when every claim holds
/// in every trial, 1 otherwise. Fully deterministic for a given seed.
int run_check(std::uint64_t seed, int trials, const std::filesystem::path& out_dir,
              const GeneratorSpec& spec = {}, const RunOptions& options = {},
              const IntegrationSettings* settings_override = nullptr);

/// Same per-seed work for seeds in [first, last], spread over `jobs` workers.
/// Each run writes to its own directory, so results are order-independent.
int run_sweep(std::uint64_t first, std::uint64_t last, int jobs,
              const std::filesystem::path& out_dir, const GeneratorSpec& spec = {},
              const RunOptions& options = {},
              const IntegrationSettings* settings_override = nullptr);

}  // namespace multisir
