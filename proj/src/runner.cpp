#include "multisir/runner.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

namespace multisir {

namespace {

double terminal_infection(const Trajectory& trajectory) {
  const State& terminal = trajectory.states.back();
  const Vector z = terminal.z();
  return z.size() > 0 ? z.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  const auto issues = validate_params(scenario.params);
  if (!issues.empty()) {
    std::string summary = "scenario violates the admissibility conditions:";
    for (const auto& issue : issues) summary += " [" + issue.condition + "]";
    throw ValidationError(summary, issues);
  }

  RunResult result;
  result.scenario = scenario;
  result.trajectory = simulate(scenario.params, scenario.initial, result.scenario.settings);
  if (options.auto_extend) {
    for (int extension = 0;
         extension < options.max_extensions &&
         terminal_infection(result.trajectory) >= options.settle_tol;
         ++extension) {
      result.scenario.settings.t_end *= 2.0;
      result.trajectory =
          simulate(scenario.params, scenario.initial, result.scenario.settings);
    }
  }

  attach_traces(result.trajectory, scenario.params, scenario.record, scenario.wavg_anchor);
  result.theorems = run_theorem_suite(result.trajectory, scenario.params);
  result.peak = find_global_peak(result.trajectory, scenario.params);
  result.all_hold = true;
  for (const auto& report : result.theorems) {
    if (report.verdict == Verdict::violated) result.all_hold = false;
  }
  return result;
}

int run_check(std::uint64_t seed, int trials, const std::filesystem::path& out_dir,
              const GeneratorSpec& spec, const RunOptions& options,
              const IntegrationSettings* settings_override) {
  bool all_hold = true;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    Scenario scenario = generate_scenario(spec, trial_seed);
    if (settings_override != nullptr) scenario.settings = *settings_override;
    const RunResult result = run_scenario(scenario, options);
    export_run(out_dir / ("seed_" + std::to_string(trial_seed)), result.scenario,
               result.trajectory, result.theorems, result.peak, options.format);
    if (!result.all_hold) {
      all_hold = false;
      for (const auto& report : result.theorems) {
        if (report.verdict != Verdict::violated) continue;
        std::cerr << "seed " << trial_seed << ": claim " << report.claim << " violated ("
                  << report.witnesses.size() << " witnesses)\n";
      }
    } else {
      std::cerr << "seed " << trial_seed << ": all claims hold\n";
    }
  }
  return all_hold ? 0 : 1;
}

int run_sweep(std::uint64_t first, std::uint64_t last, int jobs,
              const std::filesystem::path& out_dir, const GeneratorSpec& spec,
              const RunOptions& options, const IntegrationSettings* settings_override) {
  if (last < first) throw std::invalid_argument("seed range is empty");
  const std::uint64_t count = last - first + 1;
  jobs = std::max(1, jobs);

  std::atomic<std::uint64_t> cursor{0};
  std::atomic<bool> all_hold{true};
  std::atomic<bool> failed{false};
  std::mutex log_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t offset = cursor.fetch_add(1);
      if (offset >= count) return;
      const std::uint64_t seed = first + offset;
      try {
        Scenario scenario = generate_scenario(spec, seed);
        if (settings_override != nullptr) scenario.settings = *settings_override;
        const RunResult result = run_scenario(scenario, options);
        export_run(out_dir / ("seed_" + std::to_string(seed)), result.scenario,
                   result.trajectory, result.theorems, result.peak, options.format);
        if (!result.all_hold) all_hold = false;
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "seed " << seed << ": "
                  << (result.all_hold ? "all claims hold" : "claim violated") << "\n";
      } catch (const std::exception& error) {
        failed = true;
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "seed " << seed << ": error: " << error.what() << "\n";
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(jobs));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();

  if (failed) return 2;
  return all_hold ? 0 : 1;
}

}  // namespace multisir
