#include "multisir/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "multisir/runner.hpp"

namespace multisir {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimViolated = 1;
constexpr int kExitUsage = 2;

void print_violations(const ValidationError& error) {
  std::cerr << "invalid scenario parameters:\n";
  for (const auto& issue : error.issues) {
    std::cerr << "  - " << issue.condition << ": " << issue.detail << "\n";
  }
}

int report_verdicts(const RunResult& result) {
  for (const auto& report : result.theorems) {
    std::cerr << report.claim << ": " << to_string(report.verdict);
    if (!report.note.empty()) std::cerr << " (" << report.note << ")";
    std::cerr << "\n";
  }
  return result.all_hold ? kExitOk : kExitClaimViolated;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"multilayer SIR simulation and reproduction-number analysis"};
  app.require_subcommand(1);

  std::optional<double> dt_override;
  std::optional<double> t_end_override;
  std::string format = "csv";
  app.add_option("--dt", dt_override, "override the integration step size")
      ->check(CLI::PositiveNumber);
  app.add_option("--t-end", t_end_override, "override the integration horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "trajectory file format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* simulate_cmd =
      app.add_subcommand("simulate", "run one scenario file and export its artifacts");
  std::string scenario_path;
  std::string simulate_out;
  simulate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
  simulate_cmd->add_option("--out", simulate_out, "output directory")->required();

  auto* analyze_cmd =
      app.add_subcommand("analyze", "run the claim suite on a stored trajectory");
  std::string analyze_dir;
  analyze_cmd->add_option("dir", analyze_dir, "directory written by simulate/check")
      ->required();

  auto* check_cmd = app.add_subcommand(
      "check", "generate seeded scenarios and fail on any violated claim");
  std::uint64_t check_seed = 1;
  int check_trials = 1;
  std::string check_out = "check_out";
  check_cmd->add_option("--seed", check_seed, "base seed")->required();
  check_cmd->add_option("--trials", check_trials, "number of scenarios")
      ->required()
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--out", check_out, "output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a seed range in parallel");
  std::string seed_range;
  int jobs = 1;
  std::string sweep_out = "sweep_out";
  sweep_cmd->add_option("--seeds", seed_range, "inclusive seed range a..b")->required();
  sweep_cmd->add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "output directory");

  for (auto* sub : {simulate_cmd, analyze_cmd, check_cmd, sweep_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, std::cout, std::cerr);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto apply_overrides = [&](IntegrationSettings& settings) {
    if (dt_override) settings.dt = *dt_override;
    if (t_end_override) settings.t_end = *t_end_override;
  };

  try {
    if (simulate_cmd->parsed()) {
      Scenario scenario = load_scenario(scenario_path);
      apply_overrides(scenario.settings);
      RunOptions options;
      options.format = format;
      options.auto_extend = false;  // the file's horizon is authoritative here
      const RunResult result = run_scenario(scenario, options);
      export_run(simulate_out, result.scenario, result.trajectory, result.theorems,
                 result.peak, format);
      return report_verdicts(result);
    }

    if (analyze_cmd->parsed()) {
      const std::filesystem::path dir = analyze_dir;
      const Scenario scenario = load_scenario(dir / "scenario_resolved.json");
      Trajectory trajectory =
          import_trajectory(dir, scenario.params.n, scenario.params.m);
      if (trajectory.states.empty()) {
        std::cerr << "stored trajectory under '" << analyze_dir << "' is empty\n";
        return kExitUsage;
      }
      attach_traces(trajectory, scenario.params, scenario.record, scenario.wavg_anchor);
      RunResult result;
      result.scenario = scenario;
      result.theorems = run_theorem_suite(trajectory, scenario.params);
      result.peak = find_global_peak(trajectory, scenario.params);
      result.all_hold = true;
      for (const auto& report : result.theorems) {
        if (report.verdict == Verdict::violated) result.all_hold = false;
      }
      result.trajectory = std::move(trajectory);
      export_run(dir, result.scenario, result.trajectory, result.theorems, result.peak,
                 std::filesystem::exists(dir / "trajectory.json") ? "json" : "csv");
      return report_verdicts(result);
    }

    RunOptions options;
    options.format = format;
    IntegrationSettings settings;
    apply_overrides(settings);
    const IntegrationSettings* override_ptr =
        (dt_override || t_end_override) ? &settings : nullptr;

    if (check_cmd->parsed()) {
      return run_check(check_seed, check_trials, check_out, GeneratorSpec{}, options,
                       override_ptr);
    }

    const auto split = seed_range.find("..");
    if (split == std::string::npos) {
      std::cerr << "--seeds expects an inclusive range a..b\n";
      return kExitUsage;
    }
    const std::uint64_t first = std::stoull(seed_range.substr(0, split));
    const std::uint64_t last = std::stoull(seed_range.substr(split + 2));
    if (last < first) {
      std::cerr << "--seeds range is empty\n";
      return kExitUsage;
    }
    return run_sweep(first, last, jobs, sweep_out, GeneratorSpec{}, options, override_ptr);
  } catch (const ValidationError& error) {
    print_violations(error);
    return kExitUsage;
  } catch (const ScenarioError& error) {
    std::cerr << "scenario error: " << error.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace multisir
