#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "multisir/analysis.hpp"

namespace multisir {

/// Sampling intervals and layout for random scenario generation. Defaults
/// reproduce the reference experiment: 10 population nodes, 5 resources,
/// uniform draws per rate family, and shedding rates tied to the pickup
/// rates via c_w = beta_w^T - c_w_offset.
struct GeneratorSpec {
  int n = 10;
  int m = 5;
  std::array<double, 2> gamma_interval{1.0, 3.0};
  std::array<double, 2> gamma_w_interval{0.6, 0.75};
  std::array<double, 2> beta_interval{0.01, 0.338};
  std::array<double, 2> beta_w_interval{0.01, 0.2};
  std::array<double, 2> alpha_interval{0.0, 2.0};
  std::array<double, 2> w0_interval{0.0, 1.0};
  double c_w_offset = 0.01;
  double s0 = 0.95;
  int max_retries = 16;
};

/// A fully described experiment: parameters, initial condition, integration
/// settings, and the list of derived scalars to record.
struct Scenario {
  ModelParams params;
  State initial;
  IntegrationSettings settings;
  std::vector<std::string> record{"R", "lambda_max", "lern", "wavg"};
  double wavg_anchor = 0.0;
  std::optional<std::uint64_t> seed;  ///< present when generated
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by callers that require an admissible scenario.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::vector<ValidationIssue> issues)
      : std::runtime_error(what), issues(std::move(issues)) {}
  std::vector<ValidationIssue> issues;
};

/// Deterministic seeded generation. Sub-streams are split from the seed with
/// splitmix64 in a fixed order (beta, beta_w, alpha, gamma, gamma_w, w0); each
/// stream drives an mt19937_64 and matrices fill row-major, so a seed fully
/// determines the scenario on any platform. alpha's diagonal is drawn and then
/// zeroed (self-flow has no net effect). Regenerates on the measure-zero
/// chance of an inadmissible draw; throws ScenarioError when retries run out.
Scenario generate_scenario(const GeneratorSpec& spec, std::uint64_t seed);

/// Scenario file I/O (JSON). A file either spells out the rates
/// (n, m, beta, beta_w, c_w, alpha, gamma, gamma_w, s0, x0, w0, dt, t_end,
/// record_every, record) or carries a "generate" block with "seed" and
/// optional "intervals" overrides.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Output file set of one run.
struct RunArtifacts {
  std::filesystem::path trajectory;
  std::filesystem::path reproduction_series;
  std::filesystem::path theorem_report;
  std::filesystem::path peak_report;
  std::filesystem::path manifest;
  std::filesystem::path scenario_resolved;
};

/// Writes the trajectory (CSV or JSON), the per-sample reproduction series,
/// the claim and peak reports, the resolved scenario, and a manifest with the
/// seed, a scenario content hash, and the tool version. CSV columns:
///   t, s_1..s_n, x_1..x_n, r_1..r_n, w_1..w_m,
///   then whichever of R, lambda_max, lern_1..lern_{n+m}, wavg are recorded.
/// Numbers carry 12 significant digits; undefined values are empty fields.
RunArtifacts export_run(const std::filesystem::path& dir, const Scenario& scenario,
                        const Trajectory& trajectory,
                        const std::vector<TheoremReport>& theorems,
                        const PeakReport& peak, const std::string& format = "csv");

/// Reads back a trajectory written by export_run ("trajectory.csv" or
/// "trajectory.json" under `dir`, whichever exists).
Trajectory import_trajectory(const std::filesystem::path& dir, int n, int m);

/// Canonical content hash of a scenario (matches the manifest entry).
std::string scenario_hash(const Scenario& scenario);

}  // namespace multisir
