#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multisir/integrator.hpp"
#include "multisir/reproduction.hpp"

namespace multisir {

enum class Verdict { holds, violated, not_applicable };

const char* to_string(Verdict verdict);

struct Witness {
  double time = 0.0;
  std::string subject;
  double observed = 0.0;
  double bound = 0.0;
};

/// Outcome of one trajectory-level claim check.
struct TheoremReport {
  std::string claim;  ///< "L1", "L2", "L3", "T1.i", "T1.ii_iv", "T1.iii", "T2", "T3", "C1", "P1"
  Verdict verdict = Verdict::not_applicable;
  std::vector<Witness> witnesses;  ///< nonempty whenever verdict is violated
  std::string tolerances;
  std::string note;
};

struct PeakReport {
  std::optional<double> tau_p;  ///< interpolated time of the R = 1 downward crossing
  std::optional<double> weighted_average_peak_time;  ///< grid argmax of the anchored average
  std::optional<double> agreement_gap;
  bool corollary1_regime = false;  ///< R(0) <= 1: no interior peak expected
  std::vector<double> per_node_peak_times;                 ///< n+m, grid argmax of x_i / w_j
  std::vector<std::vector<double>> per_node_lern_crossings;  ///< times where each local number crosses 1
  /// |R_i(peak time of x_i) - 1| for each population node; a measured gap
  /// statistic for the node-level peak conjecture, not a checked claim.
  std::vector<double> population_peak_lern_gaps;
};

enum class EquilibriumClass { healthy, not_at_equilibrium };

/// Attaches the requested derived per-sample scalars to the trajectory.
/// Recognized names: "R", "lambda_max", "lern" (expands to lern_1..lern_{n+m},
/// 1-based, population nodes first), "wavg" (weighted average anchored at
/// `wavg_anchor`).
void attach_traces(Trajectory& trajectory, const ModelParams& params,
                   const std::vector<std::string>& record, double wavg_anchor = 0.0);

/// Weighted-average trace v(tau)^T z(t) over all samples, where v(tau) is the
/// dominant left eigenvector of H(s(tau)) B_f - D_f at the recorded sample
/// closest to tau.
std::vector<double> weighted_average_trace(const Trajectory& trajectory,
                                           const ModelParams& params, double tau);

/// Locates the unique downward crossing of R through 1 and fills the peak
/// report. Requires an attached "R" trace. Throws std::runtime_error when the
/// R trace crosses 1 more than once (numerical integrity failure upstream).
PeakReport find_global_peak(const Trajectory& trajectory, const ModelParams& params);

/// healthy iff ||x||_inf < tol and ||w||_inf < tol. The model admits no other
/// equilibrium type, so everything else is not-at-equilibrium.
EquilibriumClass classify_equilibrium(const ModelParams& params, const State& state,
                                      double tol);

/// Runs every trajectory-level claim check and returns one report per claim.
/// Requires "R" and the lern traces to be attached. Deterministic given the
/// trajectory.
std::vector<TheoremReport> run_theorem_suite(const Trajectory& trajectory,
                                             const ModelParams& params);

}  // namespace multisir
