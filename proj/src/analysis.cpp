#include "multisir/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "multisir/spectral.hpp"

namespace multisir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr size_t kMaxWitnesses = 8;

void add_witness(TheoremReport& report, double time, std::string subject,
                 double observed, double bound) {
  if (report.witnesses.size() < kMaxWitnesses) {
    report.witnesses.push_back({time, std::move(subject), observed, bound});
  }
  report.verdict = Verdict::violated;
}

std::vector<std::vector<double>> lern_traces(const Trajectory& trajectory,
                                             const ModelParams& params) {
  const int total = params.total_nodes();
  std::vector<std::vector<double>> traces(static_cast<size_t>(total));
  bool recorded = true;
  for (int i = 0; i < total; ++i) {
    auto it = trajectory.scalars.find("lern_" + std::to_string(i + 1));
    if (it == trajectory.scalars.end()) { recorded = false; break; }
    traces[static_cast<size_t>(i)] = it->second;
  }
  if (recorded) return traces;
  for (int i = 0; i < total; ++i) traces[static_cast<size_t>(i)].resize(trajectory.times.size());
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const Vector values = lern_vector(params, trajectory.states[k]);
    for (int i = 0; i < total; ++i) traces[static_cast<size_t>(i)][k] = values(i);
  }
  return traces;
}

size_t nearest_sample(const std::vector<double>& times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 1;
  if (it == times.begin()) return 0;
  const size_t hi = static_cast<size_t>(it - times.begin());
  return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

const std::vector<double>& require_scalar(const Trajectory& trajectory, const char* name) {
  auto it = trajectory.scalars.find(name);
  if (it == trajectory.scalars.end()) {
    throw std::invalid_argument(std::string("trajectory has no recorded '") + name +
                                "' trace");
  }
  return it->second;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

void attach_traces(Trajectory& trajectory, const ModelParams& params,
                   const std::vector<std::string>& record, double wavg_anchor) {
  auto wants = [&record](const char* name) {
    return std::find(record.begin(), record.end(), name) != record.end();
  };
  const bool want_R = wants("R");
  const bool want_lambda = wants("lambda_max");
  const bool want_lern = wants("lern");
  const bool want_wavg = wants("wavg");
  const size_t samples = trajectory.times.size();
  const int total = params.total_nodes();

  std::vector<double> r_trace(want_R ? samples : 0);
  std::vector<double> lambda_trace(want_lambda ? samples : 0);
  std::vector<std::vector<double>> lern_rows(
      want_lern ? static_cast<size_t>(total) : 0, std::vector<double>(samples));

  Vector warm_r, warm_lambda;
  for (size_t k = 0; k < samples; ++k) {
    const State& state = trajectory.states[k];
    if (want_R) {
      const PerronPair pair = perron_dominant(next_generation_matrix(params, state.s),
                                              k > 0 ? &warm_r : nullptr);
      r_trace[k] = pair.value;
      warm_r = pair.right_vector;
    }
    if (want_lambda) {
      const DominantPair pair = dominant_metzler(generator_matrix(params, state.s),
                                                 k > 0 ? &warm_lambda : nullptr);
      lambda_trace[k] = pair.value;
      warm_lambda = pair.left_vector;
    }
    if (want_lern) {
      const Vector values = lern_vector(params, state);
      for (int i = 0; i < total; ++i) lern_rows[static_cast<size_t>(i)][k] = values(i);
    }
  }

  if (want_R) trajectory.scalars["R"] = std::move(r_trace);
  if (want_lambda) trajectory.scalars["lambda_max"] = std::move(lambda_trace);
  if (want_lern) {
    for (int i = 0; i < total; ++i) {
      trajectory.scalars["lern_" + std::to_string(i + 1)] =
          std::move(lern_rows[static_cast<size_t>(i)]);
    }
  }
  if (want_wavg) {
    trajectory.scalars["wavg"] = weighted_average_trace(trajectory, params, wavg_anchor);
  }
}

std::vector<double> weighted_average_trace(const Trajectory& trajectory,
                                           const ModelParams& params, double tau) {
  if (trajectory.times.empty()) throw std::invalid_argument("empty trajectory");
  if (tau < trajectory.times.front() - 1e-12 || tau > trajectory.times.back() + 1e-12) {
    throw std::invalid_argument("anchor time lies outside the trajectory span");
  }
  const size_t anchor = nearest_sample(trajectory.times, tau);
  const Vector v =
      dominant_metzler(generator_matrix(params, trajectory.states[anchor].s)).left_vector;
  std::vector<double> trace(trajectory.times.size());
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    trace[k] = v.dot(trajectory.states[k].z());
  }
  return trace;
}

PeakReport find_global_peak(const Trajectory& trajectory, const ModelParams& params) {
  const std::vector<double>& r_trace = require_scalar(trajectory, "R");
  const auto crossings = detect_crossings(trajectory, "R", 1.0);
  if (crossings.size() > 1 || (crossings.size() == 1 && !crossings.front().downward)) {
    throw std::runtime_error(
        "R crossed 1 " + std::to_string(crossings.size()) +
        " times (upward included); the trace should be monotone, suspect the integration");
  }

  PeakReport report;
  report.corollary1_regime = r_trace.front() <= 1.0;

  const int n = params.n;
  const int total = params.total_nodes();
  report.per_node_peak_times.resize(static_cast<size_t>(total));
  std::vector<size_t> peak_index(static_cast<size_t>(total), 0);
  for (int i = 0; i < total; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < trajectory.states.size(); ++k) {
      const State& state = trajectory.states[k];
      const double value = (i < n) ? state.x(i) : state.w(i - n);
      if (value > best) {
        best = value;
        peak_index[static_cast<size_t>(i)] = k;
      }
    }
    report.per_node_peak_times[static_cast<size_t>(i)] =
        trajectory.times[peak_index[static_cast<size_t>(i)]];
  }

  const auto lerns = lern_traces(trajectory, params);
  report.per_node_lern_crossings.resize(static_cast<size_t>(total));
  for (int i = 0; i < total; ++i) {
    std::vector<double> times;
    for (const auto& event :
         detect_crossings(trajectory.times, lerns[static_cast<size_t>(i)],
                          "lern_" + std::to_string(i + 1), 1.0)) {
      times.push_back(event.time);
    }
    report.per_node_lern_crossings[static_cast<size_t>(i)] = std::move(times);
  }

  report.population_peak_lern_gaps.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double value = lerns[static_cast<size_t>(i)][peak_index[static_cast<size_t>(i)]];
    report.population_peak_lern_gaps[static_cast<size_t>(i)] =
        std::isnan(value) ? kNaN : std::abs(value - 1.0);
  }

  if (crossings.size() == 1) {
    report.tau_p = crossings.front().time;
    const auto wavg = weighted_average_trace(trajectory, params, *report.tau_p);
    const size_t argmax = static_cast<size_t>(
        std::max_element(wavg.begin(), wavg.end()) - wavg.begin());
    report.weighted_average_peak_time = trajectory.times[argmax];
    report.agreement_gap = std::abs(*report.weighted_average_peak_time - *report.tau_p);
  }
  return report;
}

EquilibriumClass classify_equilibrium(const ModelParams& params, const State& state,
                                      double tol) {
  for (int j = 0; j < params.m; ++j) {
    if (!(params.gamma_w(j) > 0.0)) {
      throw std::invalid_argument("classification requires positive contamination decay");
    }
  }
  const double x_peak = params.n > 0 ? state.x.cwiseAbs().maxCoeff() : 0.0;
  const double w_peak = params.m > 0 ? state.w.cwiseAbs().maxCoeff() : 0.0;
  return (x_peak < tol && w_peak < tol) ? EquilibriumClass::healthy
                                        : EquilibriumClass::not_at_equilibrium;
}

namespace {

TheoremReport check_box_invariants(const Trajectory& trajectory, const ModelParams& params) {
  TheoremReport report{"L1", Verdict::holds, {}, "box slack 1e-9, sum slack 1e-9", ""};
  const double slack = 1e-9;
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const State& state = trajectory.states[k];
    const double t = trajectory.times[k];
    for (int i = 0; i < params.n; ++i) {
      auto box = [&](double value, const char* name) {
        if (value < -slack || value > 1.0 + slack) {
          add_witness(report, t, std::string(name) + "[" + std::to_string(i) + "]", value,
                      slack);
        }
      };
      box(state.s(i), "s");
      box(state.x(i), "x");
      box(state.r(i), "r");
      const double sum = state.s(i) + state.x(i) + state.r(i);
      if (std::abs(sum - 1.0) > slack) {
        add_witness(report, t, "s+x+r[" + std::to_string(i) + "]", sum, slack);
      }
    }
    for (int j = 0; j < params.m; ++j) {
      if (state.w(j) < -slack) {
        add_witness(report, t, "w[" + std::to_string(j) + "]", state.w(j), slack);
      }
    }
  }
  return report;
}

TheoremReport check_susceptible_monotone(const Trajectory& trajectory,
                                         const ModelParams& params) {
  TheoremReport report{"L2", Verdict::holds, {}, "slack 1e-9", ""};
  for (size_t k = 0; k + 1 < trajectory.states.size(); ++k) {
    for (int i = 0; i < params.n; ++i) {
      const double before = trajectory.states[k].s(i);
      const double after = trajectory.states[k + 1].s(i);
      if (after > before + 1e-9) {
        add_witness(report, trajectory.times[k + 1], "s[" + std::to_string(i) + "]",
                    after - before, 1e-9);
      }
    }
  }
  return report;
}

TheoremReport check_pairwise_threshold(const Trajectory& trajectory,
                                       const ModelParams& params) {
  TheoremReport report{"L3", Verdict::holds, {},
                       "pairwise sum and derivative both above 1e-8 in magnitude", ""};
  if (params.n == 0 || params.m == 0 || trajectory.states.empty()) {
    report.verdict = Verdict::not_applicable;
    return report;
  }
  std::mt19937_64 rng(0x51a3u);
  const int draws = 2000;
  int checked = 0;
  for (int d = 0; d < draws; ++d) {
    const size_t at = rng() % trajectory.states.size();
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(params.m));
    const State& state = trajectory.states[at];
    const auto r_ij = drn_population(params, state, i, j);
    const auto r_ik = drn_population(params, state, i, params.n + k);
    if (!r_ij || !r_ik) continue;
    const double margin = *r_ij + *r_ik - 1.0;
    const double rate = pairwise_infection_derivative(params, state, i, j, k);
    if (std::abs(margin) <= 1e-8 || std::abs(rate) <= 1e-8) continue;
    ++checked;
    if ((margin > 0.0) != (rate > 0.0)) {
      add_witness(report, trajectory.times[at],
                  "pair (" + std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(k) + ")",
                  rate, margin);
    }
  }
  report.note = std::to_string(checked) + " informative draws of 2000";
  return report;
}

TheoremReport check_R_monotone(const Trajectory& trajectory) {
  TheoremReport report{"T1.i", Verdict::holds, {}, "slack 1e-7", ""};
  const auto& r_trace = require_scalar(trajectory, "R");
  for (size_t k = 0; k + 1 < r_trace.size(); ++k) {
    if (r_trace[k + 1] > r_trace[k] + 1e-7) {
      add_witness(report, trajectory.times[k + 1], "R", r_trace[k + 1] - r_trace[k], 1e-7);
    }
  }
  const auto crossings = detect_crossings(trajectory, "R", 1.0);
  for (size_t c = 1; c < crossings.size(); ++c) {
    add_witness(report, crossings[c].time, "extra R=1 crossing", 0.0, 0.0);
  }
  std::ostringstream note;
  note << "R(0) = " << r_trace.front() << ", crossings of 1: " << crossings.size();
  report.note = note.str();
  return report;
}

TheoremReport check_weighted_average_signs(const Trajectory& trajectory,
                                           const ModelParams& params) {
  TheoremReport report{"T1.ii_iv", Verdict::holds, {}, "derivative-sign threshold 1e-8", ""};
  const auto& r_trace = require_scalar(trajectory, "R");
  Vector warm;
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const State& state = trajectory.states[k];
    const DominantPair pair =
        dominant_metzler(generator_matrix(params, state.s), k > 0 ? &warm : nullptr);
    warm = pair.left_vector;
    const double slope = pair.left_vector.dot(derivative_compact(params, state));
    if (slope > 1e-8 && !(r_trace[k] > 1.0)) {
      add_witness(report, trajectory.times[k], "wavg increasing but R <= 1", r_trace[k], 1.0);
    }
    if (slope < -1e-8 && !(r_trace[k] < 1.0)) {
      add_witness(report, trajectory.times[k], "wavg decreasing but R >= 1", r_trace[k], 1.0);
    }
  }
  return report;
}

TheoremReport check_peak_agreement(const Trajectory& trajectory, const ModelParams& params) {
  TheoremReport report{"T1.iii", Verdict::holds, {}, "gap <= 2 recording intervals", ""};
  const auto& r_trace = require_scalar(trajectory, "R");
  const auto crossings = detect_crossings(trajectory, "R", 1.0);
  if (crossings.empty()) {
    report.verdict = Verdict::not_applicable;
    report.note = r_trace.front() <= 1.0 ? "R(0) <= 1: no interior peak expected"
                                         : "no crossing within the horizon";
    return report;
  }
  if (crossings.size() > 1 || !crossings.front().downward) {
    report.verdict = Verdict::not_applicable;
    report.note = "non-monotone R trace; see T1.i";
    return report;
  }
  const PeakReport peak = find_global_peak(trajectory, params);
  const double bound = 2.0 * trajectory.recording_interval();
  if (peak.agreement_gap && *peak.agreement_gap > bound) {
    add_witness(report, *peak.tau_p, "peak/crossing gap", *peak.agreement_gap, bound);
  }
  return report;
}

TheoremReport check_decay_after_crossing(const Trajectory& trajectory,
                                         const ModelParams& params) {
  TheoremReport report{"C1", Verdict::holds, {},
                       "strict decrease; terminal weighted average below 1e-3", ""};
  const auto& r_trace = require_scalar(trajectory, "R");
  size_t start = r_trace.size();
  for (size_t k = 0; k < r_trace.size(); ++k) {
    if (r_trace[k] < 1.0) { start = k; break; }
  }
  if (start == r_trace.size()) {
    report.verdict = Verdict::not_applicable;
    report.note = "R never fell below 1 within the horizon";
    return report;
  }
  const auto trace = weighted_average_trace(trajectory, params, trajectory.times[start]);
  for (size_t k = start; k + 1 < trace.size(); ++k) {
    if (trace[k + 1] >= trace[k] + 1e-12 * std::max(1.0, std::abs(trace[k]))) {
      add_witness(report, trajectory.times[k + 1], "wavg", trace[k + 1] - trace[k], 0.0);
    }
  }
  if (!(trace.back() < 1e-3)) {
    add_witness(report, trajectory.times.back(), "terminal wavg", trace.back(), 1e-3);
  }
  if (trace[start] > 0.0 && trace.back() > 0.0 &&
      trajectory.times.back() > trajectory.times[start]) {
    const double exponent = std::log(trace.back() / trace[start]) /
                            (trajectory.times.back() - trajectory.times[start]);
    std::ostringstream note;
    note << "empirical decay exponent " << exponent;
    report.note = note.str();
  }
  return report;
}

TheoremReport check_local_thresholds(const Trajectory& trajectory,
                                     const ModelParams& params) {
  TheoremReport report{"T2", Verdict::holds, {},
                       "state above 1e-12, derivative above 1e-8 in magnitude", ""};
  const auto lerns = lern_traces(trajectory, params);
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const State& state = trajectory.states[k];
    const StateDerivative d = derivative(params, state);
    const double t = trajectory.times[k];
    for (int i = 0; i < params.total_nodes(); ++i) {
      const double level = (i < params.n) ? state.x(i) : state.w(i - params.n);
      const double rate = (i < params.n) ? d.dx(i) : d.dw(i - params.n);
      if (!(level > kDefinednessEps) || std::abs(rate) <= 1e-8) continue;
      const double local = lerns[static_cast<size_t>(i)][k];
      if (std::isnan(local)) continue;
      if ((rate > 0.0) != (local > 1.0)) {
        const std::string name = (i < params.n)
                                     ? "x[" + std::to_string(i) + "]"
                                     : "w[" + std::to_string(i - params.n) + "]";
        add_witness(report, t, name, rate, local);
      }
    }
  }
  return report;
}

TheoremReport check_node_to_network(const Trajectory& trajectory,
                                    const ModelParams& params) {
  TheoremReport report{"T3", Verdict::holds, {},
                       "strict comparisons; all-equal-1 band 1e-9 maps to 1e-7", ""};
  const auto lerns = lern_traces(trajectory, params);
  Vector warm;
  bool warmed = false;
  int above = 0, below = 0;
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    bool any = false, all_above = true, all_below = true, all_one = true;
    for (int i = 0; i < params.total_nodes(); ++i) {
      const double local = lerns[static_cast<size_t>(i)][k];
      if (std::isnan(local)) continue;
      any = true;
      all_above = all_above && local > 1.0;
      all_below = all_below && local < 1.0;
      all_one = all_one && std::abs(local - 1.0) <= 1e-9;
    }
    if (!any || (!all_above && !all_below && !all_one)) continue;
    const PerronPair pair = perron_dominant(
        reproduction_matrix(params, trajectory.states[k]), warmed ? &warm : nullptr);
    warm = pair.right_vector;
    warmed = true;
    const double rho = pair.value;
    const double t = trajectory.times[k];
    if (all_one) {
      if (std::abs(rho - 1.0) > 1e-7) add_witness(report, t, "rho with unit locals", rho, 1e-7);
    } else if (all_above) {
      ++above;
      if (!(rho > 1.0)) add_witness(report, t, "rho with all locals above 1", rho, 1.0);
    } else {
      ++below;
      if (!(rho < 1.0)) add_witness(report, t, "rho with all locals below 1", rho, 1.0);
    }
  }
  report.note = std::to_string(above) + " all-above samples, " + std::to_string(below) +
                " all-below samples";
  return report;
}

TheoremReport check_equilibria(const Trajectory& trajectory, const ModelParams& params) {
  TheoremReport report{"P1", Verdict::holds, {},
                       "healthy tol 1e-3; stationarity threshold 1e-10", ""};
  const State& terminal = trajectory.states.back();
  if (classify_equilibrium(params, terminal, 1e-3) == EquilibriumClass::healthy) {
    return report;
  }
  const Vector dz = derivative_compact(params, terminal);
  const double stationarity = dz.cwiseAbs().maxCoeff();
  if (stationarity < 1e-10) {
    add_witness(report, terminal.t, "stationary non-healthy terminal state",
                terminal.z().cwiseAbs().maxCoeff(), 1e-3);
  } else {
    report.verdict = Verdict::not_applicable;
    report.note = "terminal state still moving; horizon too short to classify";
  }
  return report;
}

}  // namespace

std::vector<TheoremReport> run_theorem_suite(const Trajectory& trajectory,
                                             const ModelParams& params) {
  if (trajectory.states.empty()) throw std::invalid_argument("empty trajectory");
  require_scalar(trajectory, "R");

  std::vector<TheoremReport> reports;
  reports.push_back(check_box_invariants(trajectory, params));
  reports.push_back(check_susceptible_monotone(trajectory, params));
  reports.push_back(check_pairwise_threshold(trajectory, params));
  reports.push_back(check_R_monotone(trajectory));
  reports.push_back(check_weighted_average_signs(trajectory, params));
  reports.push_back(check_peak_agreement(trajectory, params));
  reports.push_back(check_decay_after_crossing(trajectory, params));
  reports.push_back(check_local_thresholds(trajectory, params));
  reports.push_back(check_node_to_network(trajectory, params));
  reports.push_back(check_equilibria(trajectory, params));
  return reports;
}

}  // namespace multisir
