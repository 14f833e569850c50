#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "multisir/model.hpp"

namespace multisir {

struct IntegrationSettings {
  double dt = 1e-3;
  double t_end = 15.0;
  int record_every = 10;           ///< steps between recorded samples
  double clamp_tolerance = 1e-9;   ///< max invariant drift before hard failure
};

/// Recorded sample path: time grid, states, and optional named per-sample
/// scalars (e.g. "R", "lambda_max", "lern_3", "wavg"). A NaN entry in a
/// scalar trace marks an undefined value at that sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::map<std::string, std::vector<double>> scalars;

  int samples() const { return static_cast<int>(times.size()); }
  int n() const { return states.empty() ? 0 : static_cast<int>(states.front().s.size()); }
  int m() const { return states.empty() ? 0 : static_cast<int>(states.front().w.size()); }

  /// Recording interval of the grid (largest consecutive spacing).
  double recording_interval() const;
};

struct CrossingEvent {
  std::string quantity;
  double time = 0.0;
  bool downward = false;
  double level = 0.0;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, long long step, std::string component)
      : std::runtime_error(what), step(step), component(std::move(component)) {}
  long long step;
  std::string component;
};

/// Advances the model with classical fixed-step RK4, recording every
/// `record_every`-th step (plus the initial and final states). After each
/// step, negative components within clamp_tolerance are clamped to zero and
/// (s, x, r) renormalized to unit sum; larger violations abort with an
/// IntegrationError naming the step and component.
Trajectory simulate(const ModelParams& params, const State& initial,
                    const IntegrationSettings& settings);

/// One event per sign change of (scalar - level) between consecutive samples,
/// with the crossing instant refined by linear interpolation. Sample pairs
/// containing an undefined (NaN) value are skipped. Throws std::out_of_range
/// for an unknown quantity name.
std::vector<CrossingEvent> detect_crossings(const Trajectory& trajectory,
                                            const std::string& quantity,
                                            double level);

/// Same, over an explicit (times, values) pair.
std::vector<CrossingEvent> detect_crossings(const std::vector<double>& times,
                                            const std::vector<double>& values,
                                            const std::string& quantity,
                                            double level);

}  // namespace multisir
