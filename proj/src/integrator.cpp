#include "multisir/integrator.hpp"

#include <cmath>
#include <limits>

namespace multisir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vector pack(const State& state) {
  Vector y(3 * state.s.size() + state.w.size());
  y << state.s, state.x, state.r, state.w;
  return y;
}

State unpack(const Vector& y, int n, int m, double t) {
  State state;
  state.s = y.head(n);
  state.x = y.segment(n, n);
  state.r = y.segment(2 * n, n);
  state.w = y.tail(m);
  state.t = t;
  return state;
}

Vector rhs(const ModelParams& params, const Vector& y) {
  const State state = unpack(y, params.n, params.m, 0.0);
  const StateDerivative d = derivative(params, state);
  Vector dy(y.size());
  dy << d.ds, d.dx, d.dr, d.dw;
  return dy;
}

const char* component_name(int n, Eigen::Index flat, Eigen::Index* index) {
  if (flat < n) { *index = flat; return "s"; }
  if (flat < 2 * n) { *index = flat - n; return "x"; }
  if (flat < 3 * n) { *index = flat - 2 * n; return "r"; }
  *index = flat - 3 * n;
  return "w";
}

// Clamp roundoff-level negatives to zero and renormalize each (s, x, r)
// triple to unit sum; anything larger than the tolerance aborts the run.
void enforce_invariants(Vector& y, const ModelParams& params, double tolerance,
                        long long step) {
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    if (y(k) < 0.0) {
      if (y(k) < -tolerance) {
        Eigen::Index index = 0;
        const char* name = component_name(params.n, k, &index);
        throw IntegrationError(
            "state went negative beyond the clamp tolerance at step " +
                std::to_string(step) + ": " + name + "[" + std::to_string(index) +
                "] = " + std::to_string(y(k)) + "; reduce dt",
            step, std::string(name) + "[" + std::to_string(index) + "]");
      }
      y(k) = 0.0;
    }
  }
  for (int i = 0; i < params.n; ++i) {
    const double sum = y(i) + y(params.n + i) + y(2 * params.n + i);
    if (std::abs(sum - 1.0) > tolerance) {
      throw IntegrationError(
          "proportions of group " + std::to_string(i) + " drifted from unit sum at step " +
              std::to_string(step) + ": sum = " + std::to_string(sum) + "; reduce dt",
          step, "s+x+r[" + std::to_string(i) + "]");
    }
    y(i) /= sum;
    y(params.n + i) /= sum;
    y(2 * params.n + i) /= sum;
  }
}

}  // namespace

double Trajectory::recording_interval() const {
  double interval = 0.0;
  for (size_t k = 1; k < times.size(); ++k) {
    interval = std::max(interval, times[k] - times[k - 1]);
  }
  return interval;
}

Trajectory simulate(const ModelParams& params, const State& initial,
                    const IntegrationSettings& settings) {
  if (!(settings.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(settings.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (settings.record_every < 1) throw std::invalid_argument("record_every must be >= 1");

  if (initial.s.size() != params.n || initial.x.size() != params.n ||
      initial.r.size() != params.n || initial.w.size() != params.m) {
    throw std::invalid_argument("initial state does not match the parameter dimensions");
  }
  for (int i = 0; i < params.n; ++i) {
    const double s0 = initial.s(i);
    const double x0 = initial.x(i);
    if (s0 < 0.0 || s0 > 1.0 || x0 < 0.0 || x0 > 1.0 || s0 + x0 > 1.0 + 1e-12) {
      throw std::invalid_argument("initial proportions of group " + std::to_string(i) +
                                  " lie outside [0,1]");
    }
    if (std::abs(s0 + x0 + initial.r(i) - 1.0) > 1e-9) {
      throw std::invalid_argument("initial proportions of group " + std::to_string(i) +
                                  " do not sum to one");
    }
  }
  if (params.m > 0 && initial.w.minCoeff() < 0.0) {
    throw std::invalid_argument("initial contamination must be nonnegative");
  }

  const long long steps = std::max<long long>(1, std::llround(settings.t_end / settings.dt));
  const double dt = settings.dt;

  Trajectory trajectory;
  trajectory.times.reserve(static_cast<size_t>(steps / settings.record_every) + 2);

  Vector y = pack(initial);
  auto record = [&](long long step) {
    const double t = static_cast<double>(step) * dt;
    trajectory.times.push_back(t);
    trajectory.states.push_back(unpack(y, params.n, params.m, t));
  };
  record(0);

  for (long long step = 1; step <= steps; ++step) {
    const Vector k1 = rhs(params, y);
    const Vector k2 = rhs(params, y + (0.5 * dt) * k1);
    const Vector k3 = rhs(params, y + (0.5 * dt) * k2);
    const Vector k4 = rhs(params, y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    enforce_invariants(y, params, settings.clamp_tolerance, step);
    if (step % settings.record_every == 0 || step == steps) {
      record(step);
    }
  }
  return trajectory;
}

std::vector<CrossingEvent> detect_crossings(const std::vector<double>& times,
                                            const std::vector<double>& values,
                                            const std::string& quantity, double level) {
  if (times.size() != values.size()) {
    throw std::invalid_argument("times and values must have equal length");
  }
  std::vector<CrossingEvent> events;
  for (size_t k = 0; k + 1 < values.size(); ++k) {
    const double before = values[k] - level;
    const double after = values[k + 1] - level;
    if (std::isnan(before) || std::isnan(after)) continue;
    if (before * after < 0.0) {
      const double fraction = before / (before - after);
      events.push_back({quantity, times[k] + fraction * (times[k + 1] - times[k]),
                        before > 0.0, level});
    }
  }
  return events;
}

std::vector<CrossingEvent> detect_crossings(const Trajectory& trajectory,
                                            const std::string& quantity, double level) {
  auto found = trajectory.scalars.find(quantity);
  if (found == trajectory.scalars.end()) {
    throw std::out_of_range("no recorded scalar named '" + quantity + "'");
  }
  return detect_crossings(trajectory.times, found->second, quantity, level);
}

}  // namespace multisir
