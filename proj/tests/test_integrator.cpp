#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "multisir/integrator.hpp"
#include "multisir/scenario.hpp"

using namespace multisir;

namespace {

Matrix single(double value) { return Matrix::Constant(1, 1, value); }
Vector single_v(double value) { return Vector::Constant(1, value); }

ModelParams golden_params(double rate_scale = 1.0) {
  return ModelParams::make(single(rate_scale), single(rate_scale), single(rate_scale),
                           single(0.0), single_v(1.0), single_v(1.0));
}

State golden_initial(double s0, double x0, double w0) {
  State state;
  state.s = single_v(s0);
  state.x = single_v(x0);
  state.r = single_v(1.0 - s0 - x0);
  state.w = single_v(w0);
  return state;
}

}  // namespace

TEST_CASE("the healthy equilibrium is invariant") {
  const ModelParams params = golden_params();
  const State initial = golden_initial(0.8, 0.0, 0.0);
  IntegrationSettings settings;
  settings.t_end = 2.0;
  const Trajectory trajectory = simulate(params, initial, settings);
  for (const State& state : trajectory.states) {
    CHECK(state.s(0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(state.x(0) == 0.0);
    CHECK(state.w(0) == 0.0);
  }
}

TEST_CASE("the golden system decays to a healthy terminal state") {
  const ModelParams params = golden_params();
  const State initial = golden_initial(0.95, 0.05, 0.1);
  IntegrationSettings settings;
  settings.dt = 1e-3;
  settings.t_end = 50.0;
  const Trajectory trajectory = simulate(params, initial, settings);
  const State& terminal = trajectory.states.back();
  CHECK(terminal.x(0) < 1e-3);
  CHECK(terminal.w(0) < 1e-3);
  CHECK(trajectory.times.back() == doctest::Approx(50.0));
}

TEST_CASE("susceptibles are monotone and invariants hold on a seeded scenario") {
  const Scenario scenario = generate_scenario(GeneratorSpec{}, 11);
  IntegrationSettings settings = scenario.settings;
  settings.t_end = 5.0;
  const Trajectory trajectory = simulate(scenario.params, scenario.initial, settings);
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    CHECK(max_invariant_violation(trajectory.states[k]) <= 1e-9);
    if (k == 0) continue;
    for (int i = 0; i < scenario.params.n; ++i) {
      CHECK(trajectory.states[k].s(i) <= trajectory.states[k - 1].s(i) + 1e-9);
    }
  }
}

TEST_CASE("recorded grid structure") {
  const ModelParams params = golden_params();
  IntegrationSettings settings;
  settings.dt = 0.01;
  settings.t_end = 0.1;
  settings.record_every = 3;
  const Trajectory trajectory = simulate(params, golden_initial(0.9, 0.05, 0.0), settings);
  // steps 0, 3, 6, 9 and the final step 10
  REQUIRE(trajectory.samples() == 5);
  CHECK(trajectory.times[1] == doctest::Approx(0.03));
  CHECK(trajectory.times.back() == doctest::Approx(0.1));
  CHECK(trajectory.recording_interval() == doctest::Approx(0.03));
}

TEST_CASE("fourth-order convergence under step halving") {
  const ModelParams params = golden_params();
  const State initial = golden_initial(0.9, 0.1, 0.2);
  auto terminal = [&](double dt) {
    IntegrationSettings settings;
    settings.dt = dt;
    settings.t_end = 2.0;
    settings.record_every = 1000000;  // only endpoints matter here
    const Trajectory trajectory = simulate(params, initial, settings);
    const State& last = trajectory.states.back();
    Vector packed(4);
    packed << last.s(0), last.x(0), last.r(0), last.w(0);
    return packed;
  };
  const Vector reference = terminal(1.25e-4);
  const double coarse = (terminal(4e-3) - reference).cwiseAbs().maxCoeff();
  const double fine = (terminal(2e-3) - reference).cwiseAbs().maxCoeff();
  const double ratio = coarse / fine;
  CHECK(ratio > 10.0);
  CHECK(ratio < 22.0);
}

TEST_CASE("a too-coarse step aborts with the offending component") {
  // gamma dt = 5 puts RK4 far outside its stability region, so the infected
  // proportion blows up numerically within a couple of steps.
  const ModelParams params = ModelParams::make(single(1.0), single(1.0), single(1.0),
                                               single(0.0), single_v(5.0), single_v(1.0));
  const State initial = golden_initial(0.2, 0.8, 0.0);
  IntegrationSettings settings;
  settings.dt = 1.0;
  settings.t_end = 3.0;
  CHECK_THROWS_AS(simulate(params, initial, settings), IntegrationError);
  try {
    simulate(params, initial, settings);
  } catch (const IntegrationError& error) {
    CHECK(error.step >= 1);
    CHECK_FALSE(error.component.empty());
    CHECK(std::string(error.what()).find("reduce dt") != std::string::npos);
  }
}

TEST_CASE("bad initial conditions are rejected up front") {
  const ModelParams params = golden_params();
  IntegrationSettings settings;
  CHECK_THROWS_AS(simulate(params, golden_initial(0.8, 0.3, 0.0), settings),
                  std::invalid_argument);  // s + x > 1
  State negative_w = golden_initial(0.9, 0.1, 0.0);
  negative_w.w(0) = -0.2;
  CHECK_THROWS_AS(simulate(params, negative_w, settings), std::invalid_argument);
  settings.dt = -1.0;
  CHECK_THROWS_AS(simulate(params, golden_initial(0.9, 0.1, 0.0), settings),
                  std::invalid_argument);
}

TEST_CASE("crossing detection") {
  Trajectory trajectory;
  trajectory.times = {0.0, 1.0, 2.0, 3.0};
  trajectory.scalars["flat"] = {0.5, 0.5, 0.5, 0.5};
  trajectory.scalars["falling"] = {1.2, 0.8, 0.6, 0.4};
  trajectory.scalars["wobble"] = {0.8, 1.4, 0.9, 1.1};
  trajectory.scalars["gappy"] = {1.2, std::nan(""), 0.8, 0.6};

  CHECK(detect_crossings(trajectory, "flat", 1.0).empty());

  const auto falling = detect_crossings(trajectory, "falling", 1.0);
  REQUIRE(falling.size() == 1);
  CHECK(falling[0].time == doctest::Approx(0.5).epsilon(1e-14));  // 0.2 / 0.4
  CHECK(falling[0].downward);
  CHECK(falling[0].level == 1.0);

  const auto wobble = detect_crossings(trajectory, "wobble", 1.0);
  REQUIRE(wobble.size() == 3);
  CHECK_FALSE(wobble[0].downward);
  CHECK(wobble[1].downward);
  CHECK(wobble[0].time < wobble[1].time);
  CHECK(wobble[1].time < wobble[2].time);

  CHECK(detect_crossings(trajectory, "gappy", 1.0).empty());

  CHECK_THROWS_AS(detect_crossings(trajectory, "unknown", 1.0), std::out_of_range);
}
