#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multisir/cli.hpp"
#include "multisir/runner.hpp"
#include "multisir/spectral.hpp"

namespace py = pybind11;
using namespace multisir;

namespace {

Matrix stack_rows(const Trajectory& trajectory, char which) {
  const int n = trajectory.n();
  const int m = trajectory.m();
  const int cols = (which == 'w') ? m : n;
  Matrix out(static_cast<Eigen::Index>(trajectory.states.size()), cols);
  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const State& state = trajectory.states[k];
    switch (which) {
      case 's': out.row(static_cast<Eigen::Index>(k)) = state.s; break;
      case 'x': out.row(static_cast<Eigen::Index>(k)) = state.x; break;
      case 'r': out.row(static_cast<Eigen::Index>(k)) = state.r; break;
      default: out.row(static_cast<Eigen::Index>(k)) = state.w; break;
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
  module.doc() = "Multilayer networked SIR simulation and reproduction-number analysis";
  module.attr("__version__") = kVersion;
  module.attr("DEFINEDNESS_EPS") = kDefinednessEps;

  py::register_exception<ConvergenceError>(module, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IntegrationError>(module, "IntegrationError", PyExc_RuntimeError);
  py::register_exception<ScenarioError>(module, "ScenarioError", PyExc_ValueError);
  py::register_exception<ValidationError>(module, "ValidationError", PyExc_ValueError);

  py::class_<ModelParams>(module, "ModelParams")
      .def_static("make", &ModelParams::make, py::arg("beta"), py::arg("beta_w"),
                  py::arg("c_w"), py::arg("alpha"), py::arg("gamma"), py::arg("gamma_w"))
      .def_readonly("n", &ModelParams::n)
      .def_readonly("m", &ModelParams::m)
      .def_readonly("beta", &ModelParams::beta)
      .def_readonly("beta_w", &ModelParams::beta_w)
      .def_readonly("c_w", &ModelParams::c_w)
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("gamma", &ModelParams::gamma)
      .def_readonly("gamma_w", &ModelParams::gamma_w)
      .def_readonly("a_w", &ModelParams::a_w)
      .def_readonly("b_f", &ModelParams::b_f)
      .def_readonly("d_f", &ModelParams::d_f)
      .def_property_readonly("total_nodes", &ModelParams::total_nodes);

  py::class_<State>(module, "State")
      .def(py::init([](const Vector& s, const Vector& x, const Vector& r, const Vector& w,
                       double t) {
             State state;
             state.s = s;
             state.x = x;
             state.r = r;
             state.w = w;
             state.t = t;
             return state;
           }),
           py::arg("s"), py::arg("x"), py::arg("r"), py::arg("w"), py::arg("t") = 0.0)
      .def_static("healthy", &State::healthy, py::arg("s0"), py::arg("m"))
      .def_readwrite("s", &State::s)
      .def_readwrite("x", &State::x)
      .def_readwrite("r", &State::r)
      .def_readwrite("w", &State::w)
      .def_readwrite("t", &State::t)
      .def("z", &State::z);

  py::class_<StateDerivative>(module, "StateDerivative")
      .def_readonly("ds", &StateDerivative::ds)
      .def_readonly("dx", &StateDerivative::dx)
      .def_readonly("dr", &StateDerivative::dr)
      .def_readonly("dw", &StateDerivative::dw);

  py::class_<ValidationIssue>(module, "ValidationIssue")
      .def_readonly("condition", &ValidationIssue::condition)
      .def_readonly("detail", &ValidationIssue::detail)
      .def("__repr__", [](const ValidationIssue& issue) {
        return "ValidationIssue(" + issue.condition + ": " + issue.detail + ")";
      });

  module.def("validate_params", &validate_params, py::arg("params"));
  module.def(
      "assemble_blocks",
      [](const Matrix& beta, const Matrix& beta_w, const Matrix& c_w, const Matrix& alpha,
         const Vector& gamma, const Vector& gamma_w) {
        Blocks blocks = assemble_blocks(beta, beta_w, c_w, alpha, gamma, gamma_w);
        return py::make_tuple(blocks.a_w, blocks.b_f, blocks.d_f);
      },
      py::arg("beta"), py::arg("beta_w"), py::arg("c_w"), py::arg("alpha"), py::arg("gamma"),
      py::arg("gamma_w"));
  module.def("derivative", &derivative, py::arg("params"), py::arg("state"));
  module.def("derivative_compact", &derivative_compact, py::arg("params"), py::arg("state"));
  module.def("generator_matrix", &generator_matrix, py::arg("params"), py::arg("s"));
  module.def("next_generation_matrix", &next_generation_matrix, py::arg("params"),
             py::arg("s"));
  module.def("max_invariant_violation", &max_invariant_violation, py::arg("state"));

  py::class_<DominantPair>(module, "DominantPair")
      .def_readonly("value", &DominantPair::value)
      .def_readonly("left_vector", &DominantPair::left_vector)
      .def_readonly("iterations", &DominantPair::iterations)
      .def_readonly("residual", &DominantPair::residual);

  module.def(
      "spectral_radius", [](const Matrix& M) { return spectral_radius(M); }, py::arg("M"));
  module.def(
      "dominant_metzler", [](const Matrix& M) { return dominant_metzler(M); }, py::arg("M"));
  module.def(
      "is_strongly_connected",
      [](const Matrix& pattern) { return is_strongly_connected(positive_pattern(pattern)); },
      py::arg("pattern"), "Strong connectivity of the positive pattern of a matrix.");

  py::class_<IntegrationSettings>(module, "IntegrationSettings")
      .def(py::init<>())
      .def_readwrite("dt", &IntegrationSettings::dt)
      .def_readwrite("t_end", &IntegrationSettings::t_end)
      .def_readwrite("record_every", &IntegrationSettings::record_every)
      .def_readwrite("clamp_tolerance", &IntegrationSettings::clamp_tolerance);

  py::class_<Trajectory>(module, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("scalars", &Trajectory::scalars)
      .def_property_readonly("n", &Trajectory::n)
      .def_property_readonly("m", &Trajectory::m)
      .def("samples", &Trajectory::samples)
      .def("recording_interval", &Trajectory::recording_interval)
      .def("s_matrix", [](const Trajectory& t) { return stack_rows(t, 's'); })
      .def("x_matrix", [](const Trajectory& t) { return stack_rows(t, 'x'); })
      .def("r_matrix", [](const Trajectory& t) { return stack_rows(t, 'r'); })
      .def("w_matrix", [](const Trajectory& t) { return stack_rows(t, 'w'); });

  py::class_<CrossingEvent>(module, "CrossingEvent")
      .def_readonly("quantity", &CrossingEvent::quantity)
      .def_readonly("time", &CrossingEvent::time)
      .def_readonly("downward", &CrossingEvent::downward)
      .def_readonly("level", &CrossingEvent::level);

  module.def("simulate", &simulate, py::arg("params"), py::arg("initial"),
             py::arg("settings"));
  module.def(
      "detect_crossings",
      [](const Trajectory& trajectory, const std::string& quantity, double level) {
        return detect_crossings(trajectory, quantity, level);
      },
      py::arg("trajectory"), py::arg("quantity"), py::arg("level") = 1.0);

  py::class_<ReproductionReport>(module, "ReproductionReport")
      .def_readonly("t", &ReproductionReport::t)
      .def_readonly("global_R", &ReproductionReport::global_R)
      .def_readonly("matrix_R", &ReproductionReport::matrix_R)
      .def_readonly("lern", &ReproductionReport::lern)
      .def_readonly("drn_defined", &ReproductionReport::drn_defined);

  module.def("global_R", &global_R, py::arg("params"), py::arg("state"));
  module.def("drn_population", &drn_population, py::arg("params"), py::arg("state"),
             py::arg("i"), py::arg("j"));
  module.def("drn_infrastructure", &drn_infrastructure, py::arg("params"), py::arg("state"),
             py::arg("j"), py::arg("k"));
  module.def("drn", &drn, py::arg("params"), py::arg("state"), py::arg("i"), py::arg("j"));
  module.def("lern", &lern, py::arg("params"), py::arg("state"), py::arg("i"));
  module.def("lern_vector", &lern_vector, py::arg("params"), py::arg("state"));
  module.def("reproduction_matrix", &reproduction_matrix, py::arg("params"),
             py::arg("state"));
  module.def("pairwise_infection_derivative", &pairwise_infection_derivative,
             py::arg("params"), py::arg("state"), py::arg("i"), py::arg("j"), py::arg("k"));
  module.def("reproduction_report", &reproduction_report, py::arg("params"),
             py::arg("state"));

  py::enum_<Verdict>(module, "Verdict")
      .value("holds", Verdict::holds)
      .value("violated", Verdict::violated)
      .value("not_applicable", Verdict::not_applicable);

  py::class_<Witness>(module, "Witness")
      .def_readonly("time", &Witness::time)
      .def_readonly("subject", &Witness::subject)
      .def_readonly("observed", &Witness::observed)
      .def_readonly("bound", &Witness::bound);

  py::class_<TheoremReport>(module, "TheoremReport")
      .def_readonly("claim", &TheoremReport::claim)
      .def_readonly("verdict", &TheoremReport::verdict)
      .def_readonly("witnesses", &TheoremReport::witnesses)
      .def_readonly("tolerances", &TheoremReport::tolerances)
      .def_readonly("note", &TheoremReport::note);

  py::class_<PeakReport>(module, "PeakReport")
      .def_readonly("tau_p", &PeakReport::tau_p)
      .def_readonly("weighted_average_peak_time", &PeakReport::weighted_average_peak_time)
      .def_readonly("agreement_gap", &PeakReport::agreement_gap)
      .def_readonly("corollary1_regime", &PeakReport::corollary1_regime)
      .def_readonly("per_node_peak_times", &PeakReport::per_node_peak_times)
      .def_readonly("per_node_lern_crossings", &PeakReport::per_node_lern_crossings)
      .def_readonly("population_peak_lern_gaps", &PeakReport::population_peak_lern_gaps);

  py::enum_<EquilibriumClass>(module, "EquilibriumClass")
      .value("healthy", EquilibriumClass::healthy)
      .value("not_at_equilibrium", EquilibriumClass::not_at_equilibrium);

  module.def("attach_traces", &attach_traces, py::arg("trajectory"), py::arg("params"),
             py::arg("record"), py::arg("wavg_anchor") = 0.0);
  module.def("weighted_average_trace", &weighted_average_trace, py::arg("trajectory"),
             py::arg("params"), py::arg("tau"));
  module.def("find_global_peak", &find_global_peak, py::arg("trajectory"),
             py::arg("params"));
  module.def("classify_equilibrium", &classify_equilibrium, py::arg("params"),
             py::arg("state"), py::arg("tol"));
  module.def("run_theorem_suite", &run_theorem_suite, py::arg("trajectory"),
             py::arg("params"));

  py::class_<GeneratorSpec>(module, "GeneratorSpec")
      .def(py::init<>())
      .def_readwrite("n", &GeneratorSpec::n)
      .def_readwrite("m", &GeneratorSpec::m)
      .def_readwrite("gamma_interval", &GeneratorSpec::gamma_interval)
      .def_readwrite("gamma_w_interval", &GeneratorSpec::gamma_w_interval)
      .def_readwrite("beta_interval", &GeneratorSpec::beta_interval)
      .def_readwrite("beta_w_interval", &GeneratorSpec::beta_w_interval)
      .def_readwrite("alpha_interval", &GeneratorSpec::alpha_interval)
      .def_readwrite("w0_interval", &GeneratorSpec::w0_interval)
      .def_readwrite("c_w_offset", &GeneratorSpec::c_w_offset)
      .def_readwrite("s0", &GeneratorSpec::s0)
      .def_readwrite("max_retries", &GeneratorSpec::max_retries);

  py::class_<Scenario>(module, "Scenario")
      .def_readwrite("params", &Scenario::params)
      .def_readwrite("initial", &Scenario::initial)
      .def_readwrite("settings", &Scenario::settings)
      .def_readwrite("record", &Scenario::record)
      .def_readwrite("wavg_anchor", &Scenario::wavg_anchor)
      .def_readwrite("seed", &Scenario::seed);

  module.def(
      "generate_scenario",
      [](std::uint64_t seed, const GeneratorSpec& spec) {
        return generate_scenario(spec, seed);
      },
      py::arg("seed"), py::arg("spec") = GeneratorSpec{});
  module.def(
      "load_scenario",
      [](const std::string& path) { return load_scenario(path); }, py::arg("path"));
  module.def(
      "save_scenario",
      [](const Scenario& scenario, const std::string& path) {
        save_scenario(scenario, path);
      },
      py::arg("scenario"), py::arg("path"));
  module.def("scenario_hash", &scenario_hash, py::arg("scenario"));

  py::class_<RunOptions>(module, "RunOptions")
      .def(py::init<>())
      .def_readwrite("format", &RunOptions::format)
      .def_readwrite("auto_extend", &RunOptions::auto_extend)
      .def_readwrite("settle_tol", &RunOptions::settle_tol)
      .def_readwrite("max_extensions", &RunOptions::max_extensions);

  py::class_<RunResult>(module, "RunResult")
      .def_readonly("scenario", &RunResult::scenario)
      .def_readonly("trajectory", &RunResult::trajectory)
      .def_readonly("theorems", &RunResult::theorems)
      .def_readonly("peak", &RunResult::peak)
      .def_readonly("all_hold", &RunResult::all_hold);

  module.def("run_scenario", &run_scenario, py::arg("scenario"),
             py::arg("options") = RunOptions{});
  module.def(
      "export_run",
      [](const std::string& dir, const Scenario& scenario, const Trajectory& trajectory,
         const std::vector<TheoremReport>& theorems, const PeakReport& peak,
         const std::string& format) {
        const RunArtifacts artifacts =
            export_run(dir, scenario, trajectory, theorems, peak, format);
        return py::dict(
            py::arg("trajectory") = artifacts.trajectory.string(),
            py::arg("reproduction") = artifacts.reproduction_series.string(),
            py::arg("theorem_report") = artifacts.theorem_report.string(),
            py::arg("peak_report") = artifacts.peak_report.string(),
            py::arg("manifest") = artifacts.manifest.string(),
            py::arg("scenario_resolved") = artifacts.scenario_resolved.string());
      },
      py::arg("dir"), py::arg("scenario"), py::arg("trajectory"), py::arg("theorems"),
      py::arg("peak"), py::arg("format") = "csv");
  module.def(
      "import_trajectory",
      [](const std::string& dir, int n, int m) { return import_trajectory(dir, n, m); },
      py::arg("dir"), py::arg("n"), py::arg("m"));

  module.def(
      "cli_main",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("multisir");
        for (const auto& arg : args) argv.push_back(arg.c_str());
        return cli_main(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"));
}
