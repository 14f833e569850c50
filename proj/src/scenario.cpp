#include "multisir/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

namespace multisir {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// 53-bit uniform in [0,1); bit-reproducible across platforms, unlike
// std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, const std::array<double, 2>& interval) {
  return interval[0] + (interval[1] - interval[0]) * uniform01(rng);
}

Matrix random_matrix(int rows, int cols, const std::array<double, 2>& interval,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) M(i, j) = uniform_in(rng, interval);
  }
  return M;
}

Vector random_vector(int size, const std::array<double, 2>& interval, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(size);
  for (int i = 0; i < size; ++i) v(i) = uniform_in(rng, interval);
  return v;
}

std::string format_sig(double value, int digits = 12) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

double round_sig(double value, int digits = 12) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json values = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

Matrix matrix_from_json(const json& node, int rows, int cols, const std::string& field) {
  if (!node.is_array() || static_cast<int>(node.size()) != rows) {
    throw ScenarioError("field '" + field + "' must be a " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " array of rows");
  }
  Matrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = node[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ScenarioError("field '" + field + "' row " + std::to_string(i) + " must have " +
                          std::to_string(cols) + " entries");
    }
    for (int j = 0; j < cols; ++j) {
      if (!row[static_cast<size_t>(j)].is_number()) {
        throw ScenarioError("field '" + field + "' contains a non-numeric entry");
      }
      M(i, j) = row[static_cast<size_t>(j)].get<double>();
    }
  }
  return M;
}

Vector vector_from_json(const json& node, int size, const std::string& field) {
  if (!node.is_array() || static_cast<int>(node.size()) != size) {
    throw ScenarioError("field '" + field + "' must be an array of length " +
                        std::to_string(size));
  }
  Vector v(size);
  for (int i = 0; i < size; ++i) {
    if (!node[static_cast<size_t>(i)].is_number()) {
      throw ScenarioError("field '" + field + "' contains a non-numeric entry");
    }
    v(i) = node[static_cast<size_t>(i)].get<double>();
  }
  return v;
}

const json& require_field(const json& node, const char* field) {
  auto it = node.find(field);
  if (it == node.end()) throw ScenarioError(std::string("missing field '") + field + "'");
  return *it;
}

std::array<double, 2> interval_from_json(const json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw ScenarioError("field '" + field + "' must be a [lo, hi] pair");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

void read_settings(const json& node, Scenario& scenario) {
  if (node.contains("dt")) scenario.settings.dt = node["dt"].get<double>();
  if (node.contains("t_end")) scenario.settings.t_end = node["t_end"].get<double>();
  if (node.contains("record_every")) {
    scenario.settings.record_every = node["record_every"].get<int>();
  }
  if (node.contains("clamp_tolerance")) {
    scenario.settings.clamp_tolerance = node["clamp_tolerance"].get<double>();
  }
  if (node.contains("record")) {
    scenario.record.clear();
    for (const auto& entry : node["record"]) {
      scenario.record.push_back(entry.get<std::string>());
    }
  }
  if (node.contains("wavg_anchor")) scenario.wavg_anchor = node["wavg_anchor"].get<double>();
}

json scenario_to_json(const Scenario& scenario) {
  json node;
  node["n"] = scenario.params.n;
  node["m"] = scenario.params.m;
  node["beta"] = matrix_to_json(scenario.params.beta);
  node["beta_w"] = matrix_to_json(scenario.params.beta_w);
  node["c_w"] = matrix_to_json(scenario.params.c_w);
  node["alpha"] = matrix_to_json(scenario.params.alpha);
  node["gamma"] = vector_to_json(scenario.params.gamma);
  node["gamma_w"] = vector_to_json(scenario.params.gamma_w);
  node["s0"] = vector_to_json(scenario.initial.s);
  node["x0"] = vector_to_json(scenario.initial.x);
  node["w0"] = vector_to_json(scenario.initial.w);
  node["dt"] = scenario.settings.dt;
  node["t_end"] = scenario.settings.t_end;
  node["record_every"] = scenario.settings.record_every;
  node["clamp_tolerance"] = scenario.settings.clamp_tolerance;
  node["record"] = scenario.record;
  node["wavg_anchor"] = scenario.wavg_anchor;
  if (scenario.seed) node["seed"] = *scenario.seed;
  return node;
}

Scenario scenario_from_json(const json& node) {
  if (node.contains("generate")) {
    const json& gen = node["generate"];
    GeneratorSpec spec;
    if (gen.contains("n")) spec.n = gen["n"].get<int>();
    if (gen.contains("m")) spec.m = gen["m"].get<int>();
    if (gen.contains("intervals")) {
      const json& iv = gen["intervals"];
      if (iv.contains("gamma")) spec.gamma_interval = interval_from_json(iv["gamma"], "intervals.gamma");
      if (iv.contains("gamma_w")) spec.gamma_w_interval = interval_from_json(iv["gamma_w"], "intervals.gamma_w");
      if (iv.contains("beta")) spec.beta_interval = interval_from_json(iv["beta"], "intervals.beta");
      if (iv.contains("beta_w")) spec.beta_w_interval = interval_from_json(iv["beta_w"], "intervals.beta_w");
      if (iv.contains("alpha")) spec.alpha_interval = interval_from_json(iv["alpha"], "intervals.alpha");
      if (iv.contains("w0")) spec.w0_interval = interval_from_json(iv["w0"], "intervals.w0");
    }
    if (gen.contains("c_w_offset")) spec.c_w_offset = gen["c_w_offset"].get<double>();
    if (gen.contains("s0")) spec.s0 = gen["s0"].get<double>();
    if (!gen.contains("seed")) throw ScenarioError("missing field 'generate.seed'");
    Scenario scenario = generate_scenario(spec, gen["seed"].get<std::uint64_t>());
    read_settings(node, scenario);
    return scenario;
  }

  const int n = require_field(node, "n").get<int>();
  const int m = require_field(node, "m").get<int>();
  if (n < 1 || m < 1) throw ScenarioError("fields 'n' and 'm' must be positive");

  Scenario scenario;
  try {
    scenario.params = ModelParams::make(
        matrix_from_json(require_field(node, "beta"), n, n, "beta"),
        matrix_from_json(require_field(node, "beta_w"), n, m, "beta_w"),
        matrix_from_json(require_field(node, "c_w"), m, n, "c_w"),
        matrix_from_json(require_field(node, "alpha"), m, m, "alpha"),
        vector_from_json(require_field(node, "gamma"), n, "gamma"),
        vector_from_json(require_field(node, "gamma_w"), m, "gamma_w"));
  } catch (const std::invalid_argument& error) {
    throw ScenarioError(error.what());
  }
  scenario.initial.s = vector_from_json(require_field(node, "s0"), n, "s0");
  scenario.initial.x = vector_from_json(require_field(node, "x0"), n, "x0");
  scenario.initial.r = Vector::Ones(n) - scenario.initial.s - scenario.initial.x;
  scenario.initial.w = vector_from_json(require_field(node, "w0"), m, "w0");
  if (node.contains("seed")) scenario.seed = node["seed"].get<std::uint64_t>();
  read_settings(node, scenario);
  return scenario;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.good()) {
    throw std::runtime_error("failed to write '" + path.string() + "'");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    throw ScenarioError("cannot open '" + path.string() + "'");
  }
  json node;
  try {
    in >> node;
  } catch (const json::parse_error& error) {
    throw ScenarioError("cannot parse '" + path.string() + "': " + error.what());
  }
  return node;
}

}  // namespace

Scenario generate_scenario(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.m < 1) throw ScenarioError("generator needs n >= 1 and m >= 1");
  auto ordered = [](const std::array<double, 2>& interval) {
    return interval[0] <= interval[1];
  };
  if (!ordered(spec.gamma_interval) || !ordered(spec.gamma_w_interval) ||
      !ordered(spec.beta_interval) || !ordered(spec.beta_w_interval) ||
      !ordered(spec.alpha_interval) || !ordered(spec.w0_interval)) {
    throw ScenarioError("generator intervals must satisfy lo <= hi");
  }
  if (!(spec.gamma_interval[0] > 0.0)) {
    throw ScenarioError("gamma interval must be strictly positive");
  }
  if (spec.beta_interval[0] < 0.0 || spec.beta_w_interval[0] < 0.0 ||
      spec.alpha_interval[0] < 0.0 || spec.w0_interval[0] < 0.0) {
    throw ScenarioError("rate intervals must be nonnegative");
  }
  if (!(spec.s0 > 0.0 && spec.s0 <= 1.0)) {
    throw ScenarioError("s0 must lie in (0, 1]");
  }

  // One splitmix64 stream of sub-seeds, consumed in a fixed order; every
  // retry advances the same stream, so a seed pins the whole scenario.
  std::uint64_t stream = seed;
  for (int attempt = 0; attempt < std::max(1, spec.max_retries); ++attempt) {
    const std::uint64_t beta_seed = splitmix64_next(stream);
    const std::uint64_t beta_w_seed = splitmix64_next(stream);
    const std::uint64_t alpha_seed = splitmix64_next(stream);
    const std::uint64_t gamma_seed = splitmix64_next(stream);
    const std::uint64_t gamma_w_seed = splitmix64_next(stream);
    const std::uint64_t w0_seed = splitmix64_next(stream);

    const Matrix beta = random_matrix(spec.n, spec.n, spec.beta_interval, beta_seed);
    const Matrix beta_w = random_matrix(spec.n, spec.m, spec.beta_w_interval, beta_w_seed);
    Matrix alpha = random_matrix(spec.m, spec.m, spec.alpha_interval, alpha_seed);
    alpha.diagonal().setZero();  // self-flow has no net effect
    const Matrix c_w =
        beta_w.transpose() - Matrix::Constant(spec.m, spec.n, spec.c_w_offset);
    const Vector gamma = random_vector(spec.n, spec.gamma_interval, gamma_seed);
    const Vector gamma_w = random_vector(spec.m, spec.gamma_w_interval, gamma_w_seed);

    ModelParams params = ModelParams::make(beta, beta_w, c_w, alpha, gamma, gamma_w);
    if (!validate_params(params).empty()) continue;

    Scenario scenario;
    scenario.params = std::move(params);
    scenario.initial.s = Vector::Constant(spec.n, spec.s0);
    scenario.initial.x = Vector::Constant(spec.n, 1.0 - spec.s0);
    scenario.initial.r = Vector::Zero(spec.n);
    scenario.initial.w = random_vector(spec.m, spec.w0_interval, w0_seed);
    scenario.seed = seed;
    return scenario;
  }
  throw ScenarioError("no admissible scenario after " + std::to_string(spec.max_retries) +
                      " attempts from seed " + std::to_string(seed));
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path));
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  write_text(path, scenario_to_json(scenario).dump(2) + "\n");
}

std::string scenario_hash(const Scenario& scenario) {
  const std::string canonical = scenario_to_json(scenario).dump();
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (const unsigned char byte : canonical) {
    hash ^= byte;
    hash *= 0x100000001B3ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a-%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

namespace {

// Fixed column families, in CSV order, for whichever scalars are recorded.
std::vector<std::string> scalar_columns(const Trajectory& trajectory) {
  std::vector<std::string> names;
  auto has = [&trajectory](const std::string& name) {
    return trajectory.scalars.count(name) > 0;
  };
  if (has("R")) names.push_back("R");
  if (has("lambda_max")) names.push_back("lambda_max");
  for (int i = 1; has("lern_" + std::to_string(i)); ++i) {
    names.push_back("lern_" + std::to_string(i));
  }
  if (has("wavg")) names.push_back("wavg");
  for (const auto& [name, values] : trajectory.scalars) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      names.push_back(name);
    }
  }
  return names;
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  const int n = trajectory.n();
  const int m = trajectory.m();
  std::ostringstream out;
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",s_" << i;
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= n; ++i) out << ",r_" << i;
  for (int j = 1; j <= m; ++j) out << ",w_" << j;
  const auto scalars = scalar_columns(trajectory);
  for (const auto& name : scalars) out << "," << name;
  out << "\n";

  for (size_t k = 0; k < trajectory.states.size(); ++k) {
    const State& state = trajectory.states[k];
    out << format_sig(trajectory.times[k]);
    for (int i = 0; i < n; ++i) out << "," << format_sig(state.s(i));
    for (int i = 0; i < n; ++i) out << "," << format_sig(state.x(i));
    for (int i = 0; i < n; ++i) out << "," << format_sig(state.r(i));
    for (int j = 0; j < m; ++j) out << "," << format_sig(state.w(j));
    for (const auto& name : scalars) {
      const double value = trajectory.scalars.at(name)[k];
      out << ",";
      if (!std::isnan(value)) out << format_sig(value);
    }
    out << "\n";
  }
  return out.str();
}

json trace_to_json(const std::vector<double>& values) {
  json arr = json::array();
  for (const double value : values) {
    if (std::isnan(value)) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(round_sig(value));
    }
  }
  return arr;
}

std::string trajectory_to_json_text(const Trajectory& trajectory) {
  const int n = trajectory.n();
  const int m = trajectory.m();
  json node;
  node["n"] = n;
  node["m"] = m;
  node["times"] = trace_to_json(trajectory.times);
  json s = json::array(), x = json::array(), r = json::array(), w = json::array();
  for (const State& state : trajectory.states) {
    s.push_back(trace_to_json(std::vector<double>(state.s.data(), state.s.data() + n)));
    x.push_back(trace_to_json(std::vector<double>(state.x.data(), state.x.data() + n)));
    r.push_back(trace_to_json(std::vector<double>(state.r.data(), state.r.data() + n)));
    w.push_back(trace_to_json(std::vector<double>(state.w.data(), state.w.data() + m)));
  }
  node["s"] = std::move(s);
  node["x"] = std::move(x);
  node["r"] = std::move(r);
  node["w"] = std::move(w);
  json scalars;
  for (const auto& name : scalar_columns(trajectory)) {
    scalars[name] = trace_to_json(trajectory.scalars.at(name));
  }
  node["scalars"] = std::move(scalars);
  return node.dump(2) + "\n";
}

json witness_to_json(const Witness& witness) {
  return {{"time", round_sig(witness.time)},
          {"subject", witness.subject},
          {"observed", round_sig(witness.observed)},
          {"bound", round_sig(witness.bound)}};
}

json theorems_to_json(const std::vector<TheoremReport>& reports) {
  json arr = json::array();
  for (const auto& report : reports) {
    json node;
    node["claim"] = report.claim;
    node["verdict"] = to_string(report.verdict);
    json witnesses = json::array();
    for (const auto& witness : report.witnesses) witnesses.push_back(witness_to_json(witness));
    node["witnesses"] = std::move(witnesses);
    node["tolerances"] = report.tolerances;
    node["note"] = report.note;
    arr.push_back(std::move(node));
  }
  return arr;
}

json optional_to_json(const std::optional<double>& value) {
  if (!value || std::isnan(*value)) return nullptr;
  return round_sig(*value);
}

json peak_to_json(const PeakReport& peak) {
  json node;
  node["tau_p"] = optional_to_json(peak.tau_p);
  node["weighted_average_peak_time"] = optional_to_json(peak.weighted_average_peak_time);
  node["agreement_gap"] = optional_to_json(peak.agreement_gap);
  node["corollary1_regime"] = peak.corollary1_regime;
  node["per_node_peak_times"] = trace_to_json(peak.per_node_peak_times);
  json crossings = json::array();
  for (const auto& times : peak.per_node_lern_crossings) crossings.push_back(trace_to_json(times));
  node["per_node_lern_crossings"] = std::move(crossings);
  node["population_peak_lern_gaps"] = trace_to_json(peak.population_peak_lern_gaps);
  return node;
}

json reproduction_series_to_json(const Scenario& scenario, const Trajectory& trajectory) {
  json series = json::array();
  const auto r_it = trajectory.scalars.find("R");
  const int total = scenario.params.total_nodes();
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    json entry;
    entry["t"] = round_sig(trajectory.times[k]);
    if (r_it != trajectory.scalars.end()) entry["global_R"] = round_sig(r_it->second[k]);
    json locals = json::array();
    bool have_locals = false;
    for (int i = 1; i <= total; ++i) {
      auto it = trajectory.scalars.find("lern_" + std::to_string(i));
      if (it == trajectory.scalars.end()) break;
      have_locals = true;
      const double value = it->second[k];
      if (std::isnan(value)) {
        locals.push_back(nullptr);
      } else {
        locals.push_back(round_sig(value));
      }
    }
    if (have_locals) entry["lern"] = std::move(locals);
    series.push_back(std::move(entry));
  }
  json node;
  node["series"] = std::move(series);
  if (!trajectory.states.empty()) {
    Matrix matrix = reproduction_matrix(scenario.params, trajectory.states.front());
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < matrix.cols(); ++j) matrix(i, j) = round_sig(matrix(i, j));
    }
    node["matrix_R_t0"] = matrix_to_json(matrix);
  }
  return node;
}

}  // namespace

RunArtifacts export_run(const std::filesystem::path& dir, const Scenario& scenario,
                        const Trajectory& trajectory,
                        const std::vector<TheoremReport>& theorems, const PeakReport& peak,
                        const std::string& format) {
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be 'csv' or 'json'");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  RunArtifacts artifacts;
  artifacts.trajectory = dir / (format == "csv" ? "trajectory.csv" : "trajectory.json");
  artifacts.reproduction_series = dir / "reproduction.json";
  artifacts.theorem_report = dir / "theorem_report.json";
  artifacts.peak_report = dir / "peak_report.json";
  artifacts.manifest = dir / "manifest.json";
  artifacts.scenario_resolved = dir / "scenario_resolved.json";

  write_text(artifacts.trajectory, format == "csv" ? trajectory_to_csv(trajectory)
                                                   : trajectory_to_json_text(trajectory));
  write_text(artifacts.reproduction_series,
             reproduction_series_to_json(scenario, trajectory).dump(2) + "\n");
  write_text(artifacts.theorem_report, theorems_to_json(theorems).dump(2) + "\n");
  write_text(artifacts.peak_report, peak_to_json(peak).dump(2) + "\n");
  save_scenario(scenario, artifacts.scenario_resolved);

  json manifest;
  if (scenario.seed) {
    manifest["seed"] = *scenario.seed;
  } else {
    manifest["seed"] = nullptr;
  }
  manifest["scenario_hash"] = scenario_hash(scenario);
  manifest["tool_version"] = kVersion;
  manifest["files"] = {{"trajectory", artifacts.trajectory.filename().string()},
                       {"reproduction", artifacts.reproduction_series.filename().string()},
                       {"theorem_report", artifacts.theorem_report.filename().string()},
                       {"peak_report", artifacts.peak_report.filename().string()},
                       {"scenario", artifacts.scenario_resolved.filename().string()}};
  write_text(artifacts.manifest, manifest.dump(2) + "\n");
  return artifacts;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

Trajectory trajectory_from_csv(const std::filesystem::path& path, int n, int m) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory in '" + path.string() + "'");
  const auto header = split_csv_line(line);
  const size_t state_columns = 1 + static_cast<size_t>(3 * n + m);
  if (header.size() < state_columns || header[0] != "t") {
    throw std::runtime_error("unexpected trajectory header in '" + path.string() + "'");
  }

  Trajectory trajectory;
  std::vector<std::string> scalar_names(header.begin() + static_cast<long>(state_columns),
                                        header.end());
  for (const auto& name : scalar_names) trajectory.scalars[name] = {};

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("ragged trajectory row in '" + path.string() + "'");
    }
    State state;
    state.s.resize(n);
    state.x.resize(n);
    state.r.resize(n);
    state.w.resize(m);
    size_t at = 0;
    auto next = [&fields, &at]() {
      const std::string& field = fields[at++];
      return field.empty() ? kNaN : std::strtod(field.c_str(), nullptr);
    };
    const double t = next();
    for (int i = 0; i < n; ++i) state.s(i) = next();
    for (int i = 0; i < n; ++i) state.x(i) = next();
    for (int i = 0; i < n; ++i) state.r(i) = next();
    for (int j = 0; j < m; ++j) state.w(j) = next();
    state.t = t;
    trajectory.times.push_back(t);
    trajectory.states.push_back(std::move(state));
    for (const auto& name : scalar_names) trajectory.scalars[name].push_back(next());
  }
  return trajectory;
}

Trajectory trajectory_from_json(const std::filesystem::path& path, int n, int m) {
  const json node = read_json_file(path);
  Trajectory trajectory;
  const auto& times = require_field(node, "times");
  const size_t samples = times.size();
  for (size_t k = 0; k < samples; ++k) {
    trajectory.times.push_back(times[k].get<double>());
    State state;
    state.t = trajectory.times.back();
    state.s = vector_from_json(node["s"][k], n, "s");
    state.x = vector_from_json(node["x"][k], n, "x");
    state.r = vector_from_json(node["r"][k], n, "r");
    state.w = vector_from_json(node["w"][k], m, "w");
    trajectory.states.push_back(std::move(state));
  }
  if (node.contains("scalars")) {
    for (const auto& [name, values] : node["scalars"].items()) {
      std::vector<double> trace;
      for (const auto& value : values) {
        trace.push_back(value.is_null() ? kNaN : value.get<double>());
      }
      trajectory.scalars[name] = std::move(trace);
    }
  }
  return trajectory;
}

}  // namespace

Trajectory import_trajectory(const std::filesystem::path& dir, int n, int m) {
  const auto csv = dir / "trajectory.csv";
  const auto jsn = dir / "trajectory.json";
  if (std::filesystem::exists(csv)) return trajectory_from_csv(csv, n, m);
  if (std::filesystem::exists(jsn)) return trajectory_from_json(jsn, n, m);
  throw std::runtime_error("no trajectory file under '" + dir.string() + "'");
}

}  // namespace multisir
