#include "multisir/reproduction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "multisir/spectral.hpp"

namespace multisir {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_node(int index, int bound, const char* what) {
  if (index < 0 || index >= bound) {
    throw std::invalid_argument(std::string(what) + " index " + std::to_string(index) +
                                " out of range [0, " + std::to_string(bound) + ")");
  }
}

}  // namespace

double global_R(const ModelParams& params, const State& state) {
  return spectral_radius(next_generation_matrix(params, state.s));
}

std::optional<double> drn_population(const ModelParams& params, const State& state,
                                     int i, int j) {
  check_node(i, params.n, "population");
  check_node(j, params.total_nodes(), "node");
  if (!(state.x(i) > kDefinednessEps)) return std::nullopt;
  const double incoming = (j < params.n) ? params.beta(i, j) * state.x(j)
                                         : params.beta_w(i, j - params.n) * state.w(j - params.n);
  return state.s(i) * incoming / (params.gamma(i) * state.x(i));
}

std::optional<double> drn_infrastructure(const ModelParams& params, const State& state,
                                         int j, int k) {
  check_node(j, params.m, "resource");
  check_node(k, params.total_nodes(), "node");
  if (!(state.w(j) > kDefinednessEps)) return std::nullopt;
  // Resource sources use the net flows of a_w (zero self term), so the local
  // thresholds stay aligned with the contamination dynamics for any alpha.
  const double incoming = (k < params.n)
                              ? params.c_w(j, k) * state.x(k)
                              : params.b_f(params.n + j, k) * state.w(k - params.n);
  return incoming / (params.resource_removal_rate(j) * state.w(j));
}

std::optional<double> drn(const ModelParams& params, const State& state, int i, int j) {
  check_node(i, params.total_nodes(), "node");
  if (i < params.n) return drn_population(params, state, i, j);
  return drn_infrastructure(params, state, i - params.n, j);
}

std::optional<double> lern(const ModelParams& params, const State& state, int i) {
  check_node(i, params.total_nodes(), "node");
  if (i < params.n) {
    if (!(state.x(i) > kDefinednessEps)) return std::nullopt;
    const double incoming =
        params.beta.row(i).dot(state.x) + params.beta_w.row(i).dot(state.w);
    return state.s(i) * incoming / (params.gamma(i) * state.x(i));
  }
  const int j = i - params.n;
  if (!(state.w(j) > kDefinednessEps)) return std::nullopt;
  const double incoming = params.c_w.row(j).dot(state.x) +
                          params.b_f.row(i).tail(params.m).dot(state.w);
  return incoming / (params.resource_removal_rate(j) * state.w(j));
}

Vector lern_vector(const ModelParams& params, const State& state) {
  Vector values(params.total_nodes());
  for (int i = 0; i < params.total_nodes(); ++i) {
    values(i) = lern(params, state, i).value_or(kNaN);
  }
  return values;
}

Matrix reproduction_matrix(const ModelParams& params, const State& state) {
  const int n = params.n;
  const int m = params.m;
  Matrix R(n + m, n + m);
  for (int i = 0; i < n; ++i) {
    const double factor = state.s(i) / params.gamma(i);
    for (int j = 0; j < n; ++j) R(i, j) = factor * params.beta(i, j);
    for (int j = 0; j < m; ++j) R(i, n + j) = factor * params.beta_w(i, j);
  }
  for (int j = 0; j < m; ++j) {
    const double removal = params.resource_removal_rate(j);
    for (int k = 0; k < n; ++k) R(n + j, k) = params.c_w(j, k) / removal;
    for (int k = 0; k < m; ++k) {
      R(n + j, n + k) = (k == j) ? 0.0 : params.alpha(k, j) / removal;
    }
  }
  return R;
}

double pairwise_infection_derivative(const ModelParams& params, const State& state,
                                     int i, int j, int k) {
  check_node(i, params.n, "population");
  check_node(j, params.n, "population");
  check_node(k, params.m, "resource");
  return state.s(i) * (params.beta(i, j) * state.x(j) + params.beta_w(i, k) * state.w(k)) -
         params.gamma(i) * state.x(i);
}

ReproductionReport reproduction_report(const ModelParams& params, const State& state) {
  ReproductionReport report;
  report.t = state.t;
  report.global_R = global_R(params, state);
  report.matrix_R = reproduction_matrix(params, state);
  report.lern = lern_vector(params, state);
  const Vector z = state.z();
  report.drn_defined.resize(static_cast<size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    report.drn_defined[static_cast<size_t>(i)] = z(i) > kDefinednessEps;
  }
  return report;
}

}  // namespace multisir
