#pragma once

#include <optional>
#include <vector>

#include "multisir/model.hpp"

namespace multisir {

/// Definedness threshold for the x_i > 0 / w_j > 0 preconditions of the
/// per-node reproduction numbers. Below it the ratios are reported as
/// undefined instead of as huge unstable values.
inline constexpr double kDefinednessEps = 1e-12;

/// All reproduction-number objects at one instant.
struct ReproductionReport {
  double t = 0.0;
  double global_R = 0.0;          ///< rho(H(s) D_f^{-1} B_f)
  Matrix matrix_R;                ///< (n+m) x (n+m) unscaled pairwise numbers
  Vector lern;                    ///< per-node local numbers; NaN where undefined
  std::vector<bool> drn_defined;  ///< node state above the definedness threshold
};

/// Global effective reproduction number rho(H(s(t)) D_f^{-1} B_f), evaluated
/// on the literal matrix product.
double global_R(const ModelParams& params, const State& state);

/// Pairwise number of population node i (local index) against any node j
/// (global index: j < n population, j >= n resource). Undefined when
/// x_i is below the definedness threshold.
std::optional<double> drn_population(const ModelParams& params, const State& state,
                                     int i, int j);

/// Pairwise number of resource node j (local index) against any node k
/// (global index). Sources are the shedding rates for population nodes and
/// the net inter-resource flows for resource nodes, so the self term is zero.
/// Undefined when w_j is below the definedness threshold.
std::optional<double> drn_infrastructure(const ModelParams& params, const State& state,
                                         int j, int k);

/// Pairwise number for any ordered node pair, both indices global.
std::optional<double> drn(const ModelParams& params, const State& state, int i, int j);

/// Local effective reproduction number of node i (global index): the sum of
/// its pairwise numbers over all nodes, population sources first.
std::optional<double> lern(const ModelParams& params, const State& state, int i);

/// All local numbers at once; NaN marks undefined entries.
Vector lern_vector(const ModelParams& params, const State& state);

/// The (n+m) x (n+m) matrix of unscaled pairwise numbers, built from the
/// closed-form blocks:
///   population rows:  s_i beta(i,j) / gamma_i   and   s_i beta_w(i,j) / gamma_i
///   resource rows:    c_w(j,k) / d_j            and   flow(k -> j) / d_j
/// with d_j = gamma_w_j - a_w(j,j). Equals H(s) D_f^{-1} B_f, which is kept
/// as the independent cross-check route, never used here.
Matrix reproduction_matrix(const ModelParams& params, const State& state);

/// Growth rate of the infected proportion of population node i attributed to
/// the pair (population j, resource k), both local indices:
///   s_i (beta(i,j) x_j + beta_w(i,k) w_k) - gamma_i x_i.
double pairwise_infection_derivative(const ModelParams& params, const State& state,
                                     int i, int j, int k);

/// Full report at one instant.
ReproductionReport reproduction_report(const ModelParams& params, const State& state);

}  // namespace multisir
