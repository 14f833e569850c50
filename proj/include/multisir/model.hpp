#pragma once

#include <string>
#include <vector>

#include "multisir/common.hpp"

namespace multisir {

/// Derived block matrices of the coupled two-layer dynamics.
struct Blocks {
  Matrix a_w;  ///< m x m net inter-resource exchange; columns sum to zero
  Matrix b_f;  ///< (n+m) x (n+m) stacked transmission couplings
  Matrix d_f;  ///< (n+m) x (n+m) diagonal removal rates (positive diagonal)
};

/// Parameters of the two-layer contagion model: a population network of n
/// groups with SIR dynamics coupled to an infrastructure network of m
/// resource nodes that carry a contamination level.
///
/// Rate matrix conventions:
///   beta(i,j)    person-to-person transmission into group i from group j
///   beta_w(i,j)  pickup by group i from resource j
///   c_w(j,k)     shedding by group k into resource j
///   alpha(j,k)   raw pathogen flow from resource j to resource k
///
/// The derived blocks (a_w, b_f, d_f) are assembled once at construction and
/// kept alongside the raw rates.
struct ModelParams {
  int n = 0;  ///< population nodes
  int m = 0;  ///< resource nodes

  Matrix beta;     // n x n
  Matrix beta_w;   // n x m
  Matrix c_w;      // m x n
  Matrix alpha;    // m x m
  Vector gamma;    // n, healing rates
  Vector gamma_w;  // m, contamination decay rates

  Matrix a_w;  // m x m
  Matrix b_f;  // (n+m) x (n+m)
  Matrix d_f;  // (n+m) x (n+m), diagonal

  /// Builds params from raw rates, assembling the derived blocks.
  /// Throws std::invalid_argument on dimension mismatch.
  static ModelParams make(const Matrix& beta, const Matrix& beta_w,
                          const Matrix& c_w, const Matrix& alpha,
                          const Vector& gamma, const Vector& gamma_w);

  int total_nodes() const { return n + m; }

  /// Total removal rate of resource node j: gamma_w[j] - a_w(j,j).
  double resource_removal_rate(int j) const { return d_f(n + j, n + j); }
};

/// Instantaneous state: per-group susceptible/infected/recovered proportions
/// and per-resource contamination levels.
struct State {
  Vector s;  // n
  Vector x;  // n
  Vector r;  // n
  Vector w;  // m
  double t = 0.0;

  /// Stacked infection vector (x; w).
  Vector z() const;

  /// State with no infection or contamination and r = 1 - s0.
  static State healthy(const Vector& s0, int m);
};

/// Worst violation of the state box constraints: negative components,
/// components above one, |s+x+r-1| per group, negative contamination.
double max_invariant_violation(const State& state);

struct StateDerivative {
  Vector ds, dx, dr, dw;
};

struct ValidationIssue {
  std::string condition;
  std::string detail;
};

/// Assembles (a_w, b_f, d_f) from raw rates. The a_w convention is fixed by
/// requiring the resource dynamics to hold verbatim: the coefficient of w_k
/// in dw_j/dt is alpha(k,j) for k != j and alpha(j,j) - sum_k alpha(j,k) for
/// k = j. Column sums of a_w are checked to vanish.
Blocks assemble_blocks(const Matrix& beta, const Matrix& beta_w,
                       const Matrix& c_w, const Matrix& alpha,
                       const Vector& gamma, const Vector& gamma_w);

/// Checks the admissibility conditions on the rates: positive healing rates,
/// nonnegative transmission rates, positive total resource removal, layer
/// coupling, and irreducibility of beta and alpha (strong connectivity of
/// their positive patterns). Returns one issue per violated condition;
/// an empty report means the parameters are admissible.
std::vector<ValidationIssue> validate_params(const ModelParams& params);

/// Right-hand side of the model in component form.
StateDerivative derivative(const ModelParams& params, const State& state);

/// Right-hand side of the stacked infection vector, dz = (H(s) B_f - D_f) z.
/// Agrees with `derivative` on (dx, dw); kept as a cross-check of the block
/// assembly.
Vector derivative_compact(const ModelParams& params, const State& state);

/// H(s) B_f - D_f, the Metzler matrix governing the stacked dynamics.
Matrix generator_matrix(const ModelParams& params, const Vector& s);

/// H(s) D_f^{-1} B_f, evaluated as a literal matrix product.
Matrix next_generation_matrix(const ModelParams& params, const Vector& s);

}  // namespace multisir
