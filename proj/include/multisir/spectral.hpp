#pragma once

#include <stdexcept>

#include "multisir/common.hpp"

namespace multisir {

struct PowerOptions {
  double rel_tol = 1e-12;    ///< residual target, relative to the inf-norm
  double accept_tol = 1e-8;  ///< best-effort acceptance level on stall/cap
  int max_iterations = 100000;
};

/// Thrown when power iteration fails to reach even the best-effort residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), last_residual(residual), iterations(iterations) {}
  double last_residual;
  int iterations;
};

/// Dominant eigenvalue and right eigenvector of a nonnegative matrix.
struct PerronPair {
  double value = 0.0;
  Vector right_vector;  ///< nonnegative, unit 1-norm
  int iterations = 0;
  double residual = 0.0;
};

/// Dominant (rightmost) eigenvalue of a Metzler matrix with its positive
/// left eigenvector.
struct DominantPair {
  double value = 0.0;
  Vector left_vector;  ///< nonnegative, unit 1-norm
  int iterations = 0;
  double residual = 0.0;  ///< ||v^T M - value v^T||_inf at return
};

/// Power iteration on a square entrywise-nonnegative matrix. Returns the
/// spectral radius with the converged right vector. A warm-start vector (from
/// a nearby matrix) cuts the iteration count considerably along trajectories.
PerronPair perron_dominant(const Matrix& M, const Vector* warm_start = nullptr,
                           const PowerOptions& options = {});

/// Spectral radius of a square nonnegative matrix.
double spectral_radius(const Matrix& M, const Vector* warm_start = nullptr,
                       const PowerOptions& options = {});

/// Dominant eigenvalue/left-eigenvector pair of a Metzler matrix, computed by
/// shifting: power-iterate (M + cI)^T with c = 1 + max_i |M_ii| so the shifted
/// matrix is nonnegative, then subtract c from the converged value.
DominantPair dominant_metzler(const Matrix& M, const Vector* warm_start = nullptr,
                              const PowerOptions& options = {});

/// True iff the digraph with an edge i -> j for every pattern(i,j) = true is
/// strongly connected. Two DFS passes, forward and transposed, from node 0.
bool is_strongly_connected(const BoolMatrix& pattern);

/// Boolean pattern of strictly positive entries.
BoolMatrix positive_pattern(const Matrix& M);

}  // namespace multisir
