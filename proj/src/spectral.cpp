#include "multisir/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace multisir {

namespace {

Vector uniform_start(Eigen::Index size) {
  return Vector::Constant(size, 1.0 / static_cast<double>(size));
}

// Shared power iteration core for entrywise-nonnegative matrices. The iterate
// stays in the nonnegative simplex (unit 1-norm), the eigenvalue estimate is
// ||M v||_1, and convergence is judged by the residual ||M v - lambda v||_inf
// relative to ||M||_inf. When the residual stalls below the best-effort level
// (reducible or near-degenerate spectra), the current estimate is accepted.
PerronPair iterate_nonnegative(const Matrix& M, const Vector* warm_start,
                               const PowerOptions& options) {
  const Eigen::Index size = M.rows();
  if (size == 0 || M.cols() != size) {
    throw std::invalid_argument("power iteration requires a nonempty square matrix");
  }
  if (M.minCoeff() < 0.0) {
    throw std::invalid_argument("power iteration requires a nonnegative matrix");
  }

  const double scale = M.cwiseAbs().rowwise().sum().maxCoeff();
  if (scale == 0.0) {
    return {0.0, uniform_start(size), 0, 0.0};
  }

  Vector v = uniform_start(size);
  if (warm_start != nullptr && warm_start->size() == size &&
      warm_start->minCoeff() >= 0.0 && warm_start->sum() > 0.0) {
    // Blend with the uniform vector so a warm start with zero entries cannot
    // pin the iterate inside an invariant subspace.
    v = 0.9 * (*warm_start / warm_start->lpNorm<1>()) + 0.1 * uniform_start(size);
  }

  const double target = options.rel_tol * scale;
  const double acceptable = options.accept_tol * scale;
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  double best_residual = residual;
  int stalled = 0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    Vector image = M * v;
    const double mass = image.lpNorm<1>();
    if (mass == 0.0) {
      return {0.0, v, it, 0.0};  // v reached the kernel: rho contribution is 0
    }
    lambda = mass;  // ||v||_1 == 1 and image >= 0
    residual = (image - lambda * v).lpNorm<Eigen::Infinity>();
    v = image / mass;
    if (residual <= target) {
      return {lambda, v, it, residual};
    }
    if (residual < 0.999 * best_residual) {
      best_residual = residual;
      stalled = 0;
    } else if (++stalled >= 512 && residual <= acceptable) {
      return {lambda, v, it, residual};
    }
  }
  if (residual <= acceptable) {
    return {lambda, v, options.max_iterations, residual};
  }
  throw ConvergenceError("power iteration did not converge: residual " +
                             std::to_string(residual) + " after " +
                             std::to_string(options.max_iterations) + " iterations",
                         residual, options.max_iterations);
}

}  // namespace

PerronPair perron_dominant(const Matrix& M, const Vector* warm_start,
                           const PowerOptions& options) {
  return iterate_nonnegative(M, warm_start, options);
}

double spectral_radius(const Matrix& M, const Vector* warm_start,
                       const PowerOptions& options) {
  return iterate_nonnegative(M, warm_start, options).value;
}

DominantPair dominant_metzler(const Matrix& M, const Vector* warm_start,
                              const PowerOptions& options) {
  const Eigen::Index size = M.rows();
  if (size == 0 || M.cols() != size) {
    throw std::invalid_argument("dominant_metzler requires a nonempty square matrix");
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (i != j && M(i, j) < 0.0) {
        throw std::invalid_argument("dominant_metzler requires a Metzler matrix");
      }
    }
  }

  // Shift into the nonnegative cone, iterate on the transpose to get the left
  // eigenvector, and shift the eigenvalue back.
  const double shift = 1.0 + M.diagonal().cwiseAbs().maxCoeff();
  Matrix shifted = M.transpose();
  shifted.diagonal().array() += shift;

  PerronPair pair = iterate_nonnegative(shifted, warm_start, options);
  DominantPair result;
  result.value = pair.value - shift;
  result.left_vector = std::move(pair.right_vector);
  result.iterations = pair.iterations;
  result.residual =
      (M.transpose() * result.left_vector - result.value * result.left_vector)
          .lpNorm<Eigen::Infinity>();
  return result;
}

BoolMatrix positive_pattern(const Matrix& M) {
  return (M.array() > 0.0).matrix();
}

bool is_strongly_connected(const BoolMatrix& pattern) {
  const Eigen::Index size = pattern.rows();
  if (pattern.cols() != size) {
    throw std::invalid_argument("pattern must be square");
  }
  if (size <= 1) return true;

  auto reaches_all = [size](auto&& edge) {
    std::vector<char> seen(static_cast<size_t>(size), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const Eigen::Index at = stack.back();
      stack.pop_back();
      for (Eigen::Index next = 0; next < size; ++next) {
        if (!seen[static_cast<size_t>(next)] && edge(at, next)) {
          seen[static_cast<size_t>(next)] = 1;
          ++count;
          stack.push_back(next);
        }
      }
    }
    return count == size;
  };

  return reaches_all([&pattern](Eigen::Index a, Eigen::Index b) { return pattern(a, b); }) &&
         reaches_all([&pattern](Eigen::Index a, Eigen::Index b) { return pattern(b, a); });
}

}  // namespace multisir
