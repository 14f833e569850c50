#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "multisir/spectral.hpp"

using namespace multisir;

namespace {

Matrix random_positive_matrix(int size, std::uint64_t seed, double lo = 0.05,
                              double hi = 1.0) {
  std::mt19937_64 rng(seed);
  Matrix M(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      M(i, j) = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    }
  }
  return M;
}

// Independent oracle: all-pairs reachability by boolean closure.
bool strongly_connected_by_closure(const BoolMatrix& pattern) {
  const Eigen::Index size = pattern.rows();
  std::vector<std::vector<bool>> reach(size, std::vector<bool>(size, false));
  for (Eigen::Index i = 0; i < size; ++i) {
    reach[i][i] = true;
    for (Eigen::Index j = 0; j < size; ++j) {
      if (pattern(i, j)) reach[i][j] = true;
    }
  }
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (!reach[i][j]) return false;
    }
  }
  return true;
}

// Independent oracle: dense eigensolver from Eigen.
double spectral_radius_by_eigensolver(const Matrix& M) {
  Eigen::EigenSolver<Matrix> solver(M);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("spectral radius of the golden-ratio matrix") {
  // Characteristic polynomial lambda^2 - lambda - 1 = 0, dominant root by the
  // quadratic formula.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Matrix M(2, 2);
  M << 1, 1, 1, 0;
  CHECK(spectral_radius(M) == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("spectral radius edge cases") {
  CHECK(spectral_radius(Matrix::Zero(3, 3)) == 0.0);
  for (const double c : {0.0, 0.5, 3.0}) {
    CHECK(spectral_radius(c * Matrix::Identity(4, 4)) ==
          doctest::Approx(c).epsilon(1e-12));
  }
  Matrix nilpotent(2, 2);
  nilpotent << 0, 1, 0, 0;
  CHECK(spectral_radius(nilpotent) == 0.0);
}

TEST_CASE("spectral radius rejects bad inputs") {
  Matrix negative(2, 2);
  negative << 1, -1, 0, 1;
  CHECK_THROWS_AS(spectral_radius(negative), std::invalid_argument);
  CHECK_THROWS_AS(spectral_radius(Matrix::Ones(2, 3)), std::invalid_argument);
}

TEST_CASE("non-convergence reports the last residual") {
  // Defective Jordan block: power iteration converges only algebraically, far
  // too slowly to meet even the best-effort residual.
  Matrix jordan(2, 2);
  jordan << 1, 1, 0, 1;
  PowerOptions options;
  options.max_iterations = 2000;
  CHECK_THROWS_AS(spectral_radius(jordan, nullptr, options), ConvergenceError);
  try {
    spectral_radius(jordan, nullptr, options);
  } catch (const ConvergenceError& error) {
    CHECK(error.last_residual > 0.0);
    CHECK(error.iterations == 2000);
  }
}

TEST_CASE("dominant Metzler pair of the shifted golden system") {
  // Hand 2x2 eigen-decomposition: for [[0,1],[1,-1]] the rightmost eigenvalue
  // is phi - 1 = (sqrt(5)-1)/2 with left eigenvector proportional to (phi, 1).
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Matrix M(2, 2);
  M << 0, 1, 1, -1;
  const DominantPair pair = dominant_metzler(M);
  CHECK(pair.value == doctest::Approx(phi - 1.0).epsilon(1e-10));
  CHECK(pair.left_vector(0) == doctest::Approx(phi / (phi + 1.0)).epsilon(1e-8));
  CHECK(pair.left_vector(1) == doctest::Approx(1.0 / (phi + 1.0)).epsilon(1e-8));
  CHECK(pair.left_vector.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dominant Metzler pair of -I") {
  const DominantPair pair = dominant_metzler(-Matrix::Identity(5, 5));
  CHECK(pair.value == doctest::Approx(-1.0).epsilon(1e-12));
  for (int i = 0; i < 5; ++i) {
    CHECK(pair.left_vector(i) == doctest::Approx(0.2).epsilon(1e-10));
  }
}

TEST_CASE("dominant Metzler rejects negative off-diagonals") {
  Matrix M(2, 2);
  M << 1, -0.5, 1, 1;
  CHECK_THROWS_AS(dominant_metzler(M), std::invalid_argument);
}

TEST_CASE("left-eigenvector residual bound on random draws") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Matrix M = random_positive_matrix(6, seed);
    const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
    Matrix metzler = M;
    metzler.diagonal().array() -= 2.0;
    const DominantPair pair = dominant_metzler(metzler);
    CHECK(pair.residual <= 1e-8 * std::max(1.0, norm));
  }
}

TEST_CASE("shift invariance of the dominant pair") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix M = random_positive_matrix(5, 100 + trial);
    const double a = 0.1 + 3.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const DominantPair base = dominant_metzler(M);
    const DominantPair shifted = dominant_metzler(M + a * Matrix::Identity(5, 5));
    CHECK(shifted.value - base.value == doctest::Approx(a).epsilon(1e-10));
    CHECK((shifted.left_vector - base.left_vector).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("spectral radius is transpose invariant") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    const Matrix M = random_positive_matrix(7, seed);
    const double direct = spectral_radius(M);
    const double transposed = spectral_radius(Matrix(M.transpose()));
    CHECK(direct == doctest::Approx(transposed).epsilon(1e-10));
  }
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    const Matrix M = random_positive_matrix(8, seed, 0.0, 2.0);
    CHECK(spectral_radius(M) ==
          doctest::Approx(spectral_radius_by_eigensolver(M)).epsilon(1e-8));
  }
}

TEST_CASE("Collatz-Wielandt sandwich") {
  std::mt19937_64 rng(99);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix M = random_positive_matrix(6, 300 + trial);
    Vector z(6);
    for (int i = 0; i < 6; ++i) z(i) = 0.05 + uniform();
    const Vector image = M * z;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < 6; ++i) {
      lo = std::min(lo, image(i) / z(i));
      hi = std::max(hi, image(i) / z(i));
    }
    const double rho = spectral_radius(M);
    CHECK(rho >= lo - 1e-9);
    CHECK(rho <= hi + 1e-9);
  }
}

TEST_CASE("strong connectivity matches the closure oracle") {
  CHECK(is_strongly_connected(BoolMatrix::Constant(1, 1, false)));
  CHECK(is_strongly_connected(BoolMatrix::Constant(1, 1, true)));

  BoolMatrix two_cycle(2, 2);
  two_cycle << false, true, true, false;
  CHECK(is_strongly_connected(two_cycle));

  BoolMatrix path(3, 3);
  path.setConstant(false);
  path(0, 1) = path(1, 2) = true;  // directed path, no return edge
  CHECK_FALSE(is_strongly_connected(path));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int size = 2 + static_cast<int>(rng() % 5);
    BoolMatrix pattern(size, size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) pattern(i, j) = (rng() % 4) == 0;
    }
    CHECK(is_strongly_connected(pattern) == strongly_connected_by_closure(pattern));
  }
}

TEST_CASE("warm starts do not change the limit") {
  const Matrix M = random_positive_matrix(6, 77);
  const PerronPair cold = perron_dominant(M);
  Vector warm = Vector::Zero(6);
  warm(2) = 1.0;  // warm start stuck on one axis must still escape
  const PerronPair warmed = perron_dominant(M, &warm);
  CHECK(cold.value == doctest::Approx(warmed.value).epsilon(1e-10));
}
