#pragma once

#include <cstdint>
#include <random>

#include "multisir/model.hpp"

namespace multisir::testsupport {

inline Matrix single(double value) { return Matrix::Constant(1, 1, value); }
inline Vector single_v(double value) { return Vector::Constant(1, value); }

/// 1+1-node system with b_f = [[1,1],[1,0]] and unit removal rates.
inline ModelParams golden_params() {
  return ModelParams::make(single(1.0), single(1.0), single(1.0), single(0.0),
                           single_v(1.0), single_v(1.0));
}

inline State make_state(Vector s, Vector x, Vector r, Vector w, double t = 0.0) {
  State state;
  state.s = std::move(s);
  state.x = std::move(x);
  state.r = std::move(r);
  state.w = std::move(w);
  state.t = t;
  return state;
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Admissible random parameters (strictly positive couplings, zero self-flow).
inline ModelParams random_params(std::mt19937_64& rng, int n = 4, int m = 3) {
  Matrix beta(n, n), beta_w(n, m), c_w(m, n), alpha(m, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) beta(i, j) = 0.05 + uniform01(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) beta_w(i, j) = 0.05 + 0.5 * uniform01(rng);
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) c_w(j, k) = 0.05 + 0.5 * uniform01(rng);
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) alpha(j, k) = (j == k) ? 0.0 : 2.0 * uniform01(rng);
  }
  Vector gamma(n), gamma_w(m);
  for (int i = 0; i < n; ++i) gamma(i) = 0.5 + 2.0 * uniform01(rng);
  for (int j = 0; j < m; ++j) gamma_w(j) = 0.3 + uniform01(rng);
  return ModelParams::make(beta, beta_w, c_w, alpha, gamma, gamma_w);
}

/// Valid interior state with strictly positive infection everywhere.
inline State random_state(std::mt19937_64& rng, int n, int m) {
  Vector s(n), x(n), r(n), w(m);
  for (int i = 0; i < n; ++i) {
    s(i) = 0.1 + 0.7 * uniform01(rng);
    x(i) = (1.0 - s(i)) * (0.05 + 0.9 * uniform01(rng));
    r(i) = 1.0 - s(i) - x(i);
  }
  for (int j = 0; j < m; ++j) w(j) = 0.05 + uniform01(rng);
  return make_state(s, x, r, w);
}

}  // namespace multisir::testsupport
