#include "multisir/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "multisir/spectral.hpp"

namespace multisir {

namespace {

void require_shape(const Matrix& M, Eigen::Index rows, Eigen::Index cols,
                   const char* name, std::ostringstream& errors) {
  if (M.rows() != rows || M.cols() != cols) {
    errors << name << " is " << M.rows() << "x" << M.cols() << ", expected "
           << rows << "x" << cols << "; ";
  }
}

void require_length(const Vector& v, Eigen::Index len, const char* name,
                    std::ostringstream& errors) {
  if (v.size() != len) {
    errors << name << " has length " << v.size() << ", expected " << len << "; ";
  }
}

void check_dimensions(const Matrix& beta, const Matrix& beta_w, const Matrix& c_w,
                      const Matrix& alpha, const Vector& gamma, const Vector& gamma_w) {
  const Eigen::Index n = beta.rows();
  const Eigen::Index m = alpha.rows();
  std::ostringstream errors;
  if (n < 1) errors << "beta must be at least 1x1; ";
  if (m < 1) errors << "alpha must be at least 1x1; ";
  require_shape(beta, n, n, "beta", errors);
  require_shape(beta_w, n, m, "beta_w", errors);
  require_shape(c_w, m, n, "c_w", errors);
  require_shape(alpha, m, m, "alpha", errors);
  require_length(gamma, n, "gamma", errors);
  require_length(gamma_w, m, "gamma_w", errors);
  const std::string msg = errors.str();
  if (!msg.empty()) throw std::invalid_argument("inconsistent rate dimensions: " + msg);
}

}  // namespace

Blocks assemble_blocks(const Matrix& beta, const Matrix& beta_w, const Matrix& c_w,
                       const Matrix& alpha, const Vector& gamma, const Vector& gamma_w) {
  check_dimensions(beta, beta_w, c_w, alpha, gamma, gamma_w);
  const Eigen::Index n = beta.rows();
  const Eigen::Index m = alpha.rows();

  Blocks blocks;
  blocks.a_w = alpha.transpose();
  blocks.a_w.diagonal() = alpha.diagonal() - alpha.rowwise().sum();

  // Columns of a_w must sum to zero; anything beyond roundoff is a bug in the
  // assembly, not an input problem.
  const double scale = std::max(1.0, alpha.cwiseAbs().maxCoeff());
  const double column_residual = blocks.a_w.colwise().sum().cwiseAbs().maxCoeff();
  if (column_residual > 1e-12 * scale) {
    throw std::logic_error("a_w column sums are nonzero: residual " +
                           std::to_string(column_residual));
  }

  Matrix net_flow = blocks.a_w;
  net_flow.diagonal().setZero();

  blocks.b_f.setZero(n + m, n + m);
  blocks.b_f.topLeftCorner(n, n) = beta;
  blocks.b_f.topRightCorner(n, m) = beta_w;
  blocks.b_f.bottomLeftCorner(m, n) = c_w;
  blocks.b_f.bottomRightCorner(m, m) = net_flow;

  Vector removal(n + m);
  removal.head(n) = gamma;
  removal.tail(m) = gamma_w - blocks.a_w.diagonal();
  blocks.d_f = removal.asDiagonal();
  return blocks;
}

ModelParams ModelParams::make(const Matrix& beta, const Matrix& beta_w,
                              const Matrix& c_w, const Matrix& alpha,
                              const Vector& gamma, const Vector& gamma_w) {
  Blocks blocks = assemble_blocks(beta, beta_w, c_w, alpha, gamma, gamma_w);
  ModelParams p;
  p.n = static_cast<int>(beta.rows());
  p.m = static_cast<int>(alpha.rows());
  p.beta = beta;
  p.beta_w = beta_w;
  p.c_w = c_w;
  p.alpha = alpha;
  p.gamma = gamma;
  p.gamma_w = gamma_w;
  p.a_w = std::move(blocks.a_w);
  p.b_f = std::move(blocks.b_f);
  p.d_f = std::move(blocks.d_f);
  return p;
}

Vector State::z() const {
  Vector stacked(x.size() + w.size());
  stacked << x, w;
  return stacked;
}

State State::healthy(const Vector& s0, int m) {
  State state;
  state.s = s0;
  state.x = Vector::Zero(s0.size());
  state.r = Vector::Ones(s0.size()) - s0;
  state.w = Vector::Zero(m);
  return state;
}

double max_invariant_violation(const State& state) {
  double worst = 0.0;
  auto box = [&worst](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      worst = std::max(worst, -v(i));
      worst = std::max(worst, v(i) - 1.0);
    }
  };
  box(state.s);
  box(state.x);
  box(state.r);
  for (Eigen::Index i = 0; i < state.s.size(); ++i) {
    worst = std::max(worst, std::abs(state.s(i) + state.x(i) + state.r(i) - 1.0));
  }
  for (Eigen::Index j = 0; j < state.w.size(); ++j) {
    worst = std::max(worst, -state.w(j));
  }
  return worst;
}

std::vector<ValidationIssue> validate_params(const ModelParams& params) {
  check_dimensions(params.beta, params.beta_w, params.c_w, params.alpha,
                   params.gamma, params.gamma_w);
  std::vector<ValidationIssue> issues;
  auto report = [&issues](const char* condition, std::string detail) {
    issues.push_back({condition, std::move(detail)});
  };

  for (int i = 0; i < params.n; ++i) {
    if (!(params.gamma(i) > 0.0)) {
      report("gamma positivity",
             "gamma[" + std::to_string(i) + "] = " + std::to_string(params.gamma(i)));
      break;
    }
  }
  for (int j = 0; j < params.m; ++j) {
    const double total = params.gamma_w(j) - params.a_w(j, j);
    if (!(total > 0.0)) {
      report("resource healing positivity",
             "gamma_w[" + std::to_string(j) + "] - a_w(j,j) = " + std::to_string(total));
      break;
    }
  }

  auto nonnegative = [&report](const Matrix& M, const char* condition) {
    if (M.size() > 0 && M.minCoeff() < 0.0) report(condition, "negative entry present");
  };
  nonnegative(params.beta, "beta nonnegativity");
  nonnegative(params.beta_w, "beta_w nonnegativity");
  nonnegative(params.c_w, "c_w nonnegativity");
  nonnegative(params.alpha, "alpha nonnegativity");

  if (!(params.beta_w.maxCoeff() > 0.0)) {
    report("beta_w coupling", "no strictly positive resource-to-person rate");
  }
  if (!(params.c_w.maxCoeff() > 0.0)) {
    report("c_w coupling", "no strictly positive person-to-resource rate");
  }

  if (!is_strongly_connected(positive_pattern(params.beta))) {
    report("B irreducible", "positive pattern of beta is not strongly connected");
  }
  if (!is_strongly_connected(positive_pattern(params.alpha))) {
    report("A_w irreducible", "positive pattern of alpha is not strongly connected");
  }
  return issues;
}

StateDerivative derivative(const ModelParams& params, const State& state) {
  const Vector pressure = params.beta * state.x + params.beta_w * state.w;
  StateDerivative d;
  d.ds = -(state.s.array() * pressure.array()).matrix();
  d.dx = (state.s.array() * pressure.array() - params.gamma.array() * state.x.array()).matrix();
  d.dr = (params.gamma.array() * state.x.array()).matrix();
  d.dw = params.a_w * state.w - (params.gamma_w.array() * state.w.array()).matrix() +
         params.c_w * state.x;
  return d;
}

Vector derivative_compact(const ModelParams& params, const State& state) {
  const Eigen::Index n = params.n;
  Vector z = state.z();
  Vector coupled = params.b_f * z;
  coupled.head(n).array() *= state.s.array();
  return coupled - (params.d_f.diagonal().array() * z.array()).matrix();
}

Matrix generator_matrix(const ModelParams& params, const Vector& s) {
  Matrix g = params.b_f;
  g.topRows(params.n).array().colwise() *= s.array();
  g -= params.d_f;
  return g;
}

Matrix next_generation_matrix(const ModelParams& params, const Vector& s) {
  Vector h = Vector::Ones(params.n + params.m);
  h.head(params.n) = s;
  const Matrix scaled = params.d_f.inverse() * params.b_f;
  return h.asDiagonal() * scaled;
}

}  // namespace multisir
