#pragma once

#include <Eigen/Dense>

namespace multisir {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr const char* kVersion = "0.1.0";

}  // namespace multisir
