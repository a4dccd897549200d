// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace gas {

// Largest number of distribution parameters any shipped family uses.
inline constexpr int kMaxParams = 4;

using ParamVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxParams, 1>;
using ParamMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxParams, kMaxParams>;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using Rng = std::mt19937_64;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Missing observations and missing table cells are stored as NaN.
inline bool is_missing(double v) { return std::isnan(v); }

}  // namespace gas
