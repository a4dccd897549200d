// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <functional>
#include <ostream>

#include "gas/types.hpp"

namespace gas {

// Box bounds; infinite entries mean unbounded. Empty vectors mean no bounds.
struct Bounds {
  Vector lower;
  Vector upper;

  static Bounds unbounded(Eigen::Index n);
  bool contains(const Vector& x) const;
  Vector clamp(Vector x) const;
};

struct OptimizerOptions {
  long max_eval = 1'000'000;
  // Stop once every vertex is within this distance (max norm) of the best one.
  double xtol_abs = 1e-10;
  // Fresh simplexes started from the optimum after convergence.
  int restarts = 2;
  std::ostream* progress = nullptr;
};

struct OptimResult {
  Vector x;
  double value = kInf;
  long evaluations = 0;
  bool converged = false;
};

// Objective to be minimized; +inf marks infeasible points.
using ObjectiveFn = std::function<double(const Vector&)>;

// Any optimizer with this contract can replace the default: minimize from a
// finite start within the bounds and never return a value above f(start).
using Optimizer = std::function<OptimResult(const ObjectiveFn&, const Vector&, const Bounds&, const OptimizerOptions&)>;

// Derivative-free Nelder-Mead simplex with dimension-adaptive coefficients.
// Trial points are clamped into the bounds. Throws Error when f(start) is not finite.
OptimResult nelder_mead(const ObjectiveFn& objective, const Vector& start, const Bounds& bounds,
                        const OptimizerOptions& options = {});

}  // namespace gas
