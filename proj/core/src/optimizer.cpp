// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gas/errors.hpp"

namespace gas {

Bounds Bounds::unbounded(Eigen::Index n) {
  return {Vector::Constant(n, -kInf), Vector::Constant(n, kInf)};
}

bool Bounds::contains(const Vector& x) const {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (lower.size() > 0 && x[i] < lower[i]) return false;
    if (upper.size() > 0 && x[i] > upper[i]) return false;
  }
  return true;
}

Vector Bounds::clamp(Vector x) const {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (lower.size() > 0) x[i] = std::max(x[i], lower[i]);
    if (upper.size() > 0) x[i] = std::min(x[i], upper[i]);
  }
  return x;
}

namespace {

class Simplex {
 public:
  Simplex(const ObjectiveFn& objective, const Bounds& bounds, const OptimizerOptions& options, long& evaluations)
      : objective_(objective), bounds_(bounds), options_(options), evaluations_(evaluations) {}

  // Returns true on convergence, false when the evaluation budget ran out.
  bool run(Vector& best, double& best_value) {
    const Eigen::Index n = best.size();
    const double dn = static_cast<double>(n);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / dn;
    const double contract = 0.75 - 1.0 / (2.0 * dn);
    const double shrink = 1.0 - 1.0 / dn;

    std::vector<Vector> vertex(static_cast<std::size_t>(n + 1), best);
    std::vector<double> value(static_cast<std::size_t>(n + 1), best_value);
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector v = best;
      const double step = std::max(0.1 * std::abs(best[i]), 0.01);
      v[i] += step;
      v = bounds_.clamp(v);
      if (v[i] == best[i]) v = bounds_.clamp(best - step * Vector::Unit(n, i));
      vertex[static_cast<std::size_t>(i + 1)] = v;
      value[static_cast<std::size_t>(i + 1)] = eval(v);
    }

    std::vector<std::size_t> order(vertex.size());
    for (;;) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[order.size() - 2];

      double diameter = 0.0;
      for (const Vector& v : vertex) diameter = std::max(diameter, (v - vertex[lo]).cwiseAbs().maxCoeff());
      if (diameter < options_.xtol_abs) {
        best = vertex[lo];
        best_value = value[lo];
        return true;
      }
      if (evaluations_ >= options_.max_eval) {
        best = vertex[lo];
        best_value = value[lo];
        return false;
      }

      Vector centroid = Vector::Zero(n);
      for (std::size_t i = 0; i < vertex.size(); ++i) {
        if (i != hi) centroid += vertex[i];
      }
      centroid /= dn;

      const Vector xr = bounds_.clamp(centroid + reflect * (centroid - vertex[hi]));
      const double fr = eval(xr);
      if (fr < value[lo]) {
        const Vector xe = bounds_.clamp(centroid + expand * (xr - centroid));
        const double fe = eval(xe);
        if (fe < fr) {
          vertex[hi] = xe;
          value[hi] = fe;
        } else {
          vertex[hi] = xr;
          value[hi] = fr;
        }
        continue;
      }
      if (fr < value[second]) {
        vertex[hi] = xr;
        value[hi] = fr;
        continue;
      }
      const bool outside = fr < value[hi];
      const Vector xc = outside ? bounds_.clamp(centroid + contract * (xr - centroid))
                                : bounds_.clamp(centroid + contract * (vertex[hi] - centroid));
      const double fc = eval(xc);
      if (outside ? fc <= fr : fc < value[hi]) {
        vertex[hi] = xc;
        value[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i < vertex.size(); ++i) {
        if (i == lo) continue;
        vertex[i] = bounds_.clamp(vertex[lo] + shrink * (vertex[i] - vertex[lo]));
        value[i] = eval(vertex[i]);
      }
    }
  }

 private:
  double eval(const Vector& x) {
    ++evaluations_;
    const double v = objective_(x);
    if (options_.progress && evaluations_ % 100 == 0) {
      *options_.progress << "  evaluation " << evaluations_ << ": " << v << '\n';
    }
    return std::isnan(v) ? kInf : v;
  }

  const ObjectiveFn& objective_;
  const Bounds& bounds_;
  const OptimizerOptions& options_;
  long& evaluations_;
};

}  // namespace

OptimResult nelder_mead(const ObjectiveFn& objective, const Vector& start, const Bounds& bounds,
                        const OptimizerOptions& options) {
  OptimResult result;
  result.x = bounds.clamp(start);
  result.value = objective(result.x);
  result.evaluations = 1;
  if (!std::isfinite(result.value)) throw Error("optimizer start point has a non-finite objective");
  if (start.size() == 0) {
    result.converged = true;
    return result;
  }
  Simplex simplex(objective, bounds, options, result.evaluations);
  result.converged = simplex.run(result.x, result.value);
  for (int r = 0; r < options.restarts && result.converged; ++r) {
    Vector x = result.x;
    double v = result.value;
    const bool ok = simplex.run(x, v);
    const bool improved = v < result.value;
    if (improved) {
      result.x = x;
      result.value = v;
    }
    result.converged = ok;
    if (!improved) break;
  }
  return result;
}

}  // namespace gas
