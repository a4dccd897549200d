// Apache License, Version 2.0, refer to LICENSE.txt

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gas/estimation.hpp"
#include "gas/stats.hpp"

namespace gas {

HessianResult numeric_hessian(const ObjectiveFn& loglik, const Vector& at) {
  const Eigen::Index n = at.size();
  HessianResult out;
  out.h = Matrix::Zero(n, n);
  Vector step(n);
  for (Eigen::Index i = 0; i < n; ++i) step[i] = 1e-4 * std::max(1.0, std::abs(at[i]));

  auto eval = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    Vector x = at;
    if (i >= 0) x[i] += si * step[i];
    if (j >= 0) x[j] += sj * step[j];
    return loglik(x);
  };

  const double center = loglik(at);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.h(i, i) = (eval(i, 1, -1, 0) - 2.0 * center + eval(i, -1, -1, 0)) / (step[i] * step[i]);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = (eval(i, 1, j, 1) - eval(i, 1, j, -1) - eval(i, -1, j, 1) + eval(i, -1, j, -1)) /
                       (4.0 * step[i] * step[j]);
      out.h(i, j) = v;
      out.h(j, i) = v;
    }
  }
  out.h = 0.5 * (out.h + out.h.transpose());
  out.ok = out.h.allFinite();
  return out;
}

Inference infer(const Vector& coef_full, const CoefStructure& structure, const HessianResult& hessian) {
  const Eigen::Index n = coef_full.size();
  const Eigen::Index k = structure.free_count();
  Inference out;
  out.vcov = Matrix::Constant(n, n, kNaN);
  out.sd = Vector::Constant(n, kNaN);
  out.z = Vector::Constant(n, kNaN);
  out.p = Vector::Constant(n, kNaN);
  if (!hessian.ok || hessian.h.rows() != k) return out;
  out.ok = true;

  Matrix cov_free = Matrix::Zero(k, k);
  if (k > 0) {
    const Matrix neg = -hessian.h;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(neg);
    const Vector& values = eig.eigenvalues();
    const double cutoff = 1e-10 * std::max(values.maxCoeff(), 0.0);
    Vector inv(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (values[i] > cutoff && values[i] > 0.0) {
        inv[i] = 1.0 / values[i];
      } else {
        inv[i] = 0.0;
        out.degenerate = true;
      }
    }
    cov_free = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  }
  out.vcov = structure.map * cov_free * structure.map.transpose();
  out.vcov = 0.5 * (out.vcov + out.vcov.transpose());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double var = out.vcov(i, i);
    const bool fixed = structure.fixed[static_cast<std::size_t>(i)];
    if (fixed && structure.map.row(i).isZero()) {
      out.sd[i] = 0.0;
      continue;
    }
    if (var > 0.0) {
      out.sd[i] = std::sqrt(var);
      if (!fixed) {
        out.z[i] = coef_full[i] / out.sd[i];
        out.p[i] = stats::two_sided_p(out.z[i]);
      }
    } else if (!out.degenerate && var == 0.0) {
      out.sd[i] = 0.0;
    }
  }
  return out;
}

InfoCriteria info_criteria(double loglik, int k, int t_eff) {
  const double kd = static_cast<double>(k);
  return {2.0 * kd - 2.0 * loglik, kd * std::log(static_cast<double>(t_eff)) - 2.0 * loglik};
}

}  // namespace gas
