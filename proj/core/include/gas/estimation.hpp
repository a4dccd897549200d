// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gas/dynamics.hpp"
#include "gas/model.hpp"
#include "gas/optimizer.hpp"

namespace gas {

enum class SpecialStructure { panel_structure, zero_sum_intercept, random_walk };

std::string_view to_string(SpecialStructure s);
std::optional<SpecialStructure> parse_special(std::string_view text);

// Coefficient `fixed` gets multiplier * (estimated coefficient `estimated`)
// added to its fixed value. Indices refer to the full coefficient vector.
struct FixOther {
  int fixed = 0;
  int estimated = 0;
  double multiplier = 0.0;
};

// Restrictions on the coefficient vector. Empty vectors mean "none"; otherwise
// they carry one entry per coefficient.
struct ConstraintSpec {
  std::vector<std::optional<double>> fix_value;
  std::vector<FixOther> fix_other;
  std::vector<SpecialStructure> special;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  // Dense square multiplier matrix with NaN for "not tied".
  static std::vector<FixOther> fix_other_from_matrix(const Matrix& dense);
};

// Affine map from the free coefficients to the full vector:
// full = base + map * free.
struct CoefStructure {
  std::vector<std::string> labels;
  std::vector<int> free_index;
  std::vector<bool> fixed;
  Vector base;
  Matrix map;
  Vector lower;  // full-length, -inf when unbounded
  Vector upper;
  Bounds free_bounds;

  int size() const { return static_cast<int>(labels.size()); }
  int free_count() const { return static_cast<int>(free_index.size()); }
  Vector expand(const Vector& free) const;
  Vector free_part(const Vector& full) const;
};

// Lowers named structures into fixes and ties, validates everything and
// builds the expansion map. Throws SpecError on inconsistent constraints.
CoefStructure build_structure(const ModelSpec& spec, const ConstraintSpec& constraints);

// Log-likelihood of a coefficient vector, turning every failure into -inf.
class LikelihoodObjective {
 public:
  LikelihoodObjective(ModelSpec spec, CoefStructure structure, const SeriesData& data, int lik_skip);

  double loglik_full(const Vector& full) const;
  double loglik(const Vector& free) const;
  // -loglik; +inf outside the bounds or where the likelihood is not finite.
  double negative(const Vector& free) const;

  const ModelSpec& spec() const { return spec_; }
  const CoefStructure& structure() const { return structure_; }

 private:
  ModelSpec spec_;
  CoefStructure structure_;
  const SeriesData* data_;
  int lik_skip_;
};

// Best point of the starting grid, as a free-coefficient vector.
Vector grid_start(const ModelSpec& spec, const CoefStructure& structure, const SeriesData& data, int lik_skip);

struct HessianResult {
  Matrix h;
  bool ok = false;
};

// Central second differences of `loglik` with steps 1e-4 * max(1, |x_i|).
HessianResult numeric_hessian(const ObjectiveFn& loglik, const Vector& at);

struct Inference {
  Matrix vcov;
  Vector sd;
  Vector z;
  Vector p;
  bool ok = false;          // Hessian available
  bool degenerate = false;  // -H was singular or indefinite
};

// Asymptotic covariance from the free-coordinate Hessian, carried to the
// full vector through the expansion map. Fixed coefficients get NaN z and p.
Inference infer(const Vector& coef_full, const CoefStructure& structure, const HessianResult& hessian);

struct InfoCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

InfoCriteria info_criteria(double loglik, int k, int t_eff);

struct EstimationOptions {
  int lik_skip = 0;
  // Skip the initialized rows instead, i.e. lik_skip = max(P, Q).
  bool conditional = false;
  std::optional<Vector> coef_start;  // full coefficient vector
  OptimizerOptions optim;
  Optimizer optimizer = nelder_mead;
  bool compute_hessian = true;
  std::ostream* progress = nullptr;
};

struct OptimDiagnostics {
  long evaluations = 0;
  bool converged = false;
  Vector start;  // free vector the optimizer started from
  double start_loglik = -kInf;
  bool from_grid = false;
};

struct EstimationResult {
  ModelSpec spec;
  ConstraintSpec constraints;
  EstimationOptions options;
  SeriesData data;
  CoefStructure structure;
  int lik_skip = 0;

  Vector coef_est;
  Matrix coef_vcov;
  Vector coef_sd;
  Vector z_stat;
  Vector p_value;
  bool hessian_ok = false;
  bool degenerate = false;

  FilterOutput filter;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  int k_free = 0;
  int t_eff = 0;
  OptimDiagnostics optim;

  const std::vector<std::string>& names() const { return structure.labels; }
};

// Full pipeline: structure, start, optimize, filter, Hessian, inference and
// information criteria. spec.m is taken from the regressors in `data`.
EstimationResult estimate(const SeriesData& data, ModelSpec spec, const ConstraintSpec& constraints = {},
                          const EstimationOptions& options = {});

// The same result at given coefficients, without optimizing.
EstimationResult evaluate_at(const SeriesData& data, ModelSpec spec, const Vector& coef,
                             const ConstraintSpec& constraints = {}, const EstimationOptions& options = {});

}  // namespace gas
