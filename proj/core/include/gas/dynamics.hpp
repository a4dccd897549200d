// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <vector>

#include "gas/model.hpp"
#include "gas/types.hpp"

namespace gas {

// Observations (NaN marks a missing value) and per-parameter regressors.
// `x` is either empty or holds one T x M_i matrix per distribution parameter;
// static parameters and parameters without regressors get zero columns.
struct SeriesData {
  std::vector<double> y;
  std::vector<Matrix> x;

  std::size_t size() const { return y.size(); }
  // Regressor matrix of parameter i (an empty T x 0 matrix when absent).
  Matrix regressors(int param) const;
};

// Sets spec.m from the regressor matrices in `data`.
void sync_regressor_counts(ModelSpec& spec, const SeriesData& data);

struct FilterOutput {
  std::vector<int> tv_params;  // distribution parameter of each column
  Matrix par_tv;               // T x K link-space time-varying parameters
  Matrix score_tv;             // T x K scaled scores
  Matrix err_tv;               // T x K dynamic errors (sep mode; zero otherwise)
  Vector loglik_t;             // NaN for missing observations
  double loglik_sum = 0.0;     // -inf when the recursion left the support
  int used_obs = 0;            // terms entering loglik_sum
  bool finite = true;
  Vector f_bar;                // long-term values (NaN when undefined)
  ParamVector static_natural;  // natural values of all parameters with static ones filled in
};

// Long-term value of every time-varying parameter. `x_means` holds the mean
// regressor row of each distribution parameter (empty vectors allowed).
// Throws SpecError in joint mode when 1 - sum(phi) is within 1e-8 of zero.
Vector long_term_init(const ModelSpec& spec, const Vector& coef, const std::vector<Vector>& x_means);

// Applies the scaling function to the link-space score of the time-varying
// parameters `tv` given the link-space Fisher information of all parameters.
ParamVector scale_score(Scaling scaling, std::span<const int> tv, const ParamVector& raw_tv,
                        const ParamMatrix& fisher_full);

// Runs the score-driven recursion over the whole series. The first
// `lik_skip` likelihood terms are left out of loglik_sum.
FilterOutput filter_pass(const ModelSpec& spec, const Vector& coef, const SeriesData& data, int lik_skip = 0);

// Coefficients unpacked for the recursion. Shared by filtering, simulation and
// forecasting so all three run identical arithmetic.
class Recursion {
 public:
  Recursion(const ModelSpec& spec, const Vector& coef);

  const ModelSpec& spec() const { return spec_; }
  int tv_count() const { return static_cast<int>(tv_.size()); }
  const std::vector<int>& tv_params() const { return tv_; }
  int init_rows() const { return init_rows_; }

  // Mean regressor row per time-varying parameter.
  std::vector<Vector> tv_means(const std::vector<Matrix>& x_tv) const;
  Vector long_term(const std::vector<Vector>& x_means_tv) const;
  // par_init when given, long-term values otherwise.
  Vector initial(const std::vector<Vector>& x_means_tv) const;

  // Fills row t of f (and e in sep mode) from earlier rows. Requires t >= init_rows().
  void advance(Eigen::Index t, Matrix& f, const Matrix& s, Matrix& e, const std::vector<Matrix>& x_tv) const;
  // Fills row t of f with init and row t of e with init - f_bar.
  void initialize(Eigen::Index t, Matrix& f, Matrix& e, const Vector& init, const Vector& f_bar) const;

  // Natural parameters of all distribution parameters from a row of f.
  ParamVector natural(const Matrix& f, Eigen::Index t) const;
  bool in_support(const ParamVector& natural) const;

  struct Step {
    double loglik = 0.0;
    ParamVector scaled;  // length tv_count()
    bool finite = true;
  };
  // Likelihood contribution and scaled score at one observation. A missing
  // observation yields a zero score and NaN loglik.
  Step evaluate(double y, const ParamVector& natural) const;

  double draw(const ParamVector& natural, Rng& rng) const { return spec_.distr->fn.random(natural, rng); }

  // Regressor matrices of the time-varying parameters, in tv order.
  std::vector<Matrix> tv_regressors(const SeriesData& data) const;

 private:
  struct TvCoefs {
    int param;
    double omega;
    Vector beta;
    Vector alpha;
    Vector phi;
  };

  ModelSpec spec_;
  LinkSet links_;
  std::vector<int> tv_;
  std::vector<TvCoefs> coefs_;
  ParamVector linked_template_;  // static levels filled in, tv slots overwritten per step
  int init_rows_ = 0;
};

}  // namespace gas
