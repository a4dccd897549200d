// Apache License, Version 2.0, refer to LICENSE.txt

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "gas/errors.hpp"
#include "gas/stats.hpp"
#include "gas/uncertainty.hpp"

namespace gas {
namespace {

using Indices = std::vector<std::size_t>;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SeriesData sample_poisson(int T, std::uint64_t seed) {
  const SimulationResult sim = simulate_series(ModelSpec::make("pois"), vec({0.1, 0.08, 0.85}), T, seed);
  return {std::vector<double>(sim.y_sim.begin(), sim.y_sim.end()), {}};
}

CoefStructure identity_structure(int k) {
  CoefStructure st;
  for (int i = 0; i < k; ++i) {
    st.labels.push_back("c" + std::to_string(i));
    st.free_index.push_back(i);
    st.fixed.push_back(false);
  }
  st.base = Vector::Zero(k);
  st.map = Matrix::Identity(k, k);
  st.lower = Vector::Constant(k, -kInf);
  st.upper = Vector::Constant(k, kInf);
  return st;
}

TEST(BlockIndices, SimpleBlockEnumeration) {
  const Indices a{0, 1, 2};
  const Indices b{3, 4, 5};
  std::set<Indices> allowed;
  for (const Indices& first : {a, b}) {
    for (const Indices& second : {a, b}) {
      Indices v = first;
      v.insert(v.end(), second.begin(), second.end());
      allowed.insert(v);
    }
  }
  std::set<Indices> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Indices idx = block_indices(BootMethod::simple_block, 6, 3.0, seed);
    ASSERT_TRUE(allowed.count(idx)) << seed;
    seen.insert(idx);
  }
  EXPECT_EQ(seen, allowed);
}

TEST(BlockIndices, MovingBlockRotations) {
  std::set<Indices> allowed;
  for (std::size_t r = 0; r < 4; ++r) allowed.insert({r % 4, (r + 1) % 4, (r + 2) % 4, (r + 3) % 4});
  std::set<Indices> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Indices idx = block_indices(BootMethod::moving_block, 4, 4.0, seed);
    ASSERT_TRUE(allowed.count(idx)) << seed;
    seen.insert(idx);
  }
  EXPECT_EQ(seen, allowed);
}

TEST(BlockIndices, UnitBlocksAreIid) {
  for (BootMethod m : {BootMethod::simple_block, BootMethod::moving_block}) {
    SCOPED_TRACE(std::string(to_string(m)));
    constexpr std::size_t T = 5;
    std::map<std::pair<std::size_t, std::size_t>, int> pairs;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 20000; ++seed) {
      const Indices idx = block_indices(m, T, 1.0, seed);
      ++pairs[{idx[0], idx[1]}];
      ++n;
    }
    // Chi-square over the 25 ordered pairs, 24 degrees of freedom; 0.999 quantile is about 51.2.
    double chi2 = 0.0;
    const double expected = n / 25.0;
    for (std::size_t i = 0; i < T; ++i) {
      for (std::size_t j = 0; j < T; ++j) {
        const double o = pairs[{i, j}];
        chi2 += (o - expected) * (o - expected) / expected;
      }
    }
    EXPECT_LT(chi2, 51.2);
  }
}

TEST(BlockIndices, StationaryMeanBlockLength) {
  constexpr std::size_t T = 100000;
  const Indices idx = block_indices(BootMethod::stationary_block, T, 5.0, 3);
  ASSERT_EQ(idx.size(), T);
  std::size_t blocks = 1;
  for (std::size_t i = 1; i < T; ++i) {
    if (idx[i] != (idx[i - 1] + 1) % T) ++blocks;
  }
  EXPECT_NEAR(static_cast<double>(T) / static_cast<double>(blocks), 5.0, 0.15);
}

TEST(BlockIndices, Errors) {
  EXPECT_THROW(block_indices(BootMethod::simple_block, 10, std::nullopt, 1), SpecError);
  EXPECT_THROW(block_indices(BootMethod::stationary_block, 10, std::nullopt, 1), SpecError);
  EXPECT_THROW(block_indices(BootMethod::moving_block, 10, 0.5, 1), SpecError);
  EXPECT_THROW(block_indices(BootMethod::moving_block, 10, 11.0, 1), SpecError);
  EXPECT_THROW(block_indices(BootMethod::simple_block, 10, 2.5, 1), SpecError);
  EXPECT_THROW(block_indices(BootMethod::parametric, 10, 2.0, 1), SpecError);
  EXPECT_NO_THROW(block_indices(BootMethod::stationary_block, 10, 2.5, 1));
}

TEST(Bootstrap, NothingToEstimate) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.fix_value = {0.1, 0.08, 0.85};
  const EstimationResult est = estimate(sample_poisson(100, 1), spec, c);
  BootstrapOptions o;
  o.rep_boot = 1;
  const BootstrapResult b = bootstrap(est, o);
  ASSERT_EQ(b.coef_samples.rows(), 1);
  EXPECT_EQ(Vector(b.coef_samples.row(0).transpose()), est.coef_est);
}

TEST(Bootstrap, AggregatesInIndexOrder) {
  const ModelSpec spec = ModelSpec::make("pois");
  const EstimationResult est = estimate(sample_poisson(300, 2), spec);
  BootstrapOptions o;
  o.rep_boot = 12;
  o.seed = 4;
  o.quant = {0.1, 0.5, 0.9};
  const BootstrapResult b = bootstrap(est, o);
  EXPECT_EQ(b.failures + b.coef_samples.rows(), 12);
  for (Eigen::Index j = 0; j < 3; ++j) {
    const std::vector<double> col(b.coef_samples.col(j).begin(), b.coef_samples.col(j).end());
    EXPECT_DOUBLE_EQ(b.coef_mean[j], stats::mean(col));
    EXPECT_DOUBLE_EQ(b.coef_sd[j], stats::sd(col));
    for (Eigen::Index q = 0; q < 3; ++q) EXPECT_DOUBLE_EQ(b.coef_quant(j, q), stats::quantile(col, o.quant[q]));
  }
  BootstrapOptions threaded = o;
  threaded.jobs = 3;
  EXPECT_EQ(bootstrap(est, threaded).coef_samples, b.coef_samples);
}

TEST(Bootstrap, BlockMethodsKeepRegressorsAligned) {
  ModelSpec spec = ModelSpec::make("pois");
  const int T = 200;
  Matrix x(T, 1);
  for (int t = 0; t < T; ++t) x(t, 0) = std::sin(0.1 * t);
  SimulateOptions so;
  so.x_sim = {x};
  const SimulationResult sim = simulate_series(spec, vec({0.1, 0.3, 0.05, 0.8}), T, 5, so);
  const SeriesData data{{sim.y_sim.begin(), sim.y_sim.end()}, {x}};
  const EstimationResult est = estimate(data, spec);
  for (BootMethod m : {BootMethod::simple_block, BootMethod::moving_block, BootMethod::stationary_block}) {
    BootstrapOptions o;
    o.method = m;
    o.block_length = 10.0;
    o.rep_boot = 5;
    const BootstrapResult b = bootstrap(est, o);
    EXPECT_EQ(b.coef_samples.rows() + b.failures, 5);
    EXPECT_TRUE(b.coef_mean.allFinite());
  }
  BootstrapOptions missing_length;
  missing_length.method = BootMethod::moving_block;
  EXPECT_THROW(bootstrap(est, missing_length), SpecError);
}

TEST(CoefDraws, ZeroCovariance) {
  const Vector coef = vec({0.1, 0.2, 0.3});
  const Matrix draws = coef_draws(coef, Matrix::Zero(3, 3), identity_structure(3), 20, 1);
  ASSERT_EQ(draws.rows(), 20);
  for (Eigen::Index r = 0; r < 20; ++r) EXPECT_EQ(Vector(draws.row(r).transpose()), coef);
}

TEST(CoefDraws, UnitVarianceSampleSd) {
  constexpr int n = 100000;
  const Matrix draws = coef_draws(vec({0.0}), Matrix::Identity(1, 1), identity_structure(1), n, 2);
  const std::vector<double> col(draws.col(0).begin(), draws.col(0).end());
  // Standard error of a normal sample sd is about 1 / sqrt(2 n).
  EXPECT_NEAR(stats::sd(col), 1.0, 4.0 / std::sqrt(2.0 * n));
  EXPECT_NEAR(stats::mean(col), 0.0, 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(CoefDraws, FixedColumnConstant) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.fix_value = {std::nullopt, 0.05, std::nullopt};
  const EstimationResult est = estimate(sample_poisson(300, 3), spec, c);
  const Matrix draws = coef_draws(est, 200, 7);
  EXPECT_TRUE((draws.col(1).array() == 0.05).all());
  EXPECT_GT(draws.col(0).maxCoeff() - draws.col(0).minCoeff(), 0.0);
}

TEST(CoefDraws, RejectionCap) {
  CoefStructure st = identity_structure(1);
  st.upper = vec({-50.0});
  EXPECT_THROW(coef_draws(vec({-49.99}), Matrix::Identity(1, 1) * 1e-12, st, 5, 1, [](const Vector&) { return false; }),
               Error);
}

TEST(FilterUncertainty, SingleGivenSet) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = sample_poisson(100, 4);
  const Vector coef = vec({0.1, 0.08, 0.85});
  FilterUncertaintyOptions o;
  o.method = UncertaintyMethod::given_coefs;
  o.coef_set = coef.transpose();
  const FilterUncertainty fu = filter_uncertainty(spec, data, o);
  const FilterOutput filt = filter_pass(spec, coef, data);
  EXPECT_LT((fu.par_tv_mean - filt.par_tv).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(fu.par_tv_sd.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(fu.sets, 1);
}

TEST(FilterUncertainty, ZeroCovarianceMatchesSingleSet) {
  const ModelSpec spec = ModelSpec::make("pois");
  EstimationResult est = estimate(sample_poisson(150, 5), spec);
  est.coef_vcov.setZero();
  FilterUncertaintyOptions sim;
  sim.method = UncertaintyMethod::simulated_coefs;
  sim.rep_gen = 20;
  const FilterUncertainty a = filter_uncertainty(est, sim);
  FilterUncertaintyOptions given;
  given.method = UncertaintyMethod::given_coefs;
  given.coef_set = est.coef_est.transpose();
  const FilterUncertainty b = filter_uncertainty(est, given);
  EXPECT_LT((a.par_tv_mean - b.par_tv_mean).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(a.par_tv_sd.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FilterUncertainty, BandsWithForecastHorizon) {
  const ModelSpec spec = ModelSpec::make("pois");
  const EstimationResult est = estimate(sample_poisson(300, 6), spec);
  FilterUncertaintyOptions o;
  o.rep_gen = 100;
  o.t_ahead = 5;
  o.rep_ahead = 50;
  o.quant = {0.025, 0.5, 0.975};
  const FilterUncertainty fu = filter_uncertainty(est, o);
  ASSERT_EQ(fu.par_tv_mean.rows(), 305);
  EXPECT_EQ(fu.horizon, 5);
  double width = 0.0;
  for (Eigen::Index t = 0; t < 305; ++t) {
    EXPECT_LE(fu.par_tv_quant[0](t, 0), fu.par_tv_quant[1](t, 0));
    EXPECT_LE(fu.par_tv_quant[1](t, 0), fu.par_tv_quant[2](t, 0));
    if (t < 300) width += fu.par_tv_quant[2](t, 0) - fu.par_tv_quant[0](t, 0);
  }
  width /= 300.0;
  EXPECT_TRUE(std::isfinite(width));
  EXPECT_GT(width, 0.0);
  FilterUncertaintyOptions again = o;
  again.jobs = 2;
  EXPECT_EQ(filter_uncertainty(est, again).par_tv_quant[2], fu.par_tv_quant[2]);
}

}  // namespace
}  // namespace gas
