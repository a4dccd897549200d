// Apache License, Version 2.0, refer to LICENSE.txt

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gas/errors.hpp"
#include "gas/estimation.hpp"
#include "gas/forecast.hpp"
#include "gas/stats.hpp"

namespace gas {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<std::optional<double>> fixes(int n, std::initializer_list<std::pair<int, double>> entries) {
  std::vector<std::optional<double>> out(static_cast<std::size_t>(n));
  for (auto [i, v] : entries) out[static_cast<std::size_t>(i)] = v;
  return out;
}

SeriesData simulated_poisson(int T, std::uint64_t seed) {
  const SimulationResult sim = simulate_series(ModelSpec::make("pois"), vec({0.1, 0.08, 0.85}), T, seed);
  return {std::vector<double>(sim.y_sim.begin(), sim.y_sim.end()), {}};
}

TEST(Optimizer, Quadratic) {
  const auto f = [](const Vector& x) { return (x[0] - 3.0) * (x[0] - 3.0); };
  const OptimResult r = nelder_mead(f, vec({0.0}), Bounds::unbounded(1));
  EXPECT_NEAR(r.x[0], 3.0, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Optimizer, ActiveBound) {
  const auto f = [](const Vector& x) { return (x[0] - 3.0) * (x[0] - 3.0); };
  const OptimResult r = nelder_mead(f, vec({0.0}), Bounds{vec({0.0}), vec({2.0})});
  EXPECT_NEAR(r.x[0], 2.0, 1e-6);
}

TEST(Optimizer, Rosenbrock) {
  const auto f = [](const Vector& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const OptimResult r = nelder_mead(f, vec({-1.2, 1.0}), Bounds::unbounded(2));
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 1e-3);
}

TEST(Optimizer, NeverWorseThanStartAndRejectsInfiniteStart) {
  const auto f = [](const Vector& x) { return x[0] > 1.0 ? kInf : -x[0]; };
  const OptimResult r = nelder_mead(f, vec({0.5}), Bounds::unbounded(1));
  EXPECT_LE(r.value, -0.5);
  EXPECT_THROW(nelder_mead(f, vec({2.0}), Bounds::unbounded(1)), Error);
}

TEST(Optimizer, RespectsEvaluationBudget) {
  OptimizerOptions o;
  o.max_eval = 50;
  const auto f = [](const Vector& x) { return x.squaredNorm(); };
  const OptimResult r = nelder_mead(f, vec({5.0, 5.0, 5.0}), Bounds::unbounded(3), o);
  EXPECT_LE(r.evaluations, 50);
  EXPECT_FALSE(r.converged);
}

TEST(Structure, NoConstraints) {
  ModelSpec spec = ModelSpec::make("negbin");
  spec.m = {7, 0};
  const CoefStructure st = build_structure(spec, {});
  EXPECT_EQ(st.size(), 11);
  EXPECT_EQ(st.free_count(), 11);
  EXPECT_EQ(st.labels.back(), "dispersion");
  EXPECT_EQ(st.labels[9], "log(mean)_phi1");
}

TEST(Structure, FixValueExpansion) {
  ModelSpec spec = ModelSpec::make("negbin");
  spec.m = {7, 0};
  ConstraintSpec c;
  c.fix_value = fixes(11, {{8, 0.05}});
  const CoefStructure st = build_structure(spec, c);
  ASSERT_EQ(st.free_count(), 10);
  const Vector full = st.expand(Vector::LinSpaced(10, 1.0, 10.0));
  EXPECT_EQ(full[8], 0.05);
  EXPECT_EQ(full[7], 8.0);
  EXPECT_EQ(full[9], 9.0);
  EXPECT_EQ(st.free_part(full), Vector::LinSpaced(10, 1.0, 10.0));
}

TEST(Structure, RandomWalkLowering) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.special = {SpecialStructure::random_walk};
  const CoefStructure st = build_structure(spec, c);
  EXPECT_EQ(st.free_index, std::vector<int>{1});
  const Vector full = st.expand(vec({0.3}));
  EXPECT_EQ(full, vec({0.0, 0.3, 1.0}));
}

TEST(Structure, ZeroSumIntercept) {
  ModelSpec spec = ModelSpec::make("norm");
  spec.par_static = {false, false};
  spec.reset_links();
  ConstraintSpec c;
  c.special = {SpecialStructure::zero_sum_intercept};
  const CoefStructure st = build_structure(spec, c);
  EXPECT_EQ(st.free_count(), 5);
  const Vector full = st.expand(vec({0.7, 0.1, 0.2, 0.3, 0.4}));
  EXPECT_DOUBLE_EQ(full[0] + full[3], 0.0);
}

TEST(Structure, PanelStructureTiesDynamics) {
  ModelSpec spec = ModelSpec::make("norm");
  spec.par_static = {false, false};
  spec.reset_links();
  ConstraintSpec c;
  c.special = {SpecialStructure::panel_structure};
  const CoefStructure st = build_structure(spec, c);
  EXPECT_EQ(st.free_count(), 4);
  const Vector full = st.expand(vec({0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(full[1], full[4]);
  EXPECT_EQ(full[2], full[5]);
}

TEST(Structure, IncompatibleSpecials) {
  const ModelSpec pois = ModelSpec::make("pois");
  ConstraintSpec c;
  c.special = {SpecialStructure::zero_sum_intercept};
  EXPECT_THROW(build_structure(pois, c), SpecError);
  c.special = {SpecialStructure::panel_structure};
  EXPECT_THROW(build_structure(pois, c), SpecError);
  ModelSpec no_ar = pois;
  no_ar.q = {0};
  c.special = {SpecialStructure::random_walk};
  EXPECT_THROW(build_structure(no_ar, c), SpecError);
  ConstraintSpec clash;
  clash.special = {SpecialStructure::random_walk};
  clash.fix_value = fixes(3, {{0, 0.1}});
  EXPECT_THROW(build_structure(pois, clash), SpecError);
}

TEST(Structure, FixOtherRules) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.fix_value = fixes(3, {{2, 0.5}});
  c.fix_other = {{2, 1, 2.0}};
  const CoefStructure st = build_structure(spec, c);
  EXPECT_EQ(st.expand(vec({0.1, 0.2})), vec({0.1, 0.2, 0.9}));

  ConstraintSpec free_row = c;
  free_row.fix_other = {{1, 0, 1.0}};
  EXPECT_THROW(build_structure(spec, free_row), SpecError);

  ConstraintSpec cyclic;
  cyclic.fix_value = fixes(3, {{1, 0.0}, {2, 0.0}});
  cyclic.fix_other = {{2, 1, 1.0}};
  EXPECT_THROW(build_structure(spec, cyclic), SpecError);
}

TEST(Structure, FixOtherFromDenseMatrix) {
  Matrix m = Matrix::Constant(3, 3, kNaN);
  m(2, 0) = -1.5;
  const auto ties = ConstraintSpec::fix_other_from_matrix(m);
  ASSERT_EQ(ties.size(), 1u);
  EXPECT_EQ(ties[0].fixed, 2);
  EXPECT_EQ(ties[0].estimated, 0);
  EXPECT_EQ(ties[0].multiplier, -1.5);
}

TEST(Structure, BoundChecks) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.lower = fixes(3, {{2, 0.9}});
  c.upper = fixes(3, {{2, 0.5}});
  EXPECT_THROW(build_structure(spec, c), SpecError);
  ConstraintSpec outside;
  outside.fix_value = fixes(3, {{2, 1.5}});
  outside.upper = fixes(3, {{2, 1.0}});
  EXPECT_THROW(build_structure(spec, outside), SpecError);
  ConstraintSpec wrong_length;
  wrong_length.fix_value = fixes(2, {});
  EXPECT_THROW(build_structure(spec, wrong_length), SpecError);
}

TEST(Objective, SingleObservationExample) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data{{5.0}, {}};
  const LikelihoodObjective obj(spec, build_structure(spec, {}), data, 0);
  const double expected = -(5.0 * 2.0 - std::exp(2.0) - std::lgamma(6.0));
  EXPECT_NEAR(obj.negative(vec({0.2, 0.1, 0.9})), expected, 1e-12);
  EXPECT_NEAR(expected, 2.176, 1e-3);
}

TEST(Objective, OutOfBoundsIsInfinite) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.upper = fixes(3, {{2, 0.95}});
  const SeriesData data{{1, 2, 3}, {}};
  const LikelihoodObjective obj(spec, build_structure(spec, c), data, 0);
  EXPECT_EQ(obj.negative(vec({0.1, 0.1, 0.99})), kInf);
  EXPECT_TRUE(std::isfinite(obj.negative(vec({0.1, 0.1, 0.9}))));
}

TEST(Objective, SkipAllButLast) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data{{1, 2, 3, 4}, {}};
  const Vector coef = vec({0.1, 0.1, 0.5});
  const FilterOutput f = filter_pass(spec, coef, data);
  const LikelihoodObjective obj(spec, build_structure(spec, {}), data, 3);
  EXPECT_NEAR(obj.negative(coef), -f.loglik_t[3], 1e-12);
}

TEST(GridStart, InterceptInvertsLongTermValue) {
  const ModelSpec spec = ModelSpec::make("pois");
  ConstraintSpec c;
  c.fix_value = fixes(3, {{1, 0.0}, {2, 0.5}});
  const SeriesData data{std::vector<double>(20, 2.0), {}};
  const CoefStructure st = build_structure(spec, c);
  const Vector start = grid_start(spec, st, data, 0);
  ASSERT_EQ(start.size(), 1);
  EXPECT_NEAR(start[0], 0.5 * std::log(2.0), 1e-14);
}

TEST(GridStart, ConstantBernoulliStillEvaluates) {
  const ModelSpec spec = ModelSpec::make("bernoulli");
  const SeriesData data{std::vector<double>(30, 0.0), {}};
  const Vector start = grid_start(spec, build_structure(spec, {}), data, 0);
  EXPECT_TRUE(start.allFinite());
  EXPECT_NO_THROW(estimate(data, spec));
}

TEST(GridStart, UserStartBypassesGrid) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(200, 3);
  EstimationOptions o;
  o.coef_start = vec({0.05, 0.05, 0.8});
  const EstimationResult r = estimate(data, spec, {}, o);
  EXPECT_FALSE(r.optim.from_grid);
  EXPECT_EQ(r.optim.start, *o.coef_start);
}

TEST(Hessian, Examples) {
  const HessianResult a = numeric_hessian([](const Vector& x) { return -(x[0] - 1.0) * (x[0] - 1.0); }, vec({0.3}));
  EXPECT_NEAR(a.h(0, 0), -2.0, 1e-6);
  const HessianResult b =
      numeric_hessian([](const Vector& x) { return -x[0] * x[0] - 3.0 * x[1] * x[1]; }, vec({0.4, -0.2}));
  EXPECT_NEAR(b.h(0, 0), -2.0, 1e-5);
  EXPECT_NEAR(b.h(1, 1), -6.0, 1e-5);
  EXPECT_LT(std::abs(b.h(0, 1)), 1e-6);
  EXPECT_EQ(b.h(0, 1), b.h(1, 0));
  const HessianResult c = numeric_hessian([](const Vector& x) { return -std::pow(x[0], 4); }, vec({1.0}));
  EXPECT_NEAR(c.h(0, 0), -12.0, 1e-3);
}

TEST(Hessian, NonFiniteFlagged) {
  const HessianResult h = numeric_hessian([](const Vector& x) { return x[0] > 0.0 ? -kInf : 0.0; }, vec({0.0}));
  EXPECT_FALSE(h.ok);
}

TEST(Inference, ScalarInversion) {
  CoefStructure st;
  st.labels = {"a"};
  st.free_index = {0};
  st.fixed = {false};
  st.base = Vector::Zero(1);
  st.map = Matrix::Identity(1, 1);
  HessianResult h{Matrix::Constant(1, 1, -4.0), true};
  const Inference inf = infer(vec({1.0}), st, h);
  EXPECT_DOUBLE_EQ(inf.vcov(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(inf.sd[0], 0.5);
  EXPECT_DOUBLE_EQ(inf.z[0], 2.0);
  EXPECT_FALSE(inf.degenerate);
}

TEST(Inference, RowArithmetic) {
  CoefStructure st;
  st.labels = {"log(mean)_phi1"};
  st.free_index = {0};
  st.fixed = {false};
  st.base = Vector::Zero(1);
  st.map = Matrix::Identity(1, 1);
  const double sd = 0.0121071;
  HessianResult h{Matrix::Constant(1, 1, -1.0 / (sd * sd)), true};
  const Inference inf = infer(vec({0.9818186}), st, h);
  // Inputs carry 7 decimals; propagate their half-ulp rounding into z.
  const double bound = 81.0946 * (5e-8 / 0.9818186 + 5e-8 / sd) + 5e-5;
  EXPECT_NEAR(inf.z[0], 81.0946, bound);
  EXPECT_NEAR(inf.z[0], 0.9818186 / sd, 1e-9);
  EXPECT_NEAR(stats::two_sided_p(1.959964), 0.05, 1e-6);
}

TEST(Inference, MissingHessianIsNotFabricated) {
  CoefStructure st = build_structure(ModelSpec::make("pois"), {});
  const Inference inf = infer(vec({0.1, 0.1, 0.5}), st, HessianResult{Matrix::Zero(3, 3), false});
  EXPECT_FALSE(inf.ok);
  EXPECT_TRUE(inf.sd.array().isNaN().all());
}

TEST(Inference, SingularFlaggedDegenerate) {
  CoefStructure st = build_structure(ModelSpec::make("pois"), {});
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = -4.0;
  const Inference inf = infer(vec({0.1, 0.1, 0.5}), st, HessianResult{h, true});
  EXPECT_TRUE(inf.degenerate);
  EXPECT_DOUBLE_EQ(inf.sd[0], 0.5);
}

TEST(InfoCriteria, Anchors) {
  EXPECT_NEAR(info_criteria(-2111.266, 10, 100).aic, 4242.532, 1e-9);
  EXPECT_NEAR(info_criteria(-2059.834, 11, 100).aic, 4141.668, 1e-9);
  const InfoCriteria zero = info_criteria(0.0, 0, 10);
  EXPECT_EQ(zero.aic, 0.0);
  EXPECT_EQ(zero.bic, 0.0);
  EXPECT_DOUBLE_EQ(info_criteria(-10.0, 2, 50).bic, 2.0 * std::log(50.0) + 20.0);
}

TEST(Estimate, StaticPoissonIsSampleMean) {
  ModelSpec spec = ModelSpec::make("pois");
  spec.par_static = {true};
  spec.reset_links();
  const SeriesData data = simulated_poisson(500, 8);
  const double mean = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(data.y.size());
  const EstimationResult r = estimate(data, spec);
  ASSERT_EQ(r.names(), std::vector<std::string>{"mean"});
  EXPECT_NEAR(r.coef_est[0], mean, 1e-5);
  // Analytic standard error of the i.i.d. Poisson mean.
  EXPECT_NEAR(r.coef_sd[0], std::sqrt(mean / 500.0), 1e-4);
}

TEST(Estimate, DegenerateDynamicsReduceToIidMle) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(500, 9);
  const double mean = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(data.y.size());
  ConstraintSpec c;
  c.fix_value = fixes(3, {{1, 0.0}, {2, 0.0}});
  const EstimationResult r = estimate(data, spec, c);
  EXPECT_NEAR(std::exp(r.coef_est[0]), mean, 1e-4);
  EXPECT_EQ(r.coef_est[1], 0.0);
  EXPECT_EQ(r.coef_est[2], 0.0);
  EXPECT_EQ(r.coef_sd[1], 0.0);
  EXPECT_TRUE(std::isnan(r.p_value[1]));
  EXPECT_EQ(r.coef_vcov.row(1).cwiseAbs().sum(), 0.0);
  EXPECT_EQ(r.k_free, 1);
}

TEST(Estimate, EverythingFixed) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(100, 10);
  ConstraintSpec c;
  c.fix_value = fixes(3, {{0, 0.1}, {1, 0.08}, {2, 0.85}});
  const EstimationResult r = estimate(data, spec, c);
  const LikelihoodObjective obj(spec, r.structure, data, 0);
  EXPECT_EQ(r.coef_est, vec({0.1, 0.08, 0.85}));
  EXPECT_DOUBLE_EQ(r.loglik, -obj.negative(Vector(0)));
  EXPECT_EQ(r.optim.evaluations, 0);
  EXPECT_DOUBLE_EQ(r.aic, -2.0 * r.loglik);
}

TEST(Estimate, RecoversSimulationTruth) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(3000, 1);
  const EstimationResult r = estimate(data, spec);
  const Vector truth = vec({0.1, 0.08, 0.85});
  for (int i = 0; i < 3; ++i) EXPECT_LE(std::abs(r.coef_est[i] - truth[i]), 3.0 * r.coef_sd[i]) << r.names()[i];
  EXPECT_GE(r.loglik, r.optim.start_loglik);
  EXPECT_TRUE(r.optim.converged);
  EXPECT_DOUBLE_EQ(r.aic, 2.0 * r.k_free - 2.0 * r.loglik);
  EXPECT_DOUBLE_EQ(r.bic, r.k_free * std::log(static_cast<double>(r.t_eff)) - 2.0 * r.loglik);
  EXPECT_EQ(r.t_eff, 3000);
}

TEST(Estimate, TiedCoefficientCovarianceFollowsTheMap) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(800, 12);
  ConstraintSpec c;
  c.fix_value = fixes(3, {{1, 0.0}});
  c.fix_other = {{1, 0, 0.5}};
  const EstimationResult r = estimate(data, spec, c);
  EXPECT_DOUBLE_EQ(r.coef_est[1], 0.5 * r.coef_est[0]);
  EXPECT_NEAR(r.coef_vcov(1, 1), 0.25 * r.coef_vcov(0, 0), 1e-15);
  EXPECT_NEAR(r.coef_sd[1], 0.5 * r.coef_sd[0], 1e-15);
  EXPECT_TRUE(std::isnan(r.z_stat[1]));
}

TEST(Estimate, RandomWalkGetsDefaultInit) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(300, 14);
  ConstraintSpec c;
  c.special = {SpecialStructure::random_walk};
  const EstimationResult r = estimate(data, spec, c);
  ASSERT_TRUE(r.spec.par_init.has_value());
  const double mean = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(data.y.size());
  EXPECT_NEAR((*r.spec.par_init)[0], std::log(mean), 1e-12);
  EXPECT_EQ(r.coef_est[2], 1.0);
  EXPECT_TRUE(std::isfinite(r.loglik));
}

TEST(Estimate, ConditionalLikelihoodSkipsInitRows) {
  ModelSpec spec = ModelSpec::make("pois");
  spec.p = {2};
  const SeriesData data = simulated_poisson(300, 15);
  EstimationOptions o;
  o.conditional = true;
  const EstimationResult r = estimate(data, spec, {}, o);
  EXPECT_EQ(r.lik_skip, 2);
  EXPECT_EQ(r.t_eff, 298);
}

TEST(Estimate, EvaluateAtGivenCoefficients) {
  const ModelSpec spec = ModelSpec::make("pois");
  const SeriesData data = simulated_poisson(300, 16);
  const Vector coef = vec({0.1, 0.08, 0.85});
  const EstimationResult r = evaluate_at(data, spec, coef);
  EXPECT_EQ(r.coef_est, coef);
  EXPECT_DOUBLE_EQ(r.loglik, filter_pass(spec, coef, data).loglik_sum);
  EXPECT_TRUE(r.hessian_ok);
}

}  // namespace
}  // namespace gas
