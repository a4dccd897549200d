// Apache License, Version 2.0, refer to LICENSE.txt

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gas/errors.hpp"
#include "gas/io/config.hpp"
#include "gas/io/data.hpp"
#include "gas/io/results.hpp"

namespace gas::io {
namespace {

DataTable csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in, "test.csv");
}

RunConfig config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(Csv, EmptyCellIsMissing) {
  const DataTable t = csv("quantity\n5\n\n7\n");
  const std::vector<double> y = t.numeric("quantity");
  ASSERT_EQ(y.size(), 3u);
  EXPECT_EQ(y[0], 5.0);
  EXPECT_TRUE(std::isnan(y[1]));
  EXPECT_EQ(y[2], 7.0);
}

TEST(Csv, RegressorMapping) {
  const DataTable t = csv("q,promo\n5,1\n7,0\n");
  const RunConfig cfg = config("[model]\ndistr = pois\n[data]\ny = q\nx = promo\n");
  ModelSpec spec = cfg.model_spec();
  const SeriesData data = cfg.series(t, spec);
  ASSERT_EQ(data.size(), 2u);
  ASSERT_EQ(data.x.size(), 1u);
  EXPECT_EQ(data.x[0].cols(), 1);
  EXPECT_EQ(data.x[0](0, 0), 1.0);
  EXPECT_EQ(data.x[0](1, 0), 0.0);
}

TEST(Csv, NaTokenFeedsZeroScoreRule) {
  const DataTable t = csv("y\n2\nNA\n4\n");
  const RunConfig cfg = config("[model]\ndistr = pois\n");
  const ModelSpec spec = cfg.model_spec();
  const SeriesData data = cfg.series(t, spec);
  EXPECT_TRUE(std::isnan(data.y[1]));
  Vector coef(3);
  coef << 0.1, 0.2, 0.5;
  const FilterOutput f = filter_pass(spec, coef, data);
  EXPECT_EQ(f.score_tv(1, 0), 0.0);
  EXPECT_NEAR(f.par_tv(2, 0), 0.1 + 0.5 * f.par_tv(1, 0), 1e-15);
  EXPECT_EQ(f.used_obs, 2);
}

TEST(Csv, QuotedFieldsAndSpecialValues) {
  const DataTable t = csv("\"date, day\",y\n\"2020-01-01, Wed\",Inf\n2020-01-02,-1.5e2\n");
  EXPECT_EQ(t.cell(0, 0), "2020-01-01, Wed");
  const std::vector<double> y = t.numeric("y");
  EXPECT_EQ(y[0], kInf);
  EXPECT_EQ(y[1], -150.0);
}

TEST(Csv, ErrorsCarryLocation) {
  EXPECT_NE(error_of([] { csv("a,b\n1,2\n3\n"); }).find("row 2"), std::string::npos);
  EXPECT_NE(error_of([] { csv("a,b\n1,x\n").numeric("b"); }).find("'b'"), std::string::npos);
  EXPECT_NE(error_of([] { csv("a,b\n1,x\n").numeric("b"); }).find("row 1"), std::string::npos);
  EXPECT_THROW(csv("a,a\n1,2\n"), DataError);
  EXPECT_THROW(csv("a\n1\n").numeric("z"), DataError);
  const RunConfig cfg = config("[model]\ndistr = pois\n[data]\ny = q\n");
  EXPECT_THROW(cfg.series(csv("y\n1\n"), cfg.model_spec()), DataError);
}

TEST(Config, Defaults) {
  const RunConfig cfg = config("[model]\ndistr = negbin\n");
  const ModelSpec spec = cfg.model_spec();
  EXPECT_EQ(spec.scaling, Scaling::unit);
  EXPECT_EQ(spec.regress, Regress::joint);
  EXPECT_EQ(spec.p, std::vector<int>(2, 1));
  EXPECT_EQ(spec.q, std::vector<int>(2, 1));
  EXPECT_EQ(cfg.rep_boot, 1000);
  EXPECT_EQ(cfg.rep_ahead, 1000);
  EXPECT_EQ(cfg.rep_gen, 1000);
  EXPECT_EQ(cfg.quant, (std::vector<double>{0.025, 0.975}));
  EXPECT_EQ(spec.tv_params(), std::vector<int>{0});
}

TEST(Config, FullModelAndConstraints) {
  const RunConfig cfg = config(
      "[model]\ndistr = norm\nscaling = fisher_inv\nregress = sep\np = 1, 2\nq = 1\npar_static = false, false\n"
      "[fix_value]\nlog(var)_alpha1 = 0.0\n"
      "[fix_other]\nlog(var)_alpha1 = mean_alpha1 * 0.5\n"
      "[bound_upper]\nmean_phi1 = 0.99\n"
      "[task]\nseed = 17\nquant = 0.1, 0.9\n");
  const ModelSpec spec = cfg.model_spec();
  EXPECT_EQ(spec.scaling, Scaling::fisher_inv);
  EXPECT_EQ(spec.regress, Regress::sep);
  EXPECT_EQ(spec.p, (std::vector<int>{1, 2}));
  const ConstraintSpec c = cfg.constraints(spec);
  const CoefLayout layout(spec);
  const int fixed = layout.index_of("log(var)_alpha1");
  ASSERT_TRUE(c.fix_value[static_cast<std::size_t>(fixed)].has_value());
  ASSERT_EQ(c.fix_other.size(), 1u);
  EXPECT_EQ(c.fix_other[0].estimated, layout.index_of("mean_alpha1"));
  EXPECT_EQ(c.fix_other[0].multiplier, 0.5);
  EXPECT_EQ(*c.upper[static_cast<std::size_t>(layout.index_of("mean_phi1"))], 0.99);
  EXPECT_EQ(cfg.seed, 17u);
  EXPECT_EQ(cfg.quant, (std::vector<double>{0.1, 0.9}));
}

TEST(Config, UnknownKeysNamed) {
  EXPECT_NE(error_of([] { config("[model]\ndistr = pois\nscalling = unit\n"); }).find("model.scalling"),
            std::string::npos);
  EXPECT_THROW(config("[modle]\ndistr = pois\n"), SpecError);
  EXPECT_NE(error_of([] { config("[model]\ndistr = pois\nscaling = banana\n"); }).find("model.scaling"),
            std::string::npos);
  const RunConfig cfg = config("[model]\ndistr = pois\n[fix_value]\nlog(mean)_gamma1 = 1\n");
  EXPECT_NE(error_of([&] { cfg.constraints(cfg.model_spec()); }).find("log(mean)_gamma1"), std::string::npos);
  EXPECT_THROW(config("[model]\ndistr = nope\n").model_spec(), SpecError);
}

TEST(Results, RealsRoundTripExactly) {
  const std::vector<double> values{0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0), kNaN, kInf, -kInf};
  for (double v : values) {
    double back = 0.0;
    ASSERT_TRUE(parse_cell(format_real(v), back)) << format_real(v);
    if (std::isnan(v)) {
      EXPECT_TRUE(std::isnan(back));
    } else {
      EXPECT_EQ(back, v) << format_real(v);
    }
  }
}

TEST(Results, EstimationRoundTripAndAic) {
  const ModelSpec spec = ModelSpec::make("pois");
  Vector truth(3);
  truth << 0.1, 0.08, 0.85;
  const SimulationResult sim = simulate_series(spec, truth, 400, 3);
  const EstimationResult est = estimate({{sim.y_sim.begin(), sim.y_sim.end()}, {}}, spec);
  ResultDocument doc;
  add_model(doc, spec);
  add_estimation(doc, est, true);
  std::istringstream in(doc.str());
  const ResultDocument back = ResultDocument::parse(in);

  const ResultSection* e = back.find_section("estimation");
  ASSERT_NE(e, nullptr);
  const double ll = e->real("loglik");
  const double k = e->real("k_free");
  EXPECT_EQ(ll, est.loglik);
  EXPECT_EQ(2.0 * k - 2.0 * ll, e->real("aic"));

  const ResultTable* coefs = back.table("coefficients");
  ASSERT_NE(coefs, nullptr);
  EXPECT_EQ(coefs->text("name"), est.names());
  const std::vector<double> written = coefs->numeric("estimate");
  const std::vector<double> sds = coefs->numeric("std_error");
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_EQ(written[static_cast<std::size_t>(i)], est.coef_est[i]);
    EXPECT_EQ(sds[static_cast<std::size_t>(i)], est.coef_sd[i]);
  }
  const ResultTable* vcov = back.table("vcov");
  ASSERT_NE(vcov, nullptr);
  EXPECT_EQ(vcov->rows.size(), 3u);
  const ResultTable* filter = back.table("filter");
  ASSERT_NE(filter, nullptr);
  const std::vector<double> par = filter->numeric("par_log(mean)");
  ASSERT_EQ(par.size(), 400u);
  for (std::size_t t = 0; t < 400; ++t) EXPECT_EQ(par[t], est.filter.par_tv(static_cast<Eigen::Index>(t), 0));

  ResultDocument without;
  add_estimation(without, est, false);
  EXPECT_EQ(without.table("vcov"), nullptr);
}

TEST(Results, ForecastRowsFollowTheSample) {
  const ModelSpec spec = ModelSpec::make("pois");
  Vector coef(3);
  coef << 0.1, 0.08, 0.85;
  ForecastOptions o;
  o.t_ahead = 4;
  const SeriesData data{{1, 2, 3, 4, 5}, {}};
  ResultDocument doc;
  add_forecast(doc, spec, forecast_mean_path(spec, coef, data, o), data.size());
  const ResultTable* t = doc.table("forecast");
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->numeric("t"), (std::vector<double>{6, 7, 8, 9}));
}

TEST(Results, BootstrapSamplesOnRequest) {
  BootstrapResult b;
  b.probs = {0.5};
  b.coef_samples = Matrix::Random(7, 2);
  b.coef_mean = Vector::Zero(2);
  b.coef_sd = Vector::Zero(2);
  b.coef_quant = Matrix::Zero(2, 1);
  ResultDocument with;
  add_bootstrap(with, {"a", "b"}, b, true);
  ASSERT_NE(with.table("coef_samples"), nullptr);
  EXPECT_EQ(with.table("coef_samples")->rows.size(), 7u);
  ResultDocument without;
  add_bootstrap(without, {"a", "b"}, b, false);
  EXPECT_EQ(without.table("coef_samples"), nullptr);
}

TEST(Results, ParseErrorsHaveLineNumbers) {
  std::istringstream in("[a]\nx = 1\ngarbage line\n");
  EXPECT_NE(error_of([&] { ResultDocument::parse(in); }).find("line 3"), std::string::npos);
}

TEST(Results, FileErrorsNamePath) {
  ResultDocument doc;
  doc.section("a").set("x", 1.0);
  EXPECT_NE(error_of([&] { write_results(doc, "/nonexistent/dir/out.txt"); }).find("/nonexistent/dir/out.txt"),
            std::string::npos);
  const auto path = std::filesystem::temp_directory_path() / "gas_io_roundtrip.txt";
  write_results(doc, path.string());
  EXPECT_EQ(read_results(path.string()).find_section("a")->real("x"), 1.0);
  std::filesystem::remove(path);
}

TEST(Summary, PrintedShape) {
  const ModelSpec spec = ModelSpec::make("pois");
  Vector truth(3);
  truth << 0.1, 0.08, 0.85;
  const SimulationResult sim = simulate_series(spec, truth, 300, 4);
  const EstimationResult est = estimate({{sim.y_sim.begin(), sim.y_sim.end()}, {}}, spec);
  const std::string s = format_summary(est);
  EXPECT_NE(s.find("Estimate"), std::string::npos);
  EXPECT_NE(s.find("Std. Error"), std::string::npos);
  EXPECT_NE(s.find("Z-Test"), std::string::npos);
  EXPECT_NE(s.find("Pr(>|Z|)"), std::string::npos);
  EXPECT_NE(s.find("log(mean)_phi1"), std::string::npos);
  EXPECT_NE(s.find("Log-Likelihood: "), std::string::npos);
  EXPECT_NE(s.find(", AIC: "), std::string::npos);
  EXPECT_NE(s.find(", BIC: "), std::string::npos);
}

}  // namespace
}  // namespace gas::io
