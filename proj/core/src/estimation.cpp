// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/estimation.hpp"

#include <cmath>
#include <functional>

#include "gas/errors.hpp"

namespace gas {

std::string_view to_string(SpecialStructure s) {
  switch (s) {
    case SpecialStructure::panel_structure: return "panel_structure";
    case SpecialStructure::zero_sum_intercept: return "zero_sum_intercept";
    case SpecialStructure::random_walk: return "random_walk";
  }
  return "?";
}

std::optional<SpecialStructure> parse_special(std::string_view text) {
  for (auto s : {SpecialStructure::panel_structure, SpecialStructure::zero_sum_intercept,
                 SpecialStructure::random_walk}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::vector<FixOther> ConstraintSpec::fix_other_from_matrix(const Matrix& dense) {
  if (dense.rows() != dense.cols()) throw SpecError("fix_other must be a square matrix");
  std::vector<FixOther> out;
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      if (!std::isnan(dense(i, j))) out.push_back({static_cast<int>(i), static_cast<int>(j), dense(i, j)});
    }
  }
  return out;
}

Vector CoefStructure::expand(const Vector& free) const { return base + map * free; }

Vector CoefStructure::free_part(const Vector& full) const {
  Vector out(free_count());
  for (int i = 0; i < free_count(); ++i) out[i] = full[free_index[static_cast<std::size_t>(i)]];
  return out;
}

namespace {

// Named structures lowered to fixed values and ties.
void lower_special(SpecialStructure special, const ModelSpec& spec, const CoefLayout& layout,
                   std::vector<std::optional<double>>& value, std::vector<FixOther>& ties) {
  const std::vector<int> tv = spec.tv_params();
  auto fix = [&](int idx, double v) {
    if (value[static_cast<std::size_t>(idx)]) {
      throw SpecError("coefficient '" + layout.names()[static_cast<std::size_t>(idx)] + "' is fixed twice");
    }
    value[static_cast<std::size_t>(idx)] = v;
  };
  switch (special) {
    case SpecialStructure::random_walk:
      if (tv.empty()) throw SpecError("random_walk needs a time-varying parameter");
      for (int i : tv) {
        const ParamBlock& b = layout.block(i);
        if (b.n_phi < 1) throw SpecError("random_walk needs an autoregressive order of at least 1");
        fix(b.omega, 0.0);
        fix(b.phi, 1.0);
      }
      break;
    case SpecialStructure::zero_sum_intercept: {
      if (tv.size() < 2) throw SpecError("zero_sum_intercept needs at least two time-varying parameters");
      const ParamBlock& last = layout.block(tv.back());
      fix(last.omega, 0.0);
      for (std::size_t k = 0; k + 1 < tv.size(); ++k) ties.push_back({last.omega, layout.block(tv[k]).omega, -1.0});
      break;
    }
    case SpecialStructure::panel_structure: {
      if (tv.size() < 2) throw SpecError("panel_structure needs at least two time-varying parameters");
      const ParamBlock& first = layout.block(tv.front());
      for (std::size_t k = 1; k < tv.size(); ++k) {
        const ParamBlock& b = layout.block(tv[k]);
        if (b.n_alpha != first.n_alpha || b.n_phi != first.n_phi) {
          throw SpecError("panel_structure needs equal orders across time-varying parameters");
        }
        for (int j = 0; j < b.n_alpha; ++j) {
          fix(b.alpha + j, 0.0);
          ties.push_back({b.alpha + j, first.alpha + j, 1.0});
        }
        for (int j = 0; j < b.n_phi; ++j) {
          fix(b.phi + j, 0.0);
          ties.push_back({b.phi + j, first.phi + j, 1.0});
        }
      }
      break;
    }
  }
}

}  // namespace

CoefStructure build_structure(const ModelSpec& spec, const ConstraintSpec& constraints) {
  const CoefLayout layout(spec);
  const int n = layout.size();
  const auto un = static_cast<std::size_t>(n);
  auto check_len = [&](std::size_t len, const char* what) {
    if (len != 0 && len != un) {
      throw SpecError(std::string(what) + " must have " + std::to_string(n) + " entries, got " + std::to_string(len));
    }
  };
  check_len(constraints.fix_value.size(), "coef_fix_value");
  check_len(constraints.lower.size(), "coef_bound_lower");
  check_len(constraints.upper.size(), "coef_bound_upper");

  std::vector<std::optional<double>> value(un);
  std::vector<FixOther> ties;
  for (SpecialStructure s : constraints.special) lower_special(s, spec, layout, value, ties);
  for (std::size_t i = 0; i < constraints.fix_value.size(); ++i) {
    if (!constraints.fix_value[i]) continue;
    if (value[i]) throw SpecError("coefficient '" + layout.names()[i] + "' is fixed by a named structure and a value");
    value[i] = constraints.fix_value[i];
  }
  ties.insert(ties.end(), constraints.fix_other.begin(), constraints.fix_other.end());

  CoefStructure out;
  out.labels = layout.names();
  out.fixed.assign(un, false);
  for (std::size_t i = 0; i < un; ++i) out.fixed[i] = value[i].has_value();
  for (const FixOther& t : ties) {
    if (t.fixed < 0 || t.fixed >= n || t.estimated < 0 || t.estimated >= n) {
      throw SpecError("coef_fix_other refers to a coefficient index out of range");
    }
    if (!out.fixed[static_cast<std::size_t>(t.fixed)]) {
      throw SpecError("coef_fix_other row of estimated coefficient '" + out.labels[static_cast<std::size_t>(t.fixed)] +
                      "' must be empty");
    }
    if (out.fixed[static_cast<std::size_t>(t.estimated)]) {
      throw SpecError("cyclic coef_fix_other reference: '" + out.labels[static_cast<std::size_t>(t.fixed)] +
                      "' is tied to fixed coefficient '" + out.labels[static_cast<std::size_t>(t.estimated)] + "'");
    }
  }

  for (int i = 0; i < n; ++i) {
    if (!out.fixed[static_cast<std::size_t>(i)]) out.free_index.push_back(i);
  }
  std::vector<int> column(un, -1);
  for (int j = 0; j < out.free_count(); ++j) column[static_cast<std::size_t>(out.free_index[static_cast<std::size_t>(j)])] = j;

  out.base = Vector::Zero(n);
  out.map = Matrix::Zero(n, out.free_count());
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (out.fixed[ui]) {
      out.base[i] = *value[ui];
    } else {
      out.map(i, column[ui]) = 1.0;
    }
  }
  for (const FixOther& t : ties) out.map(t.fixed, column[static_cast<std::size_t>(t.estimated)]) += t.multiplier;

  out.lower = Vector::Constant(n, -kInf);
  out.upper = Vector::Constant(n, kInf);
  for (std::size_t i = 0; i < constraints.lower.size(); ++i) {
    if (constraints.lower[i]) out.lower[static_cast<Eigen::Index>(i)] = *constraints.lower[i];
  }
  for (std::size_t i = 0; i < constraints.upper.size(); ++i) {
    if (constraints.upper[i]) out.upper[static_cast<Eigen::Index>(i)] = *constraints.upper[i];
  }
  for (int i = 0; i < n; ++i) {
    if (out.lower[i] > out.upper[i]) {
      throw SpecError("lower bound exceeds upper bound for '" + out.labels[static_cast<std::size_t>(i)] + "'");
    }
    const bool pure_fix = out.fixed[static_cast<std::size_t>(i)] && out.map.row(i).isZero();
    if (pure_fix && (out.base[i] < out.lower[i] || out.base[i] > out.upper[i])) {
      throw SpecError("fixed value of '" + out.labels[static_cast<std::size_t>(i)] + "' violates its bounds");
    }
  }
  out.free_bounds = {out.free_part(out.lower), out.free_part(out.upper)};
  return out;
}

LikelihoodObjective::LikelihoodObjective(ModelSpec spec, CoefStructure structure, const SeriesData& data, int lik_skip)
    : spec_(std::move(spec)), structure_(std::move(structure)), data_(&data), lik_skip_(lik_skip) {}

double LikelihoodObjective::loglik_full(const Vector& full) const {
  if (!full.allFinite()) return -kInf;
  try {
    const FilterOutput out = filter_pass(spec_, full, *data_, lik_skip_);
    return std::isfinite(out.loglik_sum) ? out.loglik_sum : -kInf;
  } catch (const SpecError&) {
    return -kInf;
  } catch (const DomainError&) {
    return -kInf;
  }
}

double LikelihoodObjective::loglik(const Vector& free) const { return loglik_full(structure_.expand(free)); }

double LikelihoodObjective::negative(const Vector& free) const {
  if (!structure_.free_bounds.contains(free)) return kInf;
  const Vector full = structure_.expand(free);
  for (Eigen::Index i = 0; i < full.size(); ++i) {
    if (full[i] < structure_.lower[i] || full[i] > structure_.upper[i]) return kInf;
  }
  const double ll = loglik_full(full);
  return std::isfinite(ll) ? -ll : kInf;
}

namespace {

constexpr double kGridAlpha[] = {0.0, 0.05};
constexpr double kGridPhi[] = {0.0, 0.5, 0.9};

struct GridChoice {
  double alpha;
  double phi;
};

std::vector<GridChoice> grid_choices(const ParamBlock& b) {
  std::vector<GridChoice> out;
  const std::vector<double> alphas = b.n_alpha > 0 ? std::vector<double>(std::begin(kGridAlpha), std::end(kGridAlpha))
                                                   : std::vector<double>{0.0};
  const std::vector<double> phis =
      b.n_phi > 0 ? std::vector<double>(std::begin(kGridPhi), std::end(kGridPhi)) : std::vector<double>{0.0};
  for (double a : alphas) {
    for (double p : phis) out.push_back({a, p});
  }
  return out;
}

ParamVector linked_start(const ModelSpec& spec, const SeriesData& data) {
  return spec.links().to_linked(start(*spec.distr, data.y));
}

}  // namespace

Vector grid_start(const ModelSpec& spec, const CoefStructure& structure, const SeriesData& data, int lik_skip) {
  const CoefLayout layout(spec);
  const ParamVector level = linked_start(spec, data);
  const std::vector<int> tv = spec.tv_params();
  std::vector<std::vector<GridChoice>> choices;
  for (int i : tv) choices.push_back(grid_choices(layout.block(i)));

  Vector full = Vector::Zero(layout.size());
  for (const ParamBlock& b : layout.blocks()) {
    if (!b.time_varying) full[b.level] = level[b.param];
  }

  const LikelihoodObjective objective(spec, structure, data, lik_skip);
  Vector best;
  double best_ll = -kInf;
  std::vector<std::size_t> pick(tv.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t depth) {
    if (depth < tv.size()) {
      for (std::size_t c = 0; c < choices[depth].size(); ++c) {
        pick[depth] = c;
        visit(depth + 1);
      }
      return;
    }
    for (std::size_t k = 0; k < tv.size(); ++k) {
      const ParamBlock& b = layout.block(tv[k]);
      const GridChoice& g = choices[k][pick[k]];
      full.segment(b.beta, b.n_beta).setZero();
      full.segment(b.alpha, b.n_alpha).setZero();
      full.segment(b.phi, b.n_phi).setZero();
      if (b.n_alpha > 0) full[b.alpha] = g.alpha;
      if (b.n_phi > 0) full[b.phi] = g.phi;
      const double target = level[b.param];
      full[b.omega] = spec.regress == Regress::joint ? (1.0 - g.phi) * target : target;
    }
    const Vector free = structure.free_bounds.clamp(structure.free_part(full));
    const double ll = -objective.negative(free);
    if (std::isfinite(ll) && ll > best_ll) {
      best_ll = ll;
      best = free;
    }
  };
  visit(0);
  if (!std::isfinite(best_ll)) throw EstimationError("no starting grid point yields a finite likelihood");
  return best;
}

namespace {

// True when some time-varying parameter has all autoregressive coefficients
// pure-fixed with a sum of one, so the long-term value does not exist.
bool fixed_unit_root(const ModelSpec& spec, const CoefStructure& structure) {
  if (spec.regress != Regress::joint) return false;
  const CoefLayout layout(spec);
  for (int i : spec.tv_params()) {
    const ParamBlock& b = layout.block(i);
    if (b.n_phi == 0) continue;
    double sum = 0.0;
    bool all_fixed = true;
    for (int j = b.phi; j < b.phi + b.n_phi; ++j) {
      if (!structure.fixed[static_cast<std::size_t>(j)] || !structure.map.row(j).isZero()) all_fixed = false;
      sum += structure.base[j];
    }
    if (all_fixed && std::abs(1.0 - sum) <= 1e-8) return true;
  }
  return false;
}

}  // namespace

namespace {

EstimationResult prepare(const SeriesData& data, ModelSpec spec, const ConstraintSpec& constraints,
                         const EstimationOptions& options) {
  sync_regressor_counts(spec, data);
  spec.validate();
  if (data.size() == 0) throw DataError("series is empty");

  EstimationResult res;
  res.structure = build_structure(spec, constraints);
  if (!spec.par_init && fixed_unit_root(spec, res.structure)) {
    const ParamVector lv = linked_start(spec, data);
    spec.par_init = std::vector<double>(lv.data(), lv.data() + lv.size());
  }
  res.spec = spec;
  res.constraints = constraints;
  res.options = options;
  res.data = data;
  res.lik_skip = options.conditional ? spec.init_rows() : options.lik_skip;
  return res;
}

// Filter, information criteria and inference at res.coef_est.
void finish(EstimationResult& res, const LikelihoodObjective& objective, const Vector& free_opt) {
  const CoefStructure& st = res.structure;
  res.filter = filter_pass(res.spec, res.coef_est, res.data, res.lik_skip);
  res.loglik = res.filter.loglik_sum;
  res.k_free = st.free_count();
  res.t_eff = res.filter.used_obs;
  const InfoCriteria ic = info_criteria(res.loglik, res.k_free, res.t_eff);
  res.aic = ic.aic;
  res.bic = ic.bic;

  HessianResult hess;
  if (st.free_count() == 0) {
    hess.h = Matrix(0, 0);
    hess.ok = true;
  } else if (res.options.compute_hessian) {
    hess = numeric_hessian([&](const Vector& x) { return objective.loglik(x); }, free_opt);
  }
  if (res.options.compute_hessian || st.free_count() == 0) {
    const Inference inf = infer(res.coef_est, st, hess);
    res.coef_vcov = inf.vcov;
    res.coef_sd = inf.sd;
    res.z_stat = inf.z;
    res.p_value = inf.p;
    res.hessian_ok = inf.ok;
    res.degenerate = inf.degenerate;
  } else {
    const auto n = static_cast<Eigen::Index>(st.size());
    res.coef_vcov = Matrix::Constant(n, n, kNaN);
    res.coef_sd = res.z_stat = res.p_value = Vector::Constant(n, kNaN);
  }
}

}  // namespace

EstimationResult estimate(const SeriesData& data, ModelSpec spec, const ConstraintSpec& constraints,
                          const EstimationOptions& options) {
  EstimationResult res = prepare(data, std::move(spec), constraints, options);
  const CoefStructure& st = res.structure;
  const LikelihoodObjective objective(res.spec, st, res.data, res.lik_skip);

  Vector start_free;
  if (options.coef_start) {
    if (options.coef_start->size() != st.size()) {
      throw SpecError("coef_start must have " + std::to_string(st.size()) + " entries");
    }
    start_free = st.free_part(*options.coef_start);
  } else {
    start_free = grid_start(res.spec, st, res.data, res.lik_skip);
    res.optim.from_grid = true;
  }
  res.optim.start = start_free;
  res.optim.start_loglik = objective.loglik(start_free);
  if (!std::isfinite(res.optim.start_loglik)) throw EstimationError("likelihood is not finite at the starting values");

  Vector free_opt = start_free;
  if (st.free_count() > 0) {
    OptimizerOptions oo = options.optim;
    if (options.progress) oo.progress = options.progress;
    const OptimResult opt =
        options.optimizer([&](const Vector& x) { return objective.negative(x); }, start_free, st.free_bounds, oo);
    res.optim.evaluations = opt.evaluations;
    res.optim.converged = opt.converged;
    free_opt = opt.value <= -res.optim.start_loglik ? opt.x : start_free;
  } else {
    res.optim.converged = true;
  }
  res.coef_est = st.expand(free_opt);
  finish(res, objective, free_opt);
  return res;
}

EstimationResult evaluate_at(const SeriesData& data, ModelSpec spec, const Vector& coef,
                             const ConstraintSpec& constraints, const EstimationOptions& options) {
  EstimationResult res = prepare(data, std::move(spec), constraints, options);
  const CoefStructure& st = res.structure;
  if (coef.size() != st.size()) throw SpecError("expected " + std::to_string(st.size()) + " coefficients");
  const Vector free = st.free_part(coef);
  if ((st.expand(free) - coef).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + coef.cwiseAbs().maxCoeff())) {
    throw SpecError("coefficients violate the fixed values or ties of the constraints");
  }
  const LikelihoodObjective objective(res.spec, st, res.data, res.lik_skip);
  res.optim.start = free;
  res.optim.start_loglik = objective.loglik(free);
  if (!std::isfinite(res.optim.start_loglik)) throw EstimationError("likelihood is not finite at the given coefficients");
  res.optim.converged = true;
  res.coef_est = st.expand(free);
  finish(res, objective, free);
  return res;
}

}  // namespace gas
