// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gas/errors.hpp"

namespace gas {

namespace {

constexpr double kUnitRootTol = 1e-8;
constexpr double kPinvCutoff = 1e-10;

// Symmetric pseudo-inverse (power -1) or inverse square root (power -1/2).
// Eigenvalues below cutoff * max eigenvalue, including negative ones, are dropped.
ParamMatrix inverse_power(const ParamMatrix& m, bool sqrt_root) {
  const auto n = m.rows();
  if (n == 1) {
    ParamMatrix out(1, 1);
    const double v = m(0, 0);
    out(0, 0) = v > 0.0 ? (sqrt_root ? 1.0 / std::sqrt(v) : 1.0 / v) : 0.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ParamMatrix> eig(m);
  const auto& values = eig.eigenvalues();
  const double cutoff = kPinvCutoff * values.maxCoeff();
  ParamVector inv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = values[i];
    inv[i] = (v > cutoff && v > 0.0) ? (sqrt_root ? 1.0 / std::sqrt(v) : 1.0 / v) : 0.0;
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

Matrix SeriesData::regressors(int param) const {
  const auto T = static_cast<Eigen::Index>(y.size());
  if (x.empty()) return Matrix(T, 0);
  return x.at(static_cast<std::size_t>(param));
}

void sync_regressor_counts(ModelSpec& spec, const SeriesData& data) {
  const int k = spec.param_count();
  spec.m.assign(static_cast<std::size_t>(k), 0);
  if (data.x.empty()) return;
  if (static_cast<int>(data.x.size()) != k) throw DataError("regressors must be given per distribution parameter");
  for (int i = 0; i < k; ++i) {
    const Matrix& xi = data.x[static_cast<std::size_t>(i)];
    if (xi.cols() > 0 && !spec.time_varying(i)) {
      throw SpecError("regressors supplied for static parameter '" +
                      spec.distr->param_names[static_cast<std::size_t>(i)] + "'");
    }
    spec.m[static_cast<std::size_t>(i)] = static_cast<int>(xi.cols());
  }
}

ParamVector scale_score(Scaling scaling, std::span<const int> tv, const ParamVector& raw_tv,
                        const ParamMatrix& fisher_full) {
  const auto k = static_cast<Eigen::Index>(tv.size());
  switch (scaling) {
    case Scaling::unit:
      return raw_tv;
    case Scaling::fisher_inv:
    case Scaling::fisher_inv_sqrt: {
      ParamMatrix sub(k, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = fisher_full(tv[static_cast<std::size_t>(i)], tv[static_cast<std::size_t>(j)]);
      }
      return inverse_power(sub, scaling == Scaling::fisher_inv_sqrt) * raw_tv;
    }
    case Scaling::full_fisher_inv:
    case Scaling::full_fisher_inv_sqrt: {
      const ParamMatrix full = inverse_power(fisher_full, scaling == Scaling::full_fisher_inv_sqrt);
      ParamMatrix sub(k, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = full(tv[static_cast<std::size_t>(i)], tv[static_cast<std::size_t>(j)]);
      }
      return sub * raw_tv;
    }
    case Scaling::diag_fisher_inv:
    case Scaling::diag_fisher_inv_sqrt: {
      ParamVector out(k);
      for (Eigen::Index i = 0; i < k; ++i) {
        const double d = fisher_full(tv[static_cast<std::size_t>(i)], tv[static_cast<std::size_t>(i)]);
        const double w = d > 0.0 ? (scaling == Scaling::diag_fisher_inv ? 1.0 / d : 1.0 / std::sqrt(d)) : 0.0;
        out[i] = w * raw_tv[i];
      }
      return out;
    }
  }
  return raw_tv;
}

Recursion::Recursion(const ModelSpec& spec, const Vector& coef) : spec_(spec) {
  const CoefLayout layout(spec_);
  if (coef.size() != layout.size()) {
    throw SpecError("expected " + std::to_string(layout.size()) + " coefficients, got " + std::to_string(coef.size()));
  }
  links_ = spec_.links();
  tv_ = spec_.tv_params();
  init_rows_ = spec_.init_rows();
  linked_template_ = ParamVector::Zero(spec_.param_count());
  for (const ParamBlock& b : layout.blocks()) {
    if (!b.time_varying) {
      linked_template_[b.param] = coef[b.level];
      continue;
    }
    coefs_.push_back({b.param, coef[b.omega], coef.segment(b.beta, b.n_beta), coef.segment(b.alpha, b.n_alpha),
                      coef.segment(b.phi, b.n_phi)});
  }
}

std::vector<Vector> Recursion::tv_means(const std::vector<Matrix>& x_tv) const {
  std::vector<Vector> out;
  out.reserve(x_tv.size());
  for (const Matrix& x : x_tv) {
    out.push_back(x.rows() > 0 ? Vector(x.colwise().mean().transpose()) : Vector::Zero(x.cols()));
  }
  return out;
}

Vector Recursion::long_term(const std::vector<Vector>& x_means_tv) const {
  Vector out(tv_count());
  for (int i = 0; i < tv_count(); ++i) {
    const TvCoefs& c = coefs_[static_cast<std::size_t>(i)];
    double level = c.omega;
    if (c.beta.size() > 0) level += c.beta.dot(x_means_tv.at(static_cast<std::size_t>(i)));
    if (spec_.regress == Regress::joint) {
      const double denom = 1.0 - c.phi.sum();
      if (std::abs(denom) <= kUnitRootTol) {
        throw SpecError("unit-root recursion for '" + spec_.distr->param_names[static_cast<std::size_t>(c.param)] +
                        "': the long-term value is undefined; supply par_init");
      }
      level /= denom;
    }
    out[i] = level;
  }
  return out;
}

Vector Recursion::initial(const std::vector<Vector>& x_means_tv) const {
  if (!spec_.par_init) return long_term(x_means_tv);
  Vector out(tv_count());
  for (int i = 0; i < tv_count(); ++i) out[i] = (*spec_.par_init)[static_cast<std::size_t>(tv_[static_cast<std::size_t>(i)])];
  return out;
}

void Recursion::initialize(Eigen::Index t, Matrix& f, Matrix& e, const Vector& init, const Vector& f_bar) const {
  for (int i = 0; i < tv_count(); ++i) {
    f(t, i) = init[i];
    e(t, i) = spec_.regress == Regress::sep ? init[i] - f_bar[i] : 0.0;
  }
}

void Recursion::advance(Eigen::Index t, Matrix& f, const Matrix& s, Matrix& e, const std::vector<Matrix>& x_tv) const {
  for (int i = 0; i < tv_count(); ++i) {
    const TvCoefs& c = coefs_[static_cast<std::size_t>(i)];
    double dyn = 0.0;
    for (Eigen::Index j = 0; j < c.alpha.size(); ++j) dyn += c.alpha[j] * s(t - 1 - j, i);
    double reg = c.omega;
    if (c.beta.size() > 0) reg += x_tv[static_cast<std::size_t>(i)].row(t).dot(c.beta);
    if (spec_.regress == Regress::joint) {
      for (Eigen::Index k = 0; k < c.phi.size(); ++k) dyn += c.phi[k] * f(t - 1 - k, i);
      f(t, i) = reg + dyn;
      e(t, i) = 0.0;
    } else {
      for (Eigen::Index k = 0; k < c.phi.size(); ++k) dyn += c.phi[k] * e(t - 1 - k, i);
      e(t, i) = dyn;
      f(t, i) = reg + dyn;
    }
  }
}

ParamVector Recursion::natural(const Matrix& f, Eigen::Index t) const {
  ParamVector linked = linked_template_;
  for (int i = 0; i < tv_count(); ++i) linked[tv_[static_cast<std::size_t>(i)]] = f(t, i);
  return links_.to_natural(linked);
}

bool Recursion::in_support(const ParamVector& natural) const {
  return natural.allFinite() && spec_.distr->fn.in_support(natural);
}

Recursion::Step Recursion::evaluate(double y, const ParamVector& natural) const {
  Step step;
  const int k = tv_count();
  if (is_missing(y)) {
    step.loglik = kNaN;
    step.scaled = ParamVector::Zero(k);
    return step;
  }
  const auto& fn = spec_.distr->fn;
  if (!fn.in_sample_space(y)) {
    step.loglik = -kInf;
    step.scaled = ParamVector::Zero(k);
    step.finite = false;
    return step;
  }
  step.loglik = fn.loglik(y, natural);
  const ParamVector jac = links_.inverse_jacobian(natural);
  const ParamVector raw = fn.score(y, natural).cwiseProduct(jac);
  ParamVector raw_tv(k);
  for (int i = 0; i < k; ++i) raw_tv[i] = raw[tv_[static_cast<std::size_t>(i)]];
  if (spec_.scaling == Scaling::unit) {
    step.scaled = raw_tv;
  } else {
    const ParamMatrix info = jac.asDiagonal() * fn.fisher(natural) * jac.asDiagonal();
    step.scaled = scale_score(spec_.scaling, tv_, raw_tv, info);
  }
  step.finite = std::isfinite(step.loglik) && step.scaled.allFinite();
  return step;
}

std::vector<Matrix> Recursion::tv_regressors(const SeriesData& data) const {
  std::vector<Matrix> out;
  out.reserve(tv_.size());
  for (std::size_t i = 0; i < tv_.size(); ++i) {
    Matrix x = data.regressors(tv_[i]);
    if (x.rows() != static_cast<Eigen::Index>(data.size())) throw DataError("regressor rows do not match series length");
    if (x.cols() != coefs_[i].beta.size()) throw DataError("regressor columns do not match the model's regressor count");
    if (x.size() > 0 && !x.allFinite()) throw DataError("regressors contain missing values");
    out.push_back(std::move(x));
  }
  return out;
}

Vector long_term_init(const ModelSpec& spec, const Vector& coef, const std::vector<Vector>& x_means) {
  const Recursion rec(spec, coef);
  std::vector<Vector> tv_means;
  for (int p : rec.tv_params()) {
    tv_means.push_back(x_means.empty() ? Vector::Zero(spec.regressor_count(p)) : x_means.at(static_cast<std::size_t>(p)));
  }
  return rec.long_term(tv_means);
}

FilterOutput filter_pass(const ModelSpec& spec, const Vector& coef, const SeriesData& data, int lik_skip) {
  const auto T = static_cast<Eigen::Index>(data.size());
  if (T < 1) throw DataError("series is empty");
  if (lik_skip < 0 || lik_skip >= T) throw SpecError("lik_skip must lie in [0, T)");
  const Recursion rec(spec, coef);
  const std::vector<Matrix> x_tv = rec.tv_regressors(data);
  const std::vector<Vector> x_means = rec.tv_means(x_tv);
  const int k = rec.tv_count();

  FilterOutput out;
  out.tv_params = rec.tv_params();
  out.par_tv = Matrix::Constant(T, k, kNaN);
  out.score_tv = Matrix::Constant(T, k, kNaN);
  out.err_tv = Matrix::Zero(T, k);
  out.loglik_t = Vector::Constant(T, kNaN);

  Vector f_bar;
  if (spec.regress == Regress::sep || !spec.par_init) {
    f_bar = rec.long_term(x_means);
  } else {
    try {
      f_bar = rec.long_term(x_means);
    } catch (const SpecError&) {
      f_bar = Vector::Constant(k, kNaN);
    }
  }
  out.f_bar = f_bar;
  const Vector init = rec.initial(x_means);
  {
    Matrix f0(1, k);
    for (int i = 0; i < k; ++i) f0(0, i) = init[i];
    out.static_natural = rec.natural(f0, 0);
  }

  double sum = 0.0;
  int used = 0;
  for (Eigen::Index t = 0; t < T; ++t) {
    if (t < rec.init_rows()) {
      rec.initialize(t, out.par_tv, out.err_tv, init, f_bar);
    } else {
      rec.advance(t, out.par_tv, out.score_tv, out.err_tv, x_tv);
    }
    const ParamVector nat = rec.natural(out.par_tv, t);
    if (!rec.in_support(nat)) {
      out.finite = false;
      break;
    }
    const Recursion::Step step = rec.evaluate(data.y[static_cast<std::size_t>(t)], nat);
    if (!step.finite) {
      out.finite = false;
      break;
    }
    for (int i = 0; i < k; ++i) out.score_tv(t, i) = step.scaled[i];
    out.loglik_t[t] = step.loglik;
    if (t >= lik_skip && !is_missing(step.loglik)) {
      sum += step.loglik;
      ++used;
    }
  }
  out.loglik_sum = out.finite ? sum : -kInf;
  out.used_obs = used;
  return out;
}

}  // namespace gas
