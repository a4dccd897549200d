// Apache License, Version 2.0, refer to LICENSE.txt

#include "gas/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gas/errors.hpp"

namespace gas {

std::string_view to_string(DataType type) {
  switch (type) {
    case DataType::binary: return "binary";
    case DataType::count: return "count";
    case DataType::integer: return "integer";
    case DataType::real: return "real";
    case DataType::duration: return "duration";
    case DataType::circular: return "circular";
  }
  return "?";
}

std::string_view to_string(Support support) {
  switch (support) {
    case Support::real: return "real";
    case Support::positive: return "positive";
    case Support::unit_interval: return "unit-interval";
    case Support::circular: return "circular";
  }
  return "?";
}

std::optional<DataType> parse_data_type(std::string_view text) {
  for (auto t : {DataType::binary, DataType::count, DataType::integer, DataType::real, DataType::duration,
                 DataType::circular}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::vector<bool> DistributionDescriptor::default_links() const {
  std::vector<bool> out(param_supports.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = param_supports[i] == Support::positive || param_supports[i] == Support::unit_interval;
  }
  return out;
}

void check_params(const DistributionDescriptor& d, const ParamVector& f) {
  if (f.size() != d.param_count()) {
    throw DomainError(d.label + "/" + d.parametrization + ": expected " + std::to_string(d.param_count()) +
                      " parameters, got " + std::to_string(f.size()));
  }
  if (!f.allFinite() || !d.fn.in_support(f)) {
    throw DomainError(d.label + "/" + d.parametrization + ": parameters outside support");
  }
}

namespace {

bool is_discrete(const DistributionDescriptor& d) {
  return d.data_type == DataType::binary || d.data_type == DataType::count || d.data_type == DataType::integer;
}

void check_observation(const DistributionDescriptor& d, double y) {
  if (!d.fn.in_sample_space(y)) {
    throw DomainError(d.label + "/" + d.parametrization + ": observation outside sample space");
  }
}

}  // namespace

double density(const DistributionDescriptor& d, double y, const ParamVector& f) {
  return std::exp(loglik(d, y, f));
}

double loglik(const DistributionDescriptor& d, double y, const ParamVector& f) {
  check_params(d, f);
  if (!d.fn.in_sample_space(y)) {
    if (is_discrete(d) && std::isfinite(y)) return -kInf;
    check_observation(d, y);
  }
  return d.fn.loglik(y, f);
}

double dist_mean(const DistributionDescriptor& d, const ParamVector& f) {
  check_params(d, f);
  return d.fn.mean(f);
}

double dist_variance(const DistributionDescriptor& d, const ParamVector& f) {
  check_params(d, f);
  return d.fn.variance(f);
}

ParamVector score(const DistributionDescriptor& d, double y, const ParamVector& f, const std::vector<bool>& linked) {
  check_params(d, f);
  check_observation(d, y);
  const LinkSet links(d.param_supports, linked);
  return d.fn.score(y, f).cwiseProduct(links.inverse_jacobian(f));
}

ParamMatrix fisher(const DistributionDescriptor& d, const ParamVector& f, const std::vector<bool>& linked) {
  check_params(d, f);
  const LinkSet links(d.param_supports, linked);
  const ParamVector jac = links.inverse_jacobian(f);
  return jac.asDiagonal() * d.fn.fisher(f) * jac.asDiagonal();
}

std::vector<double> random(const DistributionDescriptor& d, const ParamVector& f, std::size_t n, std::uint64_t seed) {
  // Unit-interval parameters may sit on the boundary here: the draws are then degenerate.
  ParamVector probe = f;
  for (int i = 0; i < d.param_count() && i < f.size(); ++i) {
    if (d.param_supports[static_cast<std::size_t>(i)] == Support::unit_interval && (f[i] == 0.0 || f[i] == 1.0)) probe[i] = 0.5;
  }
  check_params(d, probe);
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = d.fn.random(f, rng);
  return out;
}

ParamVector start(const DistributionDescriptor& d, std::span<const double> y) {
  std::vector<double> present;
  present.reserve(y.size());
  for (double v : y) {
    if (!is_missing(v)) present.push_back(v);
  }
  if (present.empty()) throw DataError(d.label + ": cannot compute starting values from an all-missing series");
  return d.fn.start(present);
}

ParamVector link_apply(const DistributionDescriptor& d, const ParamVector& natural, const std::vector<bool>& mask) {
  const LinkSet links(d.param_supports, mask);
  check_params(d, natural);
  return links.to_linked(natural);
}

ParamVector link_inverse(const DistributionDescriptor& d, const ParamVector& linked, const std::vector<bool>& mask) {
  const LinkSet links(d.param_supports, mask);
  if (linked.size() != d.param_count()) throw DomainError(d.label + ": wrong parameter count");
  return links.to_natural(linked);
}

namespace detail {

double clamp_positive(double v) { return std::max(v, kStartClamp); }

double clamp_unit(double v) { return std::clamp(v, kStartClamp, 1.0 - kStartClamp); }

double sample_mean(std::span<const double> y) {
  return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

double sample_variance(std::span<const double> y) {
  const double m = sample_mean(y);
  double acc = 0.0;
  for (double v : y) acc += (v - m) * (v - m);
  return acc / static_cast<double>(y.size());
}

bool is_integer(double y) { return std::isfinite(y) && std::floor(y) == y; }

}  // namespace detail

}  // namespace gas
