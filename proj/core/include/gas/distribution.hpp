// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gas/links.hpp"
#include "gas/types.hpp"

namespace gas {

enum class DimKind { univariate };

enum class DataType { binary, count, integer, real, duration, circular };

std::string_view to_string(DataType type);
std::string_view to_string(Support support);
std::optional<DataType> parse_data_type(std::string_view text);

// Raw per-family functions. They operate on natural parameters and assume
// the caller has already checked support; the checked entry points below
// (density, loglik, score, ...) are what library users should call.
struct DistributionFunctions {
  bool (*in_support)(const ParamVector& f);
  bool (*in_sample_space)(double y);
  double (*loglik)(double y, const ParamVector& f);
  double (*mean)(const ParamVector& f);
  double (*variance)(const ParamVector& f);
  ParamVector (*score)(double y, const ParamVector& f);
  ParamMatrix (*fisher)(const ParamVector& f);
  double (*random)(const ParamVector& f, Rng& rng);
  // Receives non-missing observations only.
  ParamVector (*start)(std::span<const double> y);
};

// Metadata and function table for one distribution/parametrization pair.
//
// Adding a family means writing the nine functions of DistributionFunctions
// for it and appending its descriptor in registry.cpp; every other module
// works through this table.
struct DistributionDescriptor {
  std::string label;
  std::string parametrization;
  std::string title;        // "Poisson"
  std::string param_title;  // "Mean"
  DimKind dim_kind = DimKind::univariate;
  DataType data_type = DataType::real;
  std::vector<std::string> param_names;
  std::vector<Support> param_supports;
  // Parameters that may never be time-varying (Student's t degrees of freedom).
  std::vector<bool> static_only;
  bool orthogonal = false;
  bool is_default = true;
  DistributionFunctions fn{};

  int param_count() const { return static_cast<int>(param_names.size()); }

  // True where the log/logistic link applies by default.
  std::vector<bool> default_links() const;
};

// Registry access. Descriptors are immutable and live for the whole program.
const std::vector<DistributionDescriptor>& all_distributions();

std::vector<const DistributionDescriptor*> list_distributions(
    std::optional<DataType> filter_type = std::nullopt,
    std::optional<bool> filter_default = std::nullopt);

// Empty parametrization selects the default one. Throws SpecError if unknown.
const DistributionDescriptor& find_distribution(std::string_view label, std::string_view parametrization = {});

// Checked operations. All throw DomainError on out-of-support parameters.

double density(const DistributionDescriptor& d, double y, const ParamVector& f);
double loglik(const DistributionDescriptor& d, double y, const ParamVector& f);
double dist_mean(const DistributionDescriptor& d, const ParamVector& f);
double dist_variance(const DistributionDescriptor& d, const ParamVector& f);

// Score with respect to the natural parameters, with components marked in
// `linked` transported to link space through the inverse-link Jacobian.
ParamVector score(const DistributionDescriptor& d, double y, const ParamVector& f, const std::vector<bool>& linked);
ParamMatrix fisher(const DistributionDescriptor& d, const ParamVector& f, const std::vector<bool>& linked);

std::vector<double> random(const DistributionDescriptor& d, const ParamVector& f, std::size_t n, std::uint64_t seed);

// Moment-style starting values; missing observations are dropped.
ParamVector start(const DistributionDescriptor& d, std::span<const double> y);

ParamVector link_apply(const DistributionDescriptor& d, const ParamVector& natural, const std::vector<bool>& mask);
ParamVector link_inverse(const DistributionDescriptor& d, const ParamVector& linked, const std::vector<bool>& mask);

// Throws DomainError unless f has the right length and lies in the support.
void check_params(const DistributionDescriptor& d, const ParamVector& f);

namespace detail {

// Clamp a boundary start estimate into the open support.
inline constexpr double kStartClamp = 1e-6;

double clamp_positive(double v);
double clamp_unit(double v);
double sample_mean(std::span<const double> y);
// Population variance (divisor n).
double sample_variance(std::span<const double> y);

bool is_integer(double y);

}  // namespace detail

}  // namespace gas
