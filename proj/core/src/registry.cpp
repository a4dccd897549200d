// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <string>
#include <tuple>

#include "distributions/families.hpp"
#include "gas/distribution.hpp"
#include "gas/errors.hpp"

namespace gas {
namespace {

std::vector<DistributionDescriptor> build_registry() {
  std::vector<DistributionDescriptor> out{
      families::bernoulli_prob(),   families::exp_scale(),         families::gamma_scale(),
      families::geom_mean(),        families::laplace_meanscale(), families::negbin_nb2(),
      families::norm_meanvar(),     families::pois_mean(),         families::skellam_meanvar(),
      families::t_meanvar(),        families::vonmises_meanconc(), families::weibull_scale(),
  };
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.label, a.parametrization) < std::tie(b.label, b.parametrization);
  });
  return out;
}

}  // namespace

const std::vector<DistributionDescriptor>& all_distributions() {
  static const std::vector<DistributionDescriptor> registry = build_registry();
  return registry;
}

std::vector<const DistributionDescriptor*> list_distributions(std::optional<DataType> filter_type,
                                                              std::optional<bool> filter_default) {
  std::vector<const DistributionDescriptor*> out;
  for (const auto& d : all_distributions()) {
    if (filter_type && d.data_type != *filter_type) continue;
    if (filter_default && d.is_default != *filter_default) continue;
    out.push_back(&d);
  }
  return out;
}

const DistributionDescriptor& find_distribution(std::string_view label, std::string_view parametrization) {
  for (const auto& d : all_distributions()) {
    if (d.label != label) continue;
    if (parametrization.empty() ? d.is_default : d.parametrization == parametrization) return d;
  }
  if (parametrization.empty()) throw SpecError("unknown distribution '" + std::string(label) + "'");
  throw SpecError("unknown distribution '" + std::string(label) + "' with parametrization '" +
                  std::string(parametrization) + "'");
}

}  // namespace gas
