// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "gas/distribution.hpp"

namespace gas::families {

DistributionDescriptor bernoulli_prob();
DistributionDescriptor pois_mean();
DistributionDescriptor geom_mean();
DistributionDescriptor negbin_nb2();
DistributionDescriptor skellam_meanvar();
DistributionDescriptor norm_meanvar();
DistributionDescriptor t_meanvar();
DistributionDescriptor laplace_meanscale();
DistributionDescriptor exp_scale();
DistributionDescriptor gamma_scale();
DistributionDescriptor weibull_scale();
DistributionDescriptor vonmises_meanconc();

}  // namespace gas::families
