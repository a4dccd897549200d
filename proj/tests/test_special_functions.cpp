// Apache License, Version 2.0, refer to LICENSE.txt

#include <gtest/gtest.h>

#include <cmath>

#include "gas/special_functions.hpp"

namespace gas::special {
namespace {

// std::cyl_bessel_i is the reference wherever it stays finite.
TEST(Bessel, LogMatchesStandardLibrary) {
  for (int k = 0; k <= 40; ++k) {
    for (double z : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 30.0, 49.0, 51.0, 80.0, 150.0, 400.0, 690.0}) {
      const double ref = std::log(std::cyl_bessel_i(static_cast<double>(k), z));
      if (!std::isfinite(ref)) continue;
      EXPECT_NEAR(log_bessel_i(k, z), ref, 1e-12 * std::max(1.0, std::abs(ref))) << "k=" << k << " z=" << z;
    }
  }
}

TEST(Bessel, NegativeOrderIsSymmetric) {
  for (int k : {1, 2, 7}) EXPECT_EQ(log_bessel_i(-k, 3.5), log_bessel_i(k, 3.5));
}

TEST(Bessel, ZeroArgument) {
  EXPECT_EQ(log_bessel_i(0, 0.0), 0.0);
  EXPECT_EQ(log_bessel_i(3, 0.0), -INFINITY);
}

TEST(Bessel, LargeArgumentStaysFinite) {
  // Asymptotically log I_k(z) ~ z - log(2 pi z) / 2.
  const double z = 1e5;
  EXPECT_NEAR(log_bessel_i(2, z), z - 0.5 * std::log(2.0 * M_PI * z), 1e-4);
}

TEST(Bessel, RatioMatchesStandardLibrary) {
  for (int k = 0; k <= 20; ++k) {
    for (double z : {0.1, 1.0, 5.0, 20.0, 60.0, 200.0}) {
      const double ref = std::cyl_bessel_i(k + 1.0, z) / std::cyl_bessel_i(static_cast<double>(k), z);
      EXPECT_NEAR(bessel_i_ratio(k, z), ref, 1e-12 * std::max(1.0, ref)) << "k=" << k << " z=" << z;
    }
  }
}

TEST(Polygamma, KnownValues) {
  EXPECT_NEAR(digamma(1.0), -0.57721566490153286, 1e-15);
  EXPECT_NEAR(trigamma(1.0), M_PI * M_PI / 6.0, 1e-14);
  EXPECT_NEAR(digamma(0.5), -0.57721566490153286 - 2.0 * std::log(2.0), 1e-14);
}

}  // namespace
}  // namespace gas::special
