// Copyright 2026 The bcc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "bcc/error.hpp"
#include "bcc/stats.hpp"
#include "support/oracles.hpp"

namespace bcc {
namespace {

TEST(Chernoff, Values) {
  EXPECT_NEAR(chernoff_bound(0.5, 100, 0.5), std::exp(-25.0 / 8.0), 1e-15);
  EXPECT_NEAR(chernoff_bound(0.3, 10, 1e-9), 1.0, 1e-12);
  EXPECT_LT(chernoff_bound(0.5, 100, 0.5), chernoff_bound(0.5, 100, 0.25));
}

TEST(Chernoff, Ranges) {
  EXPECT_THROW(chernoff_bound(1.5, 10, 0.2), BadParameters);
  EXPECT_THROW(chernoff_bound(0.5, -1, 0.2), BadParameters);
  EXPECT_THROW(chernoff_bound(0.5, 10, 0.0), BadParameters);
  EXPECT_THROW(chernoff_bound(0.5, 10, 0.6), BadParameters);
}

TEST(PoissonRatio, SmallCases) {
  EXPECT_NEAR(poisson_concavity_ratio(1), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(poisson_concavity_ratio(2), 1.0 - 2.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(poisson_concavity_ratio(3), 1.0 - 27.0 * std::exp(-3.0) / 6.0, 1e-15);
  EXPECT_THROW(poisson_concavity_ratio(0), BadParameters);
}

TEST(PoissonRatio, LargeCapIsFinite) {
  const double r = poisson_concavity_ratio(500);
  EXPECT_TRUE(std::isfinite(r));
  // Stirling: k^k e^-k / k! ~ 1 / sqrt(2 pi k).
  EXPECT_NEAR(1.0 - r, 1.0 / std::sqrt(2.0 * M_PI * 500.0), 1e-4);
}

TEST(PoissonRatio, LowerBoundsGridInfimum) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const double alpha = poisson_concavity_ratio(k);
    double inf = 1e9;
    for (int i = 1; i <= 3000; ++i) {
      const double x = 3.0 * static_cast<double>(k) * i / 3000.0;
      const double ratio = testing::capped_poisson_mean_finite(k, x) / std::min<double>(k, x);
      EXPECT_GE(ratio, alpha - 1e-6) << "k=" << k << " x=" << x;
      inf = std::min(inf, ratio);
    }
    // Attained at x = k.
    EXPECT_NEAR(inf, alpha, 1e-9) << "k=" << k;
  }
}

TEST(PoissonCappedMean, MatchesFiniteForm) {
  for (std::size_t k = 1; k <= 8; ++k) {
    for (double mean : {0.0, 0.1, 0.5, 1.0, 2.5, 7.0, 20.0}) {
      EXPECT_NEAR(poisson_capped_mean(k, mean), testing::capped_poisson_mean_finite(k, mean), 1e-10)
          << "k=" << k << " mean=" << mean;
    }
  }
  EXPECT_THROW(poisson_capped_mean(2, -1.0), BadParameters);
}

}  // namespace
}  // namespace bcc
