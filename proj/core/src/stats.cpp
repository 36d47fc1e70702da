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

#include "bcc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcc/error.hpp"

namespace bcc {

double chernoff_bound(double p, double n, double eps) {
  if (!(p >= 0.0 && p <= 1.0)) throw BadParameters("probability must lie in [0, 1]");
  if (!(n >= 0.0)) throw BadParameters("sample count must be nonnegative");
  if (!(eps > 0.0 && eps <= 0.5)) throw BadParameters("deviation must lie in (0, 1/2]");
  return std::exp(-p * n * eps * eps / 4.0);
}

double poisson_concavity_ratio(std::size_t k) {
  if (k == 0) throw BadParameters("cap must be at least 1");
  const double kd = static_cast<double>(k);
  return 1.0 - std::exp(kd * std::log(kd) - kd - std::lgamma(kd + 1.0));
}

double poisson_capped_mean(std::size_t k, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw BadParameters("mean must be finite and >= 0");
  const double kd = static_cast<double>(k);
  double term = std::exp(-mean);  // P(N = 0)
  double cumulative = 0.0, acc = 0.0;
  for (std::size_t n = 0;; ++n) {
    const double nd = static_cast<double>(n);
    if (n > 0) term *= mean / nd;
    acc += std::min(kd, nd) * term;
    cumulative += term;
    if (nd >= mean && 1.0 - cumulative < kPoissonTailTolerance) break;
    if (n > 100000) throw InvariantViolation("Poisson series did not converge");
  }
  return acc;
}

}  // namespace bcc
