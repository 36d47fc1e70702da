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

// Closed-form probability bounds used by the approximation and hardness
// analyses.

#pragma once

#include <cstddef>

namespace bcc {

inline constexpr double kPoissonTailTolerance = 1e-12;

// exp(-p n eps^2 / 4): tail bound for the mean of n negatively associated
// Bernoulli(p) variables exceeding (1 + eps) p. Throws BadParameters unless
// p in [0, 1] and eps in (0, 1/2].
double chernoff_bound(double p, double n, double eps);

// 1 - k^k e^-k / k!, computed through lgamma. Throws BadParameters for k = 0.
double poisson_concavity_ratio(std::size_t k);

// E[min(k, Poisson(mean))] by summing the series until the remaining tail
// mass is below kPoissonTailTolerance.
double poisson_capped_mean(std::size_t k, double mean);

}  // namespace bcc
