// Copyright 2026 The mmens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distribution.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace mmens {

DiscreteDistribution::DiscreteDistribution(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) {
    throw Error(ErrorCode::invalid_argument, "distribution has no bins");
  }
  double sum = 0.0, comp = 0.0;  // Kahan, so the check measures the true sum
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (!(masses_[i] >= 0.0)) {
      throw Error(ErrorCode::invalid_argument,
                  "negative mass at bin " + std::to_string(i));
    }
    const double y = masses_[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (std::fabs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "masses sum to " + std::to_string(sum) + ", not 1");
  }
}

DiscreteDistribution DiscreteDistribution::unchecked(
    std::vector<double> masses) {
  return DiscreteDistribution(UncheckedTag{}, std::move(masses));
}

std::vector<std::int64_t> sample_dataset(const DiscreteDistribution& p,
                                         std::int64_t n_samples, Rng& rng) {
  if (n_samples < 0) {
    throw Error(ErrorCode::invalid_argument, "sample count must be >= 0");
  }
  const std::size_t k = p.size();
  std::vector<std::int64_t> counts(k, 0);
  std::int64_t remaining = n_samples;
  double mass_remaining = 0.0;
  for (std::size_t i = 0; i < k; ++i) mass_remaining += p[i];
  for (std::size_t i = 0; i + 1 < k && remaining > 0; ++i) {
    if (mass_remaining <= 0.0) break;
    double r = p[i] / mass_remaining;
    if (r < 0.0) r = 0.0;
    if (r > 1.0) r = 1.0;
    std::binomial_distribution<std::int64_t> bin(remaining, r);
    const std::int64_t c = bin(rng);
    counts[i] = c;
    remaining -= c;
    mass_remaining -= p[i];
  }
  counts[k - 1] += remaining;
  return counts;
}

}  // namespace mmens
