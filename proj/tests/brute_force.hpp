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

// Test-only oracles, kept independent of the library's likelihood
// factorization: exact d_TV(D_yes^N, D_no^N) by enumerating every count
// profile against every joint kernel outcome.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ensembles.hpp"

namespace mmens::testing {

inline double brute_force_tv(const EnsembleSpec& spec,
                             std::int64_t n_samples) {
  const std::size_t bins = spec.base.size();
  std::vector<std::int64_t> profile(bins, 0);
  double tv = 0.0;
  std::function<void(std::size_t, std::int64_t)> recurse =
      [&](std::size_t bin, std::int64_t remaining) {
        if (bin + 1 == bins) {
          profile[bin] = remaining;
          double like[2] = {0.0, 0.0};
          for (int side = 0; side < 2; ++side) {
            for_each_atom(
                spec, side == 0 ? Side::yes : Side::no, 1000000,
                [&](double prob, const std::vector<double>& p) {
                  double log_mult = std::lgamma(n_samples + 1.0);
                  for (std::size_t b = 0; b < bins; ++b) {
                    log_mult -= std::lgamma(profile[b] + 1.0);
                    if (profile[b] > 0) {
                      if (p[b] <= 0.0) {
                        log_mult = -std::numeric_limits<double>::infinity();
                        break;
                      }
                      log_mult += profile[b] * std::log(p[b]);
                    }
                  }
                  if (std::isfinite(log_mult)) {
                    like[side] += prob * std::exp(log_mult);
                  }
                });
          }
          tv += std::fabs(like[0] - like[1]);
          return;
        }
        for (std::int64_t c = 0; c <= remaining; ++c) {
          profile[bin] = c;
          recurse(bin + 1, remaining - c);
        }
      };
  recurse(0, n_samples);
  return 0.5 * tv;
}

}  // namespace mmens::testing
