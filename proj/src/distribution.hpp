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

#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace mmens {

// Probability vector over dense bin indices 0..size-1.
// Invariant: every mass >= 0 and the masses sum to 1 within 1e-12.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit DiscreteDistribution(std::vector<double> masses);

  // Skips invariant checks; for loading untrusted descriptors whose
  // invariants are re-checked (and reported) by ensemble validation.
  static DiscreteDistribution unchecked(std::vector<double> masses);

  const std::vector<double>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  double operator[](std::size_t i) const { return masses_[i]; }

 private:
  struct UncheckedTag {};
  DiscreteDistribution(UncheckedTag, std::vector<double> masses)
      : masses_(std::move(masses)) {}

  std::vector<double> masses_;
};

// N i.i.d. samples from p, returned as a count vector (multinomial law),
// drawn by sequential conditional binomials.
std::vector<std::int64_t> sample_dataset(const DiscreteDistribution& p,
                                         std::int64_t n_samples, Rng& rng);

}  // namespace mmens
