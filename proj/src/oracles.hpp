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
#include <variant>
#include <vector>

#include "distribution.hpp"
#include "instances.hpp"

namespace mmens {

struct TotalOrder {};
struct LatticeOrder {
  std::int64_t n = 0;
  int d = 1;
};
using Order = std::variant<TotalOrder, LatticeOrder>;

// Membership checks evaluate inequalities with slack -1e-12: tiny negative
// violations from float rounding count as satisfied.
constexpr double kMembershipSlack = 1e-12;

// Masses nonincreasing along the total order, or along strict all-coordinate
// dominance on the lattice.
bool is_monotone(const DiscreteDistribution& p, const Order& order);

// Contiguous support and p_i^2 >= p_{i-1} p_{i+1} at interior support points
// (equality counts as log-concave).
bool is_log_concave(const DiscreteDistribution& p);

enum class CertMethod { gamma1d, gammaHalfcube, sqrtTriple, lpExact };

// A certified lower bound on d_TV(p, q) valid for every q in the property
// class. For the gamma methods lower_bound is the sum of per_unit_terms.
struct DistanceCertificate {
  double lower_bound = 0.0;
  std::vector<double> per_unit_terms;
  CertMethod method = CertMethod::gamma1d;
};

// Per-pair certificate against every monotone distribution (n even).
DistanceCertificate gamma_distance_1d(const DiscreteDistribution& p);

// Per-cube certificate for halfcube-uniform distributions: the bound applies
// to lift_halfcube(layout, p) against every monotone distribution on the
// lattice.
DistanceCertificate gamma_distance_halfcube(const HalfcubeLayout& layout,
                                            const DiscreteDistribution& p);

// Per-triple certificate against every log-concave distribution. Requires the
// window p_{3i-2} > p_{3i} > (4/5) p_{3i-2}, p_{3i-1} > (3/4) p_{3i} on every
// triple carrying mass (all-zero triples contribute nothing and are exempt);
// throws hypothesis_violation naming the first failing triple otherwise.
DistanceCertificate sqrt_triple_distance(const DiscreteDistribution& p);

// Exact min over monotone distributions q of (1/2)||p - q||_1, via LP with
// absolute-value variables and covering-pair comparability constraints.
DistanceCertificate lp_distance_to_monotone(const DiscreteDistribution& p,
                                            const Order& order,
                                            std::int64_t bin_budget = 4096);

}  // namespace mmens
