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
#include <string>
#include <vector>

#include "ensembles.hpp"
#include "instances.hpp"

namespace mmens {

// Law of the bin-j_i count conditioned on B_i samples landing in pair i:
// the uniform m-atom mixture of Binomial(B_i, (Q_j + delta_a)/(Q_j + Q_k)).
struct PairConditionalPMF {
  std::size_t pair_index = 0;
  std::int64_t conditioned_count = 0;
  std::vector<double> pmf;  // length conditioned_count + 1
};

PairConditionalPMF pair_conditional_pmf(const EnsembleSpec& spec,
                                        std::size_t pair_index, Side side,
                                        std::int64_t conditioned_count);

// d_TV of the two conditional count laws. Zero (exactly, by m-1 moment
// matching) whenever conditioned_count < m.
double pair_tv(const EnsembleSpec& spec, std::size_t pair_index,
               std::int64_t conditioned_count);

struct BoundInputs {
  std::int64_t s = 0;
  int m = 1;
  std::int64_t n_samples = 0;
  double b_cap = 0.0;  // B = 2 max_i (Q_{j_i}+Q_{k_i}) N
  double x_max = 0.0;
  double min_pair_weight = 0.0;
  double max_pair_weight = 0.0;
};

BoundInputs bound_inputs(const EnsembleSpec& spec, std::int64_t n_samples);

struct TVReport {
  std::int64_t n_samples = 0;
  // Exact marginal-sum relaxation: sum_i E_{B_i ~ Bin(N, w_i)}[pair_tv(i, B_i)]
  // plus rigorous slack for the truncated binomial tails.
  double marginal_bound = 0.0;
  // The cruder split: Pr(exists i with B_i > B) + sum_i max_{b <= B} pair_tv.
  double crude_tail = 0.0;
  double crude_max_sum = 0.0;
  double crude_bound = 0.0;
  bool sample_hypothesis_ok = true;  // N > 6 ln s / min_i w_i
  std::string warning;
};

TVReport aggregate_tv_bound(const EnsembleSpec& spec, std::int64_t n_samples);

struct McEstimate {
  double estimate = 0.0;
  double conf_radius = 0.0;  // 95% confidence radius from empirical variance
  std::int64_t trials = 0;
};

// Monte-Carlo estimate of d_TV(D_yes^N, D_no^N) via the yes-side expectation
// of (1 - L_no/L_yes)^+ over sampled count profiles. Deterministic for fixed
// (seed, block structure); per-block rng substreams.
McEstimate mc_tv_estimate(const EnsembleSpec& spec, std::int64_t n_samples,
                          std::int64_t trials, std::uint64_t seed);

struct Prop1Knobs {
  double c1 = 1.0, c2 = 1.0, c3 = 1.0, c4 = 1.0;
};

struct Prop1Result {
  double value = 0.0;
  bool xmax_ok = true;   // x_max < 1/10
  bool order_ok = true;  // m >= C ln s
};

// The displayed d_TV(D_yes^N, D_no^N) bound with every O(.) replaced by a
// configurable constant:
//   c1/s + m^4 s c2 (sqrt(B ln s) + x B) (1+x)^(c3 (sqrt(B ln s)+x B))
//        * (c4 (sqrt(x^2 B ln s) + x^2 B))^m.
Prop1Result prop1_bound(const BoundInputs& inputs, const Prop1Knobs& knobs,
                        double c_constant);

struct TheoremKnobs {
  double k1 = 1.0, k2 = 1.0, k3 = 1.0;
};

struct TheoremResult {
  double n_samples = 0.0;
  std::string branch;  // which arm of the min attains: "n" or "epsilon-cap"
};

// Closed-form sample-complexity lower bounds:
//   monotone: k1 2^(-k2 d) d^-d eps^-2 ln^-7(1/eps) min(n, d eps^-1 ln^-3(1/eps))^d
//   logconcave: k3 ln^-7(1/eps) eps^-2 min(n, eps^-1/2 ln^-3/2(1/eps)).
TheoremResult theorem_lower_bound(const InstanceParams& params,
                                  const TheoremKnobs& knobs);

}  // namespace mmens
