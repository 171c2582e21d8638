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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distribution.hpp"
#include "kernels.hpp"

namespace mmens {

struct PairKernel {
  double amplitude;  // A_i
  double offset;     // g_i
};

// The generic paired-bin perturbation ensemble: a base distribution Q, a set
// of disjoint bin pairs (j_i, k_i) and per-pair kernels of shared order m.
// A draw moves kernel output delta_i from bin k_i to bin j_i, preserving
// every pair sum exactly.
struct EnsembleSpec {
  DiscreteDistribution base;
  std::vector<std::pair<int, int>> pairs;
  std::vector<PairKernel> kernels;
  int order = 1;  // m
};

struct Violation {
  std::string constraint;  // name of the first violated invariant
  std::int64_t index;      // bin or pair index, -1 when not applicable
  std::string message;
};

struct ValidationResult {
  bool ok = false;
  std::optional<Violation> violation;
};

// Accepts iff the base is a valid distribution, the pairs are disjoint and in
// range, and every |A_i| <= min(Q_{j_i}, Q_{k_i}) / (1 + |g_i|).
ValidationResult validate(const EnsembleSpec& spec);

// Requires validate(spec).ok.
void require_valid(const EnsembleSpec& spec);

MomentKernel pair_kernel(const EnsembleSpec& spec, std::size_t i, Side side);

// Perturbed masses for a fixed choice of kernel atom indices (one per pair).
std::vector<double> apply_atoms(const EnsembleSpec& spec, Side side,
                                const std::vector<int>& atom_indices);

// Kernel deltas for a fixed choice of atom indices.
std::vector<double> atom_deltas(const EnsembleSpec& spec, Side side,
                                const std::vector<int>& atom_indices);

struct Draw {
  DiscreteDistribution distribution;
  std::vector<double> deltas;  // realized delta_i per pair
};

Draw draw(const EnsembleSpec& spec, Side side, Rng& rng);

// Exhaustive enumeration of all m^s equally likely joint kernel outcomes.
// The callback receives (probability, masses); masses is a reusable buffer.
// Throws budget_exceeded (naming m^s) when m^s > budget.
void for_each_atom(
    const EnsembleSpec& spec, Side side, std::uint64_t budget,
    const std::function<void(double, const std::vector<double>&)>& fn);

std::uint64_t joint_atom_count(const EnsembleSpec& spec);  // m^s, saturating

// Largest relative bin perturbation max_i |A_i|(1+|g_i|)/min(Q_{j_i},Q_{k_i}).
double x_max(const EnsembleSpec& spec);

double min_pair_weight(const EnsembleSpec& spec);  // min_i Q_{j_i}+Q_{k_i}
double max_pair_weight(const EnsembleSpec& spec);

}  // namespace mmens
