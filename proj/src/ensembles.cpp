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

#include "ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace mmens {

namespace {

ValidationResult fail(std::string constraint, std::int64_t index,
                      std::string message) {
  ValidationResult r;
  r.ok = false;
  r.violation = Violation{std::move(constraint), index, std::move(message)};
  return r;
}

}  // namespace

ValidationResult validate(const EnsembleSpec& spec) {
  const auto& q = spec.base.masses();
  if (spec.order < 1) {
    return fail("order_positive", -1, "kernel order m must be >= 1");
  }
  if (spec.kernels.size() != spec.pairs.size()) {
    return fail("kernel_per_pair", -1, "one kernel required per pair");
  }
  double sum = 0.0, comp = 0.0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    if (!(q[b] >= 0.0)) {
      return fail("mass_nonnegative", static_cast<std::int64_t>(b),
                  "base mass is negative");
    }
    const double y = q[b] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (std::fabs(sum - 1.0) > DiscreteDistribution::kSumTolerance) {
    return fail("mass_normalized", -1,
                "base masses sum to " + std::to_string(sum));
  }
  std::vector<char> used(q.size(), 0);
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto [j, k] = spec.pairs[i];
    if (j < 0 || k < 0 || static_cast<std::size_t>(j) >= q.size() ||
        static_cast<std::size_t>(k) >= q.size()) {
      return fail("pair_in_range", static_cast<std::int64_t>(i),
                  "pair bin index out of range");
    }
    if (j == k) {
      return fail("pair_disjoint", static_cast<std::int64_t>(i),
                  "pair uses the same bin twice");
    }
    for (int b : {j, k}) {
      if (used[b]) {
        return fail("pair_disjoint", static_cast<std::int64_t>(i),
                    "bin " + std::to_string(b) + " reused");
      }
      used[b] = 1;
    }
  }
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto [j, k] = spec.pairs[i];
    const auto& kern = spec.kernels[i];
    const double bound =
        std::min(q[j], q[k]) / (1.0 + std::fabs(kern.offset));
    if (!(std::fabs(kern.amplitude) <= bound)) {
      return fail("amplitude_bound", static_cast<std::int64_t>(i),
                  "|A| = " + std::to_string(std::fabs(kern.amplitude)) +
                      " exceeds min(Q_j, Q_k)/(1+|g|) = " +
                      std::to_string(bound) + " at pair " + std::to_string(i));
    }
  }
  ValidationResult r;
  r.ok = true;
  return r;
}

void require_valid(const EnsembleSpec& spec) {
  const auto r = validate(spec);
  if (!r.ok) {
    throw Error(ErrorCode::invalid_argument,
                "invalid ensemble spec: " + r.violation->constraint + ": " +
                    r.violation->message);
  }
}

MomentKernel pair_kernel(const EnsembleSpec& spec, std::size_t i, Side side) {
  return MomentKernel{spec.kernels[i].amplitude, spec.kernels[i].offset,
                      spec.order, side};
}

std::vector<double> atom_deltas(const EnsembleSpec& spec, Side side,
                                const std::vector<int>& atom_indices) {
  std::vector<double> deltas(spec.pairs.size());
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    deltas[i] = atom_value(pair_kernel(spec, i, side), atom_indices[i]);
  }
  return deltas;
}

std::vector<double> apply_atoms(const EnsembleSpec& spec, Side side,
                                const std::vector<int>& atom_indices) {
  std::vector<double> p = spec.base.masses();
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const double delta =
        atom_value(pair_kernel(spec, i, side), atom_indices[i]);
    p[spec.pairs[i].first] += delta;
    p[spec.pairs[i].second] -= delta;
  }
  return p;
}

Draw draw(const EnsembleSpec& spec, Side side, Rng& rng) {
  require_valid(spec);
  std::uniform_int_distribution<int> dist(0, spec.order - 1);
  std::vector<int> atom_indices(spec.pairs.size());
  for (auto& a : atom_indices) a = dist(rng);
  Draw d{DiscreteDistribution(apply_atoms(spec, side, atom_indices)),
         atom_deltas(spec, side, atom_indices)};
  return d;
}

std::uint64_t joint_atom_count(const EnsembleSpec& spec) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() /
                    static_cast<std::uint64_t>(spec.order)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= static_cast<std::uint64_t>(spec.order);
  }
  return total;
}

void for_each_atom(
    const EnsembleSpec& spec, Side side, std::uint64_t budget,
    const std::function<void(double, const std::vector<double>&)>& fn) {
  require_valid(spec);
  const std::uint64_t total = joint_atom_count(spec);
  if (total > budget) {
    throw Error(ErrorCode::budget_exceeded,
                "joint kernel outcome count " + std::to_string(spec.order) +
                    "^" + std::to_string(spec.pairs.size()) +
                    " exceeds budget " + std::to_string(budget));
  }
  const std::size_t s = spec.pairs.size();
  const double prob = 1.0 / static_cast<double>(total);
  std::vector<int> atom_indices(s, 0);
  // Per-pair atom delta table, so each outcome is a fresh exact application
  // of the base plus s deltas (no incremental float drift).
  std::vector<std::vector<double>> deltas(s);
  for (std::size_t i = 0; i < s; ++i) {
    deltas[i].resize(spec.order);
    const MomentKernel kern = pair_kernel(spec, i, side);
    for (int a = 0; a < spec.order; ++a) deltas[i][a] = atom_value(kern, a);
  }
  std::vector<double> p;
  for (std::uint64_t it = 0;; ++it) {
    p = spec.base.masses();
    for (std::size_t i = 0; i < s; ++i) {
      p[spec.pairs[i].first] += deltas[i][atom_indices[i]];
      p[spec.pairs[i].second] -= deltas[i][atom_indices[i]];
    }
    fn(prob, p);
    if (it + 1 == total) break;
    std::size_t digit = 0;
    while (++atom_indices[digit] == spec.order) {
      atom_indices[digit] = 0;
      ++digit;
    }
  }
}

double x_max(const EnsembleSpec& spec) {
  const auto& q = spec.base.masses();
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto [j, k] = spec.pairs[i];
    const double rel = std::fabs(spec.kernels[i].amplitude) *
                       (1.0 + std::fabs(spec.kernels[i].offset)) /
                       std::min(q[j], q[k]);
    worst = std::max(worst, rel);
  }
  return worst;
}

double min_pair_weight(const EnsembleSpec& spec) {
  const auto& q = spec.base.masses();
  double w = std::numeric_limits<double>::infinity();
  for (const auto& [j, k] : spec.pairs) w = std::min(w, q[j] + q[k]);
  return w;
}

double max_pair_weight(const EnsembleSpec& spec) {
  const auto& q = spec.base.masses();
  double w = 0.0;
  for (const auto& [j, k] : spec.pairs) w = std::max(w, q[j] + q[k]);
  return w;
}

}  // namespace mmens
