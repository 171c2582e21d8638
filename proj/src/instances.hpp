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
#include <optional>
#include <string>
#include <vector>

#include "ensembles.hpp"

namespace mmens {

enum class Family { monotone1d, monotoneDd, logconcave };

std::string family_name(Family family);
std::optional<Family> family_from_name(const std::string& name);

struct InstanceParams {
  Family family = Family::monotone1d;
  double epsilon = 0.0;   // in (0, 1/2]
  std::int64_t n = 0;     // per-axis domain size
  int d = 1;              // dimension (1 for non-lattice families)
  double c = 4.0;         // the configurable "sufficiently large constant"
};

void check_params(const InstanceParams& params);

// Smallest odd integer strictly greater than c * ln(1/epsilon).
int select_m(double epsilon, double c);

// Feasible padded domain size n0 <= n for the family's regime cap; instances
// are built on [n0] (or [n0]^d) and embedded in [n] with zero mass above.
// Throws infeasible_parameters when n0 falls below the family minimum.
std::int64_t pad_domain(std::int64_t n, Family family, double epsilon, int d,
                        double c);

// Cube/halfcube bookkeeping for the d-dimensional construction: [n0]^d is
// tiled by cubes of side 2d indexed by [n0/2d]^d; each cube splits on its
// first coordinate into halfcubes J (low) and K (high) of (2d)^d/2 bins.
struct HalfcubeLayout {
  std::int64_t n0 = 0;
  int d = 1;

  std::int64_t cubes_per_axis() const { return n0 / (2 * d); }
  std::int64_t cube_count() const;
  std::int64_t halfcube_count() const { return 2 * cube_count(); }
  std::int64_t halfcube_size() const;  // (2d)^d / 2
  std::int64_t lattice_size() const;   // n0^d

  // Halfcube bin ids: 2*cube + 0 for J (first), 2*cube + 1 for K (second),
  // cubes linearized row-major over [n0/2d]^d.
  std::int64_t halfcube_of_lattice(std::int64_t lattice_index) const;
};

// Spreads halfcube-level masses uniformly over each halfcube's lattice bins.
DiscreteDistribution lift_halfcube(const HalfcubeLayout& layout,
                                   const DiscreteDistribution& p);

struct Instance {
  InstanceParams params;
  std::int64_t n0 = 0;
  int m = 1;
  EnsembleSpec spec;
  std::optional<HalfcubeLayout> layout;   // monotoneDd only
  std::vector<double> pair_shift;         // logconcave: C_i / n0^3 per pair
  std::uint64_t creation_seed = 0;
};

Instance build_monotone_1d(const InstanceParams& params);
Instance build_monotone_dd(const InstanceParams& params);
Instance build_logconcave(const InstanceParams& params);
Instance build_instance(const InstanceParams& params,
                        std::uint64_t creation_seed = 0);

}  // namespace mmens
