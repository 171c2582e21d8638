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

#include <vector>

#include "rng.hpp"

namespace mmens {

enum class Side { yes, no };

// Finitely supported perturbation distribution with m equally likely atoms
// A*(cos(2*pi*(a + phase)/m) + g), phase 0 on the yes side and 1/2 on the no
// side. The two sides match their first m-1 moments (Chebyshev roots vs
// extrema of T_m differ only in the constant term).
struct MomentKernel {
  double amplitude = 0.0;  // A
  double offset = 0.0;     // g
  int order = 1;           // m >= 1
  Side side = Side::yes;
};

struct Atom {
  double value;
  double probability;
};

// Atom value for index a in {0, ..., m-1}.
double atom_value(const MomentKernel& kernel, int a);

// All m atoms in order of a; probabilities are exactly 1/m.
std::vector<Atom> atoms(const MomentKernel& kernel);

// E[delta^k] by direct summation over atoms. moment(kernel, 0) == 1.
double moment(const MomentKernel& kernel, int k);

struct SignProfile {
  double min_atom;
  double max_atom;
  int negative_atom_count;
};

// min/max are the raw float atom values. The negative count applies a
// relative slack of 1e-12 * |A|(1+|g|): mathematically zero atoms evaluate to
// ~1e-16-scale dust because the two cosines round independently, and that
// dust must not count as a sign change.
SignProfile sign_profile(const MomentKernel& kernel);

// One atom drawn uniformly at random.
double sample(const MomentKernel& kernel, Rng& rng);

}  // namespace mmens
