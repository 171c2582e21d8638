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

#include "kernels.hpp"

#include <cmath>

#include "error.hpp"

namespace mmens {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_kernel(const MomentKernel& kernel) {
  if (kernel.order < 1) {
    throw Error(ErrorCode::invalid_argument, "kernel order m must be >= 1");
  }
}

double pow_int(double x, int k) {
  double r = 1.0;
  double b = x;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

}  // namespace

double atom_value(const MomentKernel& kernel, int a) {
  const double phase = kernel.side == Side::yes ? 0.0 : 0.5;
  const double theta = 2.0 * kPi * (a + phase) / kernel.order;
  return kernel.amplitude * (std::cos(theta) + kernel.offset);
}

std::vector<Atom> atoms(const MomentKernel& kernel) {
  check_kernel(kernel);
  std::vector<Atom> out;
  out.reserve(kernel.order);
  const double p = 1.0 / kernel.order;
  for (int a = 0; a < kernel.order; ++a) {
    out.push_back({atom_value(kernel, a), p});
  }
  return out;
}

double moment(const MomentKernel& kernel, int k) {
  check_kernel(kernel);
  if (k < 0) {
    throw Error(ErrorCode::invalid_argument, "moment order k must be >= 0");
  }
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (int a = 0; a < kernel.order; ++a) {
    sum += pow_int(atom_value(kernel, a), k);
  }
  return sum / kernel.order;
}

SignProfile sign_profile(const MomentKernel& kernel) {
  check_kernel(kernel);
  const double slack = 1e-12 * std::fabs(kernel.amplitude) *
                       (1.0 + std::fabs(kernel.offset));
  SignProfile profile{atom_value(kernel, 0), atom_value(kernel, 0), 0};
  for (int a = 0; a < kernel.order; ++a) {
    const double v = atom_value(kernel, a);
    if (v < profile.min_atom) profile.min_atom = v;
    if (v > profile.max_atom) profile.max_atom = v;
    if (v < -slack) ++profile.negative_atom_count;
  }
  return profile;
}

double sample(const MomentKernel& kernel, Rng& rng) {
  check_kernel(kernel);
  std::uniform_int_distribution<int> dist(0, kernel.order - 1);
  return atom_value(kernel, dist(rng));
}

}  // namespace mmens
