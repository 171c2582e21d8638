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

#include "instances.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace mmens {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void infeasible(const std::string& message) {
  throw Error(ErrorCode::infeasible_parameters, message);
}

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::int64_t floor_to_multiple(double value, std::int64_t step) {
  if (value < 0.0) return 0;
  const double capped =
      std::min(value, static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2));
  std::int64_t v = static_cast<std::int64_t>(std::floor(capped));
  return v - v % step;
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::monotone1d: return "monotone1d";
    case Family::monotoneDd: return "monotoneDd";
    case Family::logconcave: return "logconcave";
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "monotone1d") return Family::monotone1d;
  if (name == "monotoneDd") return Family::monotoneDd;
  if (name == "logconcave") return Family::logconcave;
  return std::nullopt;
}

void check_params(const InstanceParams& params) {
  if (params.d < 1) {
    throw Error(ErrorCode::invalid_argument, "d >= 1 required");
  }
  if (!(params.epsilon > 0.0) || params.epsilon >= 0.5) {
    throw Error(ErrorCode::invalid_argument,
                "epsilon must lie in (0, 1/2); degenerate epsilon is rejected");
  }
  if (params.n < 2) {
    throw Error(ErrorCode::invalid_argument, "n >= 2 required");
  }
  if (!(params.c >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "C >= 1 required");
  }
  if (params.family != Family::monotoneDd && params.d != 1) {
    throw Error(ErrorCode::invalid_argument,
                "d must be 1 for " + family_name(params.family));
  }
}

int select_m(double epsilon, double c) {
  if (!(epsilon > 0.0) || epsilon >= 1.0 || !(c >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "select_m needs epsilon in (0,1), C >= 1");
  }
  const double t = c * std::log(1.0 / epsilon);
  std::int64_t m = static_cast<std::int64_t>(std::floor(t)) + 1;  // > t
  if (m % 2 == 0) ++m;
  if (m > 100000) {
    infeasible("selected kernel order m = " + std::to_string(m) + " is unreasonably large");
  }
  return static_cast<int>(m);
}

std::int64_t pad_domain(std::int64_t n, Family family, double epsilon, int d,
                        double c) {
  const double L = std::log(1.0 / epsilon);
  switch (family) {
    case Family::monotone1d: {
      const double cap = 1.0 / (pow_int(c, 4) * pow_int(L, 3) * epsilon);
      const std::int64_t n0 =
          floor_to_multiple(std::min(static_cast<double>(n), cap), 2);
      if (n0 < 4) {
        infeasible("monotone1d needs even n0 >= 4, got n0 = " + std::to_string(n0) +
                   " from cap 1/(C^4 ln^3(1/eps) eps) = " + std::to_string(cap));
      }
      return n0;
    }
    case Family::monotoneDd: {
      const double cap = d / (pow_int(c * c * L, 3) * epsilon);
      const std::int64_t n0 =
          floor_to_multiple(std::min(static_cast<double>(n), cap), 2 * d);
      if (n0 < 2 * d) {
        infeasible("monotoneDd needs n0 >= 2d as a multiple of 2d, got n0 = " +
                   std::to_string(n0) + " from cap d/((C^2 ln(1/eps))^3 eps) = " +
                   std::to_string(cap));
      }
      return n0;
    }
    case Family::logconcave: {
      const double cap = 1.0 / (c * c * std::sqrt(epsilon) * std::pow(L, 1.5));
      const std::int64_t n0 =
          floor_to_multiple(std::min(static_cast<double>(n), cap), 6);
      if (n0 < 6) {
        infeasible("logconcave needs n0 >= 6 as a multiple of 6, got n0 = " +
                   std::to_string(n0) +
                   " from cap 1/(C^2 eps^(1/2) ln^(3/2)(1/eps)) = " +
                   std::to_string(cap));
      }
      return n0;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown family");
}

std::int64_t HalfcubeLayout::cube_count() const {
  std::int64_t total = 1;
  for (int a = 0; a < d; ++a) total *= cubes_per_axis();
  return total;
}

std::int64_t HalfcubeLayout::halfcube_size() const {
  std::int64_t total = 1;
  for (int a = 0; a < d; ++a) total *= 2 * d;
  return total / 2;
}

std::int64_t HalfcubeLayout::lattice_size() const {
  std::int64_t total = 1;
  for (int a = 0; a < d; ++a) total *= n0;
  return total;
}

std::int64_t HalfcubeLayout::halfcube_of_lattice(std::int64_t lattice_index) const {
  const std::int64_t g = cubes_per_axis();
  const std::int64_t side = 2 * d;
  std::int64_t cube = 0;
  std::int64_t rem = lattice_index;
  std::int64_t first_axis_offset = 0;
  for (int a = 0; a < d; ++a) {
    std::int64_t stride = 1;
    for (int b = a + 1; b < d; ++b) stride *= n0;
    const std::int64_t coord = rem / stride;
    rem %= stride;
    cube = cube * g + coord / side;
    if (a == 0) first_axis_offset = coord % side;
  }
  return 2 * cube + (first_axis_offset < d ? 0 : 1);
}

DiscreteDistribution lift_halfcube(const HalfcubeLayout& layout,
                                   const DiscreteDistribution& p) {
  if (static_cast<std::int64_t>(p.size()) != layout.halfcube_count()) {
    throw Error(ErrorCode::invalid_argument,
                "halfcube distribution has " + std::to_string(p.size()) +
                    " bins, layout expects " +
                    std::to_string(layout.halfcube_count()));
  }
  const double denom = static_cast<double>(layout.halfcube_size());
  std::vector<double> lifted(layout.lattice_size());
  for (std::int64_t x = 0; x < layout.lattice_size(); ++x) {
    lifted[x] = p[layout.halfcube_of_lattice(x)] / denom;
  }
  return DiscreteDistribution(std::move(lifted));
}

Instance build_monotone_1d(const InstanceParams& params) {
  check_params(params);
  const std::int64_t n0 =
      pad_domain(params.n, Family::monotone1d, params.epsilon, 1, params.c);
  const int m = select_m(params.epsilon, params.c);
  const double n0d = static_cast<double>(n0);
  const double amplitude = 8.0 * pow_int(m, 3) * params.epsilon / n0d;
  if (amplitude >= 1.0 / (4.0 * n0d * n0d)) {
    infeasible("A = 8 m^3 eps / n0 = " + std::to_string(amplitude) +
               " >= 1/(4 n0^2) = " + std::to_string(1.0 / (4.0 * n0d * n0d)) +
               " (regime n m^3 < 1/(C eps) violated)");
  }
  std::vector<double> q(params.n, 0.0);
  for (std::int64_t i = 1; i <= n0 / 2; ++i) {
    const double mass =
        5.0 / (4.0 * n0d) + 1.0 / (2.0 * n0d * n0d) - i / (n0d * n0d);
    q[2 * i - 2] = mass;
    q[2 * i - 1] = mass;
  }
  const double g = std::cos(kPi / m);
  EnsembleSpec spec{DiscreteDistribution(std::move(q)), {}, {}, m};
  for (std::int64_t i = 1; i <= n0 / 2; ++i) {
    spec.pairs.emplace_back(static_cast<int>(2 * i - 2),
                            static_cast<int>(2 * i - 1));
    spec.kernels.push_back({amplitude, g});
  }
  require_valid(spec);
  return Instance{params, n0, m, std::move(spec), std::nullopt, {}, 0};
}

Instance build_monotone_dd(const InstanceParams& params) {
  check_params(params);
  const int d = params.d;
  const double L = std::log(1.0 / params.epsilon);
  if (!(d < pow_int(params.c * params.c * L, 3))) {
    infeasible("d = " + std::to_string(d) +
               " >= (C^2 ln(1/eps))^3 = " +
               std::to_string(pow_int(params.c * params.c * L, 3)));
  }
  const std::int64_t n0 =
      pad_domain(params.n, Family::monotoneDd, params.epsilon, d, params.c);
  const int m = select_m(params.epsilon, params.c);
  const double n0d = static_cast<double>(n0);
  const double nd = pow_int(n0d, d);
  const double nd1 = pow_int(n0d, d + 1);
  const double two_d = pow_int(2.0, d);
  const double d_d = pow_int(static_cast<double>(d), d);

  const double amplitude = 4.0 * two_d * pow_int(m, 3) * d_d * params.epsilon / nd;
  const double cap = (two_d / 8.0) * d_d * d / nd1;  // 2^(d-3) d^(d+1) / n0^(d+1)
  if (amplitude >= cap) {
    infeasible("A = 2^(d+2) m^3 d^d eps / n0^d = " + std::to_string(amplitude) +
               " >= 2^(d-3) d^(d+1) / n0^(d+1) = " + std::to_string(cap));
  }
  const double g = std::cos(kPi / m);
  // Cross-cube safety: comparable bins exist between halfcubes of cubes whose
  // coordinate sums differ by exactly 1, whose base-mass gap is
  // 2^(d-1) d^d / n0^(d+1); two max-size deltas must fit under that gap.
  HalfcubeLayout layout{n0, d};
  if (layout.cubes_per_axis() >= 2) {
    const double unit_gap = (two_d / 2.0) * d_d / nd1;
    if (2.0 * amplitude * (1.0 + g) > unit_gap) {
      infeasible("cross-cube monotonicity needs 2 A (1+g) = " +
                 std::to_string(2.0 * amplitude * (1.0 + g)) +
                 " <= 2^(d-1) d^d / n0^(d+1) = " + std::to_string(unit_gap));
    }
  }

  const std::int64_t grid = layout.cubes_per_axis();
  const std::int64_t cubes = layout.cube_count();
  std::vector<double> q(2 * cubes);
  std::vector<std::int64_t> coord(d, 0);  // 0-based cube coords
  for (std::int64_t cube = 0; cube < cubes; ++cube) {
    std::int64_t coord_sum = 0;  // 1-based sum
    for (int a = 0; a < d; ++a) coord_sum += coord[a] + 1;
    const double mass = 5.0 * pow_int(2.0 * d, d) / (8.0 * nd) +
                        two_d * d_d * d / (4.0 * nd1) -
                        coord_sum * (two_d / 2.0) * d_d / nd1;
    q[2 * cube] = mass;
    q[2 * cube + 1] = mass;
    for (int a = d - 1; a >= 0; --a) {
      if (++coord[a] < grid) break;
      coord[a] = 0;
    }
  }
  EnsembleSpec spec{DiscreteDistribution(std::move(q)), {}, {}, m};
  for (std::int64_t cube = 0; cube < cubes; ++cube) {
    spec.pairs.emplace_back(static_cast<int>(2 * cube),
                            static_cast<int>(2 * cube + 1));
    spec.kernels.push_back({amplitude, g});
  }
  require_valid(spec);
  return Instance{params, n0, m, std::move(spec), layout, {}, 0};
}

Instance build_logconcave(const InstanceParams& params) {
  check_params(params);
  const std::int64_t n0 =
      pad_domain(params.n, Family::logconcave, params.epsilon, 1, params.c);
  const int m = select_m(params.epsilon, params.c);
  const double n0d = static_cast<double>(n0);

  // Q_i = (b/n0) exp(-(i/n0)^2), b the normalizer; computed as
  // exp(-(i/n0)^2) / S so the float masses sum to 1 up to summation rounding.
  double norm = 0.0, comp = 0.0;
  std::vector<double> expvals(n0);
  for (std::int64_t i = 1; i <= n0; ++i) {
    const double t = static_cast<double>(i) / n0d;
    expvals[i - 1] = std::exp(-t * t);
    const double y = expvals[i - 1] - comp;
    const double s = norm + y;
    comp = (s - norm) - y;
    norm = s;
  }
  std::vector<double> q_unprimed(params.n, 0.0);
  for (std::int64_t i = 0; i < n0; ++i) q_unprimed[i] = expvals[i] / norm;

  // Per-pair slack: C_i/n0^3 = Q_{6i-1} - sqrt(Q_{6i} Q_{6i-2})   (1-based).
  const std::int64_t s = n0 / 6;
  std::vector<double> shift(s);
  double min_shift = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= s; ++i) {
    const double mid = q_unprimed[6 * i - 2];
    const double geo = std::sqrt(q_unprimed[6 * i - 1] * q_unprimed[6 * i - 3]);
    shift[i - 1] = mid - geo;
    min_shift = std::min(min_shift, shift[i - 1]);
  }
  const double excursion = params.c * pow_int(m, 3) * params.epsilon / n0d;
  if (2.0 * excursion >= min_shift) {
    infeasible("2 C m^3 eps / n0 = " + std::to_string(2.0 * excursion) +
               " >= min_i C_i / n0^3 = " + std::to_string(min_shift) +
               " (yes-side delta could be non-positive)");
  }

  std::vector<double> q = q_unprimed;
  for (std::int64_t i = 1; i <= s; ++i) {
    q[6 * i - 5] += shift[i - 1];  // bin 6i-4, 1-based
    q[6 * i - 2] -= shift[i - 1];  // bin 6i-1, 1-based
  }
  const double g = std::cos(kPi / m);
  EnsembleSpec spec{DiscreteDistribution(std::move(q)), {}, {}, m};
  for (std::int64_t i = 1; i <= s; ++i) {
    spec.pairs.emplace_back(static_cast<int>(6 * i - 5),
                            static_cast<int>(6 * i - 2));
    spec.kernels.push_back({-excursion, g});
  }
  const auto check = validate(spec);
  if (!check.ok) {
    infeasible("log-concave spec fails Definition-3 validity: " +
               check.violation->constraint + ": " + check.violation->message);
  }
  return Instance{params, n0, m, std::move(spec), std::nullopt, std::move(shift), 0};
}

Instance build_instance(const InstanceParams& params, std::uint64_t creation_seed) {
  Instance instance = [&] {
    switch (params.family) {
      case Family::monotone1d: return build_monotone_1d(params);
      case Family::monotoneDd: return build_monotone_dd(params);
      case Family::logconcave: return build_logconcave(params);
    }
    throw Error(ErrorCode::invalid_argument, "unknown family");
  }();
  instance.creation_seed = creation_seed;
  return instance;
}

}  // namespace mmens
