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

#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace mmens;

TEST_CASE("select_m picks the smallest odd integer above C ln(1/eps)") {
  CHECK(select_m(std::exp(-1.0), 2.0) == 3);
  CHECK(select_m(std::exp(-3.0), 2.0) == 7);
  // Boundary: when C ln(1/eps) lands exactly on an odd integer the strict
  // inequality moves up to the next odd one.
  const double L = std::log(1.0 / 0.05);
  const double c = 3.0 / L;
  if (c * L == 3.0) {
    CHECK(select_m(0.05, c) == 5);
  }
  CHECK(select_m(1e-9, 4.0) == 83);
}

TEST_CASE("pad_domain caps and parity") {
  CHECK(pad_domain(100, Family::monotone1d, 1e-8, 1, 1.0) == 100);
  CHECK(pad_domain(101, Family::monotone1d, 1e-8, 1, 1.0) == 100);
  CHECK(pad_domain(20, Family::logconcave, 1e-8, 1, 1.0) == 18);
  CHECK(pad_domain(16, Family::monotoneDd, 1e-9, 2, 4.0) == 16);
  CHECK(pad_domain(18, Family::monotoneDd, 1e-9, 2, 4.0) == 16);
  // The cap binds when epsilon is large: 1/(C^4 ln^3(1/eps) eps) < 4.
  CHECK_THROWS_AS(pad_domain(60, Family::monotone1d, 0.02, 1, 4.0), Error);
  CHECK_THROWS_AS(pad_domain(60, Family::logconcave, 0.02, 1, 4.0), Error);
}

TEST_CASE("monotone 1-D base at n=6 matches the hand-evaluated masses") {
  const auto instance =
      build_monotone_1d({Family::monotone1d, 1e-9, 6, 1, 4.0});
  const auto& q = instance.spec.base.masses();
  REQUIRE(q.size() == 6);
  const double expected[] = {7.0 / 36, 7.0 / 36, 6.0 / 36,
                             6.0 / 36, 5.0 / 36, 5.0 / 36};
  for (int b = 0; b < 6; ++b) CHECK(std::fabs(q[b] - expected[b]) <= 1e-15);
  CHECK(instance.spec.pairs.size() == 3);
  CHECK(instance.spec.pairs[1] == std::pair<int, int>{2, 3});
}

TEST_CASE("monotone 1-D structural properties") {
  for (const std::int64_t n : {6, 12, 60, 101}) {
    const auto instance =
        build_monotone_1d({Family::monotone1d, 2e-10, n, 1, 4.0});
    const auto& q = instance.spec.base.masses();
    // Base is monotone nonincreasing with steps in {0, 1/n0^2}.
    const double step = 1.0 / (static_cast<double>(instance.n0) *
                               static_cast<double>(instance.n0));
    for (std::int64_t b = 0; b + 1 < instance.n0; ++b) {
      const double diff = q[b] - q[b + 1];
      const bool flat = std::fabs(diff) <= 1e-15;
      const bool one_step = std::fabs(diff - step) <= 1e-15;
      CHECK((flat || one_step));
    }
    CHECK(is_monotone(instance.spec.base, TotalOrder{}));
    // Embedding: zero mass above n0.
    for (std::int64_t b = instance.n0; b < n; ++b) CHECK(q[b] == 0.0);
    // x_max stays inside the proposition regime.
    CHECK(x_max(instance.spec) < 0.1);
    const double amplitude = instance.spec.kernels[0].amplitude;
    const double min_q = q[instance.n0 - 1];
    CHECK(amplitude / (2.0 * min_q) < 0.1);
  }
}

TEST_CASE("monotone 1-D infeasible amplitude is rejected") {
  // Large epsilon: A = 8 m^3 eps / n violates A < 1/(4 n^2) long before the
  // pad cap admits n, so pad_domain already rejects; pick parameters where
  // pad admits but the amplitude check fires.
  CHECK_THROWS_AS(build_monotone_1d({Family::monotone1d, 2e-8, 3000, 1, 1.0}),
                  Error);
}

TEST_CASE("monotone d-D reduces to the 1-D construction at d=1") {
  const InstanceParams params{Family::monotoneDd, 5e-10, 12, 1, 4.0};
  const auto dd = build_monotone_dd(params);
  const auto one =
      build_monotone_1d({Family::monotone1d, 5e-10, 12, 1, 4.0});
  REQUIRE(dd.spec.base.size() == one.spec.base.size());
  for (std::size_t b = 0; b < dd.spec.base.size(); ++b) {
    CHECK(std::fabs(dd.spec.base[b] - one.spec.base[b]) <= 1e-15);
  }
  CHECK(dd.spec.pairs == one.spec.pairs);
  CHECK(std::fabs(dd.spec.kernels[0].amplitude -
                  one.spec.kernels[0].amplitude) <=
        1e-15 * one.spec.kernels[0].amplitude);
  CHECK(dd.spec.order == one.spec.order);
}

TEST_CASE("monotone d-D base at d=2, n=8") {
  const auto instance =
      build_monotone_dd({Family::monotoneDd, 5e-10, 8, 2, 4.0});
  REQUIRE(instance.layout.has_value());
  const auto& q = instance.spec.base.masses();
  REQUIRE(q.size() == 8);  // 2 x (2x2 cube grid)
  // Coordinate-sum monotone: cube (1,1) heavier than cube (2,2).
  CHECK(q[0] > q[6]);
  // Paired halves are equal and all masses clear the paper's floor.
  const double floor_mass = 0.25 * std::pow(2.0 * 2 / 8.0, 2);
  for (std::int64_t c = 0; c < 4; ++c) {
    CHECK(q[2 * c] == q[2 * c + 1]);
    CHECK(q[2 * c] > floor_mass);
  }
  CHECK(x_max(instance.spec) < 0.1);
}

TEST_CASE("monotone d-D cross-cube safety check fires when binding") {
  // At C=1, eps=3e-6 (m = 13, n0 = 8) the stated cap 2^(d-3) d^(d+1)/n^(d+1)
  // admits A but two max deltas exceed the unit coordinate-sum gap; the
  // builder must refuse.
  try {
    build_monotone_dd({Family::monotoneDd, 3e-6, 8, 2, 1.0});
    FAIL("expected infeasible_parameters");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible_parameters);
    CHECK(std::string(e.what()).find("cross-cube") != std::string::npos);
  }
}

TEST_CASE("amplitudes inside the gap genuinely break yes-side monotonicity") {
  // Demonstrates why the builder's extra bound exists: with A just under
  // 2^(d-3) d^(d+1)/n^(d+1), a yes draw whose two neighboring deltas are both
  // maximal produces a lifted distribution that is not monotone.
  auto instance = build_monotone_dd({Family::monotoneDd, 5e-10, 8, 2, 4.0});
  EnsembleSpec spec = instance.spec;
  const double paper_cap = std::pow(2.0, 2 - 3) * std::pow(2.0, 3) /
                           std::pow(8.0, 3);
  for (auto& kernel : spec.kernels) kernel.amplitude = 0.99 * paper_cap;
  REQUIRE(validate(spec).ok);
  // Atom 0 is the maximal delta A(1+g); pick it for cubes (0,0) and (1,0).
  std::vector<int> idx(4, 1);
  idx[0] = 0;  // cube (0,0)
  idx[2] = 0;  // cube (1,0): row-major over the 2x2 cube grid
  const auto masses = apply_atoms(spec, Side::yes, idx);
  const auto lifted = lift_halfcube(
      *instance.layout, DiscreteDistribution::unchecked(masses));
  CHECK_FALSE(is_monotone(lifted, LatticeOrder{8, 2}));
}

TEST_CASE("halfcube layout maps lattice bins to halves") {
  const HalfcubeLayout layout{8, 2};
  CHECK(layout.cubes_per_axis() == 2);
  CHECK(layout.cube_count() == 4);
  CHECK(layout.halfcube_count() == 8);
  CHECK(layout.halfcube_size() == 8);
  CHECK(layout.lattice_size() == 64);
  // Lattice (0,0) is in cube (0,0), first half; (4,1) is cube (1,0), first
  // half (axis-0 offset 0 < d); (3,7) is cube (0,1), second half (offset 3).
  CHECK(layout.halfcube_of_lattice(0) == 0);
  CHECK(layout.halfcube_of_lattice(4 * 8 + 1) == 4);
  CHECK(layout.halfcube_of_lattice(3 * 8 + 7) == 3);
}

TEST_CASE("lift spreads halfcube mass uniformly") {
  const HalfcubeLayout pair_layout{2, 1};
  const auto lifted =
      lift_halfcube(pair_layout, DiscreteDistribution({0.7, 0.3}));
  CHECK(lifted[0] == 0.7);
  CHECK(lifted[1] == 0.3);

  const HalfcubeLayout layout{8, 2};
  const DiscreteDistribution uniform(std::vector<double>(8, 0.125));
  const auto flat = lift_halfcube(layout, uniform);
  for (std::int64_t x = 0; x < 64; ++x) {
    CHECK(flat[x] == doctest::Approx(1.0 / 64).epsilon(1e-14));
  }
  // Mass conservation per halfcube is exact.
  std::vector<double> masses(8, 0.0);
  masses[5] = 1.0;
  const auto point = lift_halfcube(layout, DiscreteDistribution(masses));
  double recovered = 0.0;
  for (std::int64_t x = 0; x < 64; ++x) {
    if (layout.halfcube_of_lattice(x) == 5) recovered += point[x];
  }
  CHECK(recovered == 1.0);
}

TEST_CASE("log-concave construction at n=12") {
  const auto instance =
      build_logconcave({Family::logconcave, 1e-12, 12, 1, 4.0});
  const std::int64_t n0 = instance.n0;
  REQUIRE(n0 == 12);
  REQUIRE(instance.pair_shift.size() == 2);
  CHECK(instance.spec.pairs[0] == std::pair<int, int>{1, 4});
  CHECK(instance.spec.pairs[1] == std::pair<int, int>{7, 10});

  // b = n / sum exp(-(i/n)^2) lies in (1, e).
  double total = 0.0;
  for (std::int64_t i = 1; i <= n0; ++i) {
    total += std::exp(-std::pow(i / static_cast<double>(n0), 2));
  }
  const double b = n0 / total;
  CHECK(b > 1.0);
  CHECK(b < std::exp(1.0));

  // Recover the unprimed base and check the slack against its closed form
  // b n^2 e^{-(6i-1)^2/n^2} (1 - e^{-1/n^2}); the normalized slack sits in
  // (1/2, 1) as n^2 (1 - e^{-1/n^2}).
  std::vector<double> unprimed = instance.spec.base.masses();
  for (std::size_t i = 0; i < instance.pair_shift.size(); ++i) {
    unprimed[instance.spec.pairs[i].first] -= instance.pair_shift[i];
    unprimed[instance.spec.pairs[i].second] += instance.pair_shift[i];
  }
  const double nd = static_cast<double>(n0);
  for (std::size_t i = 1; i <= instance.pair_shift.size(); ++i) {
    const double closed = (b / nd) *
                          std::exp(-std::pow((6.0 * i - 1.0) / nd, 2)) *
                          (nd * nd) * (1.0 - std::exp(-1.0 / (nd * nd))) /
                          (nd * nd);
    CHECK(instance.pair_shift[i - 1] ==
          doctest::Approx(closed).epsilon(1e-11));
    const double normalized =
        instance.pair_shift[i - 1] /
        ((b / nd) * std::exp(-std::pow((6.0 * i - 1.0) / nd, 2)));
    CHECK(normalized * nd * nd > 0.5);
    CHECK(normalized * nd * nd < 1.0);
  }

  // The unprimed base is strictly log-concave (ratio e^{2/n^2} > 1); the
  // primed base is exactly tight at each pair's 6i-1 bin.
  const DiscreteDistribution q_unprimed(unprimed);
  CHECK(is_log_concave(q_unprimed));
  for (std::size_t i = 1; i + 1 < q_unprimed.size() - 1; ++i) {
    CHECK(q_unprimed[i] * q_unprimed[i] >
          q_unprimed[i - 1] * q_unprimed[i + 1]);
  }
  CHECK(is_log_concave(instance.spec.base));
  for (std::size_t i = 0; i < instance.spec.pairs.size(); ++i) {
    const int mid = instance.spec.pairs[i].second;  // bin 6i-1, 0-based
    const double tight = instance.spec.base[mid] -
                         std::sqrt(instance.spec.base[mid - 1] *
                                   instance.spec.base[mid + 1]);
    CHECK(std::fabs(tight) <= 1e-15);
  }
  CHECK(x_max(instance.spec) < 0.1);
}

TEST_CASE("log-concave primed and shifted-kernel views agree") {
  const auto instance =
      build_logconcave({Family::logconcave, 1e-12, 12, 1, 4.0});
  std::vector<double> unprimed = instance.spec.base.masses();
  for (std::size_t i = 0; i < instance.pair_shift.size(); ++i) {
    unprimed[instance.spec.pairs[i].first] -= instance.pair_shift[i];
    unprimed[instance.spec.pairs[i].second] += instance.pair_shift[i];
  }
  for (const Side side : {Side::yes, Side::no}) {
    for (const std::vector<int> idx : {std::vector<int>{0, 0},
                                       std::vector<int>{2, 1},
                                       std::vector<int>{instance.m - 1, 3}}) {
      const auto primed_view = apply_atoms(instance.spec, side, idx);
      // Shifted-kernel view: delta_i = C_i/n^3 + A(cos theta + g) applied to
      // the unprimed base.
      std::vector<double> shifted = unprimed;
      for (std::size_t i = 0; i < instance.spec.pairs.size(); ++i) {
        const double delta =
            instance.pair_shift[i] +
            atom_value(pair_kernel(instance.spec, i, side), idx[i]);
        CHECK(delta > 0.0);  // yes side strictly positive; no side too except
                             // the excursion which is even larger
        shifted[instance.spec.pairs[i].first] += delta;
        shifted[instance.spec.pairs[i].second] -= delta;
      }
      for (std::size_t b = 0; b < primed_view.size(); ++b) {
        CHECK(std::fabs(primed_view[b] - shifted[b]) <= 1e-15);
      }
    }
  }
}

TEST_CASE("log-concave padding keeps a contiguous prefix support") {
  const auto instance =
      build_logconcave({Family::logconcave, 1e-12, 64, 1, 4.0});
  CHECK(instance.n0 == 60);
  for (std::int64_t b = 0; b < instance.n0; ++b) {
    CHECK(instance.spec.base[b] > 0.0);
  }
  for (std::int64_t b = instance.n0; b < 64; ++b) {
    CHECK(instance.spec.base[b] == 0.0);
  }
  CHECK(is_log_concave(instance.spec.base));
}

TEST_CASE("log-concave infeasibility when the excursion eats the slack") {
  // eps = 1e-9 passes the pad cap at n = 12 but 2 C m^3 eps / n overtakes
  // min_i C_i / n^3, so a yes-side delta could go non-positive.
  try {
    build_logconcave({Family::logconcave, 1e-9, 12, 1, 4.0});
    FAIL("expected infeasible_parameters");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible_parameters);
    CHECK(std::string(e.what()).find("C_i") != std::string::npos);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_instance({Family::monotone1d, 0.6, 10, 1, 4.0}, 0),
                  Error);
  CHECK_THROWS_AS(build_instance({Family::monotone1d, 1e-9, 10, 0, 4.0}, 0),
                  Error);
  CHECK_THROWS_AS(build_instance({Family::monotone1d, 1e-9, 10, 1, 0.5}, 0),
                  Error);
  CHECK_THROWS_AS(build_instance({Family::logconcave, 1e-9, 10, 2, 4.0}, 0),
                  Error);
}

TEST_CASE("zero-amplitude kernels on the primed base draw exactly Q-prime") {
  const auto instance =
      build_logconcave({Family::logconcave, 1e-12, 18, 1, 4.0});
  EnsembleSpec frozen = instance.spec;
  for (auto& kernel : frozen.kernels) kernel.amplitude = 0.0;
  Rng rng = make_rng(4);
  const Draw d = draw(frozen, Side::yes, rng);
  CHECK(d.distribution.masses() == instance.spec.base.masses());
  CHECK(is_log_concave(d.distribution));
}
