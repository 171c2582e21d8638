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

#include "descriptor.hpp"
#include "error.hpp"
#include "verify.hpp"

using namespace mmens;

TEST_CASE("doubles round-trip bit-exactly through 17 significant digits") {
  Rng rng = make_rng(8);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const double v = std::ldexp(unit(rng), (t % 600) - 300);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(parse_double(format_double(0.1)) == 0.1);
  CHECK_THROWS_AS(parse_double("not-a-number"), Error);
}

TEST_CASE("instance descriptors round-trip losslessly for all families") {
  const std::uint64_t seed = 31337;
  for (const auto& params :
       {InstanceParams{Family::monotone1d, 5e-10, 60, 1, 4.0},
        InstanceParams{Family::monotoneDd, 5e-10, 8, 2, 4.0},
        InstanceParams{Family::logconcave, 1e-12, 64, 1, 4.0}}) {
    const auto instance = build_instance(params, seed);
    const std::string text = instance_to_json(instance);
    const auto parsed = instance_from_json(text);
    CHECK(instance_to_json(parsed) == text);  // serialize . parse = identity
    CHECK(parsed.params.family == params.family);
    CHECK(parsed.params.epsilon == params.epsilon);
    CHECK(parsed.params.n == params.n);
    CHECK(parsed.params.d == params.d);
    CHECK(parsed.params.c == params.c);
    CHECK(parsed.n0 == instance.n0);
    CHECK(parsed.m == instance.m);
    CHECK(parsed.creation_seed == seed);
    CHECK(parsed.spec.base.masses() == instance.spec.base.masses());
    CHECK(parsed.spec.pairs == instance.spec.pairs);
    REQUIRE(parsed.spec.kernels.size() == instance.spec.kernels.size());
    for (std::size_t i = 0; i < parsed.spec.kernels.size(); ++i) {
      CHECK(parsed.spec.kernels[i].amplitude ==
            instance.spec.kernels[i].amplitude);
      CHECK(parsed.spec.kernels[i].offset == instance.spec.kernels[i].offset);
    }
    CHECK(parsed.layout.has_value() == instance.layout.has_value());
  }
}

TEST_CASE("descriptor parse failures carry io errors") {
  CHECK_THROWS_AS(instance_from_json("{"), Error);
  CHECK_THROWS_AS(instance_from_json("{\"schema_version\": 99}"), Error);
}

TEST_CASE("verify passes a freshly built feasible instance") {
  const auto instance =
      build_instance({Family::monotone1d, 1e-8, 150, 1, 1.0}, 7);
  VerifyOptions options;
  options.draws = 300;
  options.seed = 5;
  // m^s is astronomically large here, so the yes check samples.
  const auto report = run_verify(instance, options);
  CHECK(report.pass);
  CHECK(report.yes_violations == 0);
  CHECK_FALSE(report.yes_exhaustive);
  CHECK(report.farness_fraction >= 0.95);
  const std::string jsonl = report_to_jsonl(report);
  CHECK(jsonl.find("\"check\":\"validate\"") != std::string::npos);
  CHECK(jsonl.find("\"summary\":\"pass\"") != std::string::npos);
}

TEST_CASE("verify flags a corrupted amplitude as a validation failure") {
  auto instance = build_instance({Family::monotone1d, 1e-8, 150, 1, 1.0}, 7);
  instance.spec.kernels[1].amplitude = 0.5;  // way past Definition-3
  VerifyOptions options;
  options.draws = 10;
  const auto report = run_verify(instance, options);
  CHECK_FALSE(report.pass);
  REQUIRE_FALSE(report.checks.empty());
  CHECK(report.checks[0].name == "validate");
  CHECK_FALSE(report.checks[0].pass);
  CHECK(report.checks[0].details.find("amplitude_bound") != std::string::npos);
  CHECK(report.checks[0].details.find("pair 1") != std::string::npos);
}

TEST_CASE("verify runs exhaustively when the joint outcome count fits") {
  const auto instance =
      build_instance({Family::monotone1d, 1e-9, 6, 1, 4.0}, 7);
  VerifyOptions options;
  options.draws = 400;
  // The n=6 instance has m^s = 83^3 = 571787 outcomes: within budget.
  options.farness_threshold = 0.005;  // Pr(excursion) = 1-(1-1/83)^3 = 3.6%
  const auto report = run_verify(instance, options);
  CHECK(report.yes_exhaustive);
  CHECK(report.yes_cases == 571787);
  CHECK(report.yes_violations == 0);
  CHECK(report.pass);
}
