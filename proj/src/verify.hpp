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

#include "instances.hpp"

namespace mmens {

struct VerifyOptions {
  std::int64_t draws = 1000;
  std::uint64_t seed = 1;
  enum class Mode { automatic, exhaustive, sampled } mode = Mode::automatic;
  // The paper's 99% farness probability is asymptotic; the pass threshold is
  // configuration (documented in the report).
  double farness_threshold = 0.95;
  std::uint64_t yes_budget = 1000000;
  std::int64_t lp_bin_budget = 4096;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass = false;
  double farness_fraction = 0.0;
  double farness_threshold = 0.0;
  std::int64_t yes_cases = 0;
  std::int64_t yes_violations = 0;
  bool yes_exhaustive = false;
  double x_max = 0.0;
};

// Runs the certified-property pass: spec validity, kernel moment matching
// below the order, yes-side property on every draw (exhaustive when the joint
// outcome count fits the budget), and no-side certified farness fraction.
VerifyReport run_verify(const Instance& instance, const VerifyOptions& options);

// One JSON object per line, one line per check plus a summary line.
std::string report_to_jsonl(const VerifyReport& report);

std::string report_to_text(const VerifyReport& report);

}  // namespace mmens
