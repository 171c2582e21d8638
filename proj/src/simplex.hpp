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

#include <utility>
#include <vector>

namespace mmens::lp {

enum class RowType { le, ge, eq };

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, value)
  RowType type = RowType::le;
  double rhs = 0.0;
};

// min objective . x  subject to rows, x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;
};

// Two-phase dense-tableau primal simplex. Deterministic; Dantzig pricing with
// a Bland fallback kicking in after long stalls (anti-cycling).
Solution solve(const Problem& problem);

}  // namespace mmens::lp
