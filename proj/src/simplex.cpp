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

#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace mmens::lp {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;
constexpr double kFeasTol = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0),
        cost_(cols + 1, 0.0), basis_(rows, -1) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (cols_ + 1) + cols_]; }
  double rhs(std::size_t r) const { return a_[r * (cols_ + 1) + cols_]; }
  double& cost(std::size_t c) { return cost_[c]; }
  double cost_rhs() const { return cost_[cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int basis(std::size_t r) const { return basis_[r]; }
  void set_basis(std::size_t r, int c) { basis_[r] = c; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    double* prow = &a_[pr * (cols_ + 1)];
    for (std::size_t c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      double* row = &a_[r * (cols_ + 1)];
      for (std::size_t c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    const double f = cost_[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= cols_; ++c) cost_[c] -= f * prow[c];
      cost_[pc] = 0.0;
    }
    basis_[pr] = static_cast<int>(pc);
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + r * (cols_ + 1), a_.begin() + (r + 1) * (cols_ + 1));
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<double> cost_;
  std::vector<int> basis_;
};

// Runs simplex iterations on a canonical tableau. enterable[c] marks columns
// allowed to enter the basis.
Status iterate(Tableau& t, const std::vector<char>& enterable) {
  const std::size_t max_iter = 200 * (t.rows() + t.cols()) + 1000;
  std::size_t stall = 0;
  double last_obj = t.cost_rhs();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const bool bland = stall > 2 * t.rows() + 50;
    // Entering column.
    std::size_t pc = t.cols();
    double best = -kCostTol;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!enterable[c]) continue;
      const double rc = t.cost(c);
      if (rc < best) {
        best = rc;
        pc = c;
        if (bland) break;  // first improving column
      }
    }
    if (pc == t.cols()) return Status::optimal;
    // Ratio test; ties broken toward the smallest basis index.
    std::size_t pr = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, pc);
      if (a > kPivotTol) {
        const double ratio = t.rhs(r) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && pr < t.rows() &&
             t.basis(r) < t.basis(pr))) {
          best_ratio = ratio;
          pr = r;
        }
      }
    }
    if (pr == t.rows()) return Status::unbounded;
    t.pivot(pr, pc);
    const double obj = t.cost_rhs();
    if (std::fabs(obj - last_obj) < 1e-14) {
      ++stall;
    } else {
      stall = 0;
      last_obj = obj;
    }
  }
  return Status::iteration_limit;
}

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = static_cast<std::size_t>(problem.num_vars);
  const std::size_t m = problem.rows.size();

  // Column layout: structural | slack/surplus (one per row) | artificial.
  std::size_t num_artificial = 0;
  for (const auto& row : problem.rows) {
    const bool flip = row.rhs < 0.0;
    const RowType type =
        !flip ? row.type
              : (row.type == RowType::le
                     ? RowType::ge
                     : (row.type == RowType::ge ? RowType::le : RowType::eq));
    if (type != RowType::le) ++num_artificial;
  }
  const std::size_t cols = n + m + num_artificial;
  Tableau t(m, cols);
  std::vector<char> is_artificial(cols, 0);

  std::size_t art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = problem.rows[r];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    RowType type = row.type;
    if (sign < 0.0) {
      type = type == RowType::le ? RowType::ge
                                 : (type == RowType::ge ? RowType::le : RowType::eq);
    }
    for (const auto& [var, coeff] : row.coeffs) t.at(r, var) += sign * coeff;
    t.rhs(r) = sign * row.rhs;
    if (type == RowType::le) {
      t.at(r, n + r) = 1.0;
      t.set_basis(r, static_cast<int>(n + r));
    } else {
      if (type == RowType::ge) t.at(r, n + r) = -1.0;
      t.at(r, art) = 1.0;
      is_artificial[art] = 1;
      t.set_basis(r, static_cast<int>(art));
      ++art;
    }
  }

  Solution sol;
  std::vector<char> enterable(cols, 1);

  if (num_artificial > 0) {
    // Phase 1: minimize the sum of artificials.
    for (std::size_t c = 0; c < cols; ++c) t.cost(c) = is_artificial[c] ? 1.0 : 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const int b = t.basis(r);
      if (b >= 0 && is_artificial[b]) {
        for (std::size_t c = 0; c <= cols; ++c) t.cost(c) -= t.at(r, c);
      }
    }
    const Status st = iterate(t, enterable);
    if (st == Status::iteration_limit) {
      sol.status = st;
      return sol;
    }
    if (-t.cost_rhs() > kFeasTol) {  // cost row stores -objective
      sol.status = Status::infeasible;
      return sol;
    }
    // Pivot artificials out of the basis; drop rows that are redundant.
    for (std::size_t r = 0; r < t.rows();) {
      const int b = t.basis(r);
      if (b >= 0 && is_artificial[b]) {
        std::size_t pc = cols;
        for (std::size_t c = 0; c < n + m; ++c) {
          if (std::fabs(t.at(r, c)) > kPivotTol) {
            pc = c;
            break;
          }
        }
        if (pc == cols) {
          t.drop_row(r);
          continue;
        }
        t.pivot(r, pc);
      }
      ++r;
    }
  }

  // Phase 2.
  for (std::size_t c = 0; c < cols; ++c) {
    enterable[c] = is_artificial[c] ? 0 : 1;
    t.cost(c) = is_artificial[c] ? 0.0
                                 : (c < n ? problem.objective[c] : 0.0);
  }
  t.cost(cols) = 0.0;  // cost rhs
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const int b = t.basis(r);
    if (b >= 0 && b < static_cast<int>(n) && problem.objective[b] != 0.0) {
      const double f = problem.objective[b];
      for (std::size_t c = 0; c <= cols; ++c) t.cost(c) -= f * t.at(r, c);
    }
  }
  const Status st = iterate(t, enterable);
  sol.status = st;
  if (st != Status::optimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const int b = t.basis(r);
    if (b >= 0 && b < static_cast<int>(n)) sol.x[b] = t.rhs(r);
  }
  double obj = 0.0;
  for (std::size_t v = 0; v < n; ++v) obj += problem.objective[v] * sol.x[v];
  sol.objective = obj;
  return sol;
}

}  // namespace mmens::lp
