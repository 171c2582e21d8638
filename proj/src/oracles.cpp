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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "simplex.hpp"

namespace mmens {

namespace {

std::int64_t checked_lattice_size(const DiscreteDistribution& p,
                                  const LatticeOrder& order) {
  std::int64_t size = 1;
  for (int a = 0; a < order.d; ++a) size *= order.n;
  if (static_cast<std::int64_t>(p.size()) != size) {
    throw Error(ErrorCode::invalid_argument,
                "distribution has " + std::to_string(p.size()) +
                    " bins, lattice order expects " + std::to_string(size));
  }
  return size;
}

bool is_monotone_total(const std::vector<double>& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] < p[i + 1] - kMembershipSlack) return false;
  }
  return true;
}

bool is_monotone_lattice(const DiscreteDistribution& p,
                         const LatticeOrder& order) {
  const std::int64_t size = checked_lattice_size(p, order);
  const std::int64_t n = order.n;
  const int d = order.d;
  std::vector<std::int64_t> stride(d);
  stride[d - 1] = 1;
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * n;

  // suffix_max[x] = max of p over all y >= x componentwise.
  std::vector<double> suffix_max(p.masses());
  std::vector<std::int64_t> coord(d);
  for (std::int64_t x = size - 1; x >= 0; --x) {
    std::int64_t rem = x;
    for (int a = 0; a < d; ++a) {
      coord[a] = rem / stride[a];
      rem %= stride[a];
    }
    for (int a = 0; a < d; ++a) {
      if (coord[a] + 1 < n) {
        suffix_max[x] = std::max(suffix_max[x], suffix_max[x + stride[a]]);
      }
    }
  }
  std::int64_t diag = 0;  // offset of +(1,...,1)
  for (int a = 0; a < d; ++a) diag += stride[a];
  for (std::int64_t x = 0; x < size; ++x) {
    std::int64_t rem = x;
    bool has_successor = true;
    for (int a = 0; a < d; ++a) {
      const std::int64_t c = rem / stride[a];
      rem %= stride[a];
      if (c + 1 >= n) {
        has_successor = false;
        break;
      }
    }
    if (has_successor && p[x] < suffix_max[x + diag] - kMembershipSlack) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_monotone(const DiscreteDistribution& p, const Order& order) {
  if (std::holds_alternative<TotalOrder>(order)) {
    return is_monotone_total(p.masses());
  }
  return is_monotone_lattice(p, std::get<LatticeOrder>(order));
}

bool is_log_concave(const DiscreteDistribution& p) {
  const auto& q = p.masses();
  std::size_t first = 0;
  while (first < q.size() && q[first] <= 0.0) ++first;
  std::size_t last = q.size();
  while (last > first && q[last - 1] <= 0.0) --last;
  if (first >= last) return false;  // empty support cannot occur for valid p
  for (std::size_t i = first; i < last; ++i) {
    if (q[i] <= 0.0) return false;  // gap in support
  }
  for (std::size_t i = first + 1; i + 1 < last; ++i) {
    if (q[i] * q[i] < q[i - 1] * q[i + 1] - kMembershipSlack) return false;
  }
  return true;
}

DistanceCertificate gamma_distance_1d(const DiscreteDistribution& p) {
  if (p.size() % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "gamma_distance_1d needs an even number of bins");
  }
  DistanceCertificate cert;
  cert.method = CertMethod::gamma1d;
  cert.per_unit_terms.reserve(p.size() / 2);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
    const double gamma = p[i] < p[i + 1] ? (p[i + 1] - p[i]) / 2.0 : 0.0;
    cert.per_unit_terms.push_back(gamma);
    sum += gamma;
  }
  cert.lower_bound = sum;
  return cert;
}

DistanceCertificate gamma_distance_halfcube(const HalfcubeLayout& layout,
                                            const DiscreteDistribution& p) {
  if (static_cast<std::int64_t>(p.size()) != layout.halfcube_count()) {
    throw Error(ErrorCode::invalid_argument,
                "halfcube distribution size does not match layout");
  }
  const double factor =
      std::pow((2.0 * layout.d - 1.0) / (2.0 * layout.d), layout.d - 1);
  DistanceCertificate cert;
  cert.method = CertMethod::gammaHalfcube;
  cert.per_unit_terms.reserve(layout.cube_count());
  double sum = 0.0;
  for (std::int64_t cube = 0; cube < layout.cube_count(); ++cube) {
    const double excess = p[2 * cube + 1] - p[2 * cube];  // K mass - J mass
    const double gamma = factor * std::max(0.0, excess);
    cert.per_unit_terms.push_back(gamma);
    sum += gamma;
  }
  cert.lower_bound = 0.5 * sum;
  return cert;
}

DistanceCertificate sqrt_triple_distance(const DiscreteDistribution& p) {
  if (p.size() % 3 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "sqrt_triple_distance needs bin count divisible by 3");
  }
  DistanceCertificate cert;
  cert.method = CertMethod::sqrtTriple;
  cert.per_unit_terms.reserve(p.size() / 3);
  double sum = 0.0;
  for (std::size_t t = 0; t * 3 < p.size(); ++t) {
    const double lo = p[3 * t];        // p_{3i-2}
    const double mid = p[3 * t + 1];   // p_{3i-1}
    const double hi = p[3 * t + 2];    // p_{3i}
    if (lo == 0.0 && mid == 0.0 && hi == 0.0) {
      cert.per_unit_terms.push_back(0.0);
      continue;
    }
    if (!(lo > hi && hi > 0.8 * lo && mid > 0.75 * hi)) {
      throw Error(ErrorCode::hypothesis_violation,
                  "window hypothesis fails at triple " + std::to_string(t) +
                      ": need p_{3i-2} > p_{3i} > (4/5)p_{3i-2} and "
                      "p_{3i-1} > (3/4)p_{3i}");
    }
    const double term = std::max(0.0, std::sqrt(lo * hi) - mid);
    cert.per_unit_terms.push_back(term);
    sum += term;
  }
  cert.lower_bound = 0.5 * sum;
  return cert;
}

DistanceCertificate lp_distance_to_monotone(const DiscreteDistribution& p,
                                            const Order& order,
                                            std::int64_t bin_budget) {
  const std::int64_t n_bins = static_cast<std::int64_t>(p.size());
  if (n_bins > bin_budget) {
    throw Error(ErrorCode::budget_exceeded,
                "lp_distance_to_monotone: " + std::to_string(n_bins) +
                    " bins exceed budget " + std::to_string(bin_budget));
  }

  // Variables: q_0..q_{n-1}, e_0..e_{n-1}; minimize (1/2) sum e.
  lp::Problem prob;
  prob.num_vars = static_cast<int>(2 * n_bins);
  prob.objective.assign(prob.num_vars, 0.0);
  for (std::int64_t i = 0; i < n_bins; ++i) {
    prob.objective[n_bins + i] = 0.5;
  }

  auto add_cover = [&](std::int64_t lo, std::int64_t hi) {
    // q must satisfy q_lo >= q_hi.
    lp::Row row;
    row.coeffs = {{static_cast<int>(hi), 1.0}, {static_cast<int>(lo), -1.0}};
    row.type = lp::RowType::le;
    row.rhs = 0.0;
    prob.rows.push_back(std::move(row));
  };

  if (std::holds_alternative<TotalOrder>(order)) {
    for (std::int64_t i = 0; i + 1 < n_bins; ++i) add_cover(i, i + 1);
  } else {
    const auto& lat = std::get<LatticeOrder>(order);
    checked_lattice_size(p, lat);
    const std::int64_t n = lat.n;
    const int d = lat.d;
    std::vector<std::int64_t> stride(d);
    stride[d - 1] = 1;
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * n;
    // Covering pairs of strict dominance: gaps >= 1 in every coordinate with
    // at least one coordinate gap exactly 1.
    std::vector<std::int64_t> coord(d), gap(d);
    for (std::int64_t x = 0; x < n_bins; ++x) {
      std::int64_t rem = x;
      for (int a = 0; a < d; ++a) {
        coord[a] = rem / stride[a];
        rem %= stride[a];
      }
      bool any = true;
      for (int a = 0; a < d; ++a) {
        if (coord[a] + 1 >= n) any = false;
        gap[a] = 1;
      }
      if (!any) continue;
      while (true) {
        bool has_unit = false;
        for (int a = 0; a < d; ++a) has_unit |= gap[a] == 1;
        if (has_unit) {
          std::int64_t y = x;
          for (int a = 0; a < d; ++a) y += gap[a] * stride[a];
          add_cover(x, y);
        }
        int axis = d - 1;
        while (axis >= 0) {
          if (coord[axis] + ++gap[axis] < n) break;
          gap[axis] = 1;
          --axis;
        }
        if (axis < 0) break;
      }
    }
  }

  for (std::int64_t i = 0; i < n_bins; ++i) {
    lp::Row upper;  // q_i - e_i <= p_i
    upper.coeffs = {{static_cast<int>(i), 1.0},
                    {static_cast<int>(n_bins + i), -1.0}};
    upper.type = lp::RowType::le;
    upper.rhs = p[i];
    prob.rows.push_back(std::move(upper));
    lp::Row lower;  // q_i + e_i >= p_i
    lower.coeffs = {{static_cast<int>(i), 1.0},
                    {static_cast<int>(n_bins + i), 1.0}};
    lower.type = lp::RowType::ge;
    lower.rhs = p[i];
    prob.rows.push_back(std::move(lower));
  }
  lp::Row norm;
  for (std::int64_t i = 0; i < n_bins; ++i) {
    norm.coeffs.emplace_back(static_cast<int>(i), 1.0);
  }
  norm.type = lp::RowType::eq;
  norm.rhs = 1.0;
  prob.rows.push_back(std::move(norm));

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) {
    throw Error(ErrorCode::solver_failure,
                "LP solve did not reach optimality (status " +
                    std::to_string(static_cast<int>(sol.status)) + ")");
  }
  DistanceCertificate cert;
  cert.method = CertMethod::lpExact;
  cert.lower_bound = std::max(0.0, sol.objective);
  return cert;
}

}  // namespace mmens
