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

#include "indist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace mmens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// log Binomial(n, r) pmf at k, handling r in {0, 1} exactly.
double log_binom_pmf(std::int64_t n, double r, std::int64_t k) {
  if (r <= 0.0) return k == 0 ? 0.0 : kNegInf;
  if (r >= 1.0) return k == n ? 0.0 : kNegInf;
  return log_choose(n, k) + k * std::log(r) + (n - k) * std::log1p(-r);
}

void add_binomial_mixture_row(std::vector<double>& pmf, std::int64_t B,
                              double r, double weight) {
  if (r <= 0.0) {
    pmf[0] += weight;
    return;
  }
  if (r >= 1.0) {
    pmf[B] += weight;
    return;
  }
  const double lr = std::log(r);
  const double l1r = std::log1p(-r);
  for (std::int64_t l = 0; l <= B; ++l) {
    pmf[l] += weight * std::exp(log_choose(B, l) + l * lr + (B - l) * l1r);
  }
}

}  // namespace

PairConditionalPMF pair_conditional_pmf(const EnsembleSpec& spec,
                                        std::size_t pair_index, Side side,
                                        std::int64_t conditioned_count) {
  if (pair_index >= spec.pairs.size()) {
    throw Error(ErrorCode::invalid_argument, "pair index out of range");
  }
  if (conditioned_count < 0) {
    throw Error(ErrorCode::invalid_argument, "conditioned count must be >= 0");
  }
  const auto [j, k] = spec.pairs[pair_index];
  const double qj = spec.base.masses()[j];
  const double qk = spec.base.masses()[k];
  const double w = qj + qk;
  const MomentKernel kernel = pair_kernel(spec, pair_index, side);

  PairConditionalPMF out;
  out.pair_index = pair_index;
  out.conditioned_count = conditioned_count;
  out.pmf.assign(conditioned_count + 1, 0.0);
  const double weight = 1.0 / spec.order;
  for (int a = 0; a < spec.order; ++a) {
    const double r = (qj + atom_value(kernel, a)) / w;
    add_binomial_mixture_row(out.pmf, conditioned_count,
                             std::clamp(r, 0.0, 1.0), weight);
  }
  return out;
}

double pair_tv(const EnsembleSpec& spec, std::size_t pair_index,
               std::int64_t conditioned_count) {
  const auto yes =
      pair_conditional_pmf(spec, pair_index, Side::yes, conditioned_count);
  const auto no =
      pair_conditional_pmf(spec, pair_index, Side::no, conditioned_count);
  double sum = 0.0;
  for (std::int64_t l = 0; l <= conditioned_count; ++l) {
    sum += std::fabs(yes.pmf[l] - no.pmf[l]);
  }
  return 0.5 * sum;
}

BoundInputs bound_inputs(const EnsembleSpec& spec, std::int64_t n_samples) {
  BoundInputs in;
  in.s = static_cast<std::int64_t>(spec.pairs.size());
  in.m = spec.order;
  in.n_samples = n_samples;
  in.min_pair_weight = min_pair_weight(spec);
  in.max_pair_weight = max_pair_weight(spec);
  in.b_cap = 2.0 * in.max_pair_weight * static_cast<double>(n_samples);
  in.x_max = x_max(spec);
  return in;
}

TVReport aggregate_tv_bound(const EnsembleSpec& spec, std::int64_t n_samples) {
  require_valid(spec);
  if (n_samples < 0) {
    throw Error(ErrorCode::invalid_argument, "N must be >= 0");
  }
  const auto& q = spec.base.masses();
  const std::int64_t N = n_samples;
  const int m = spec.order;

  TVReport report;
  report.n_samples = N;
  const double min_w = min_pair_weight(spec);
  const double s_count = static_cast<double>(spec.pairs.size());
  if (!spec.pairs.empty() && s_count > 1.0 &&
      static_cast<double>(N) <= 6.0 * std::log(s_count) / min_w) {
    report.sample_hypothesis_ok = false;
    report.warning = "N <= 6 ln(s)/min_i(Q_j+Q_k); bound computed anyway";
  }

  const double b_cap = 2.0 * max_pair_weight(spec) * static_cast<double>(N);
  double marginal = 0.0;
  double crude_tail = 0.0;
  double crude_max_sum = 0.0;
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    const auto [j, k] = spec.pairs[i];
    const double w = q[j] + q[k];
    const double mean = w * static_cast<double>(N);
    const double sd = std::sqrt(std::max(0.0, mean * (1.0 - w)));
    const std::int64_t lo = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor(mean - 12.0 * sd)) - 2);
    const std::int64_t hi = std::min<std::int64_t>(
        N, static_cast<std::int64_t>(std::ceil(mean + 12.0 * sd)) + 2);
    double window_mass = 0.0;
    double contrib = 0.0;
    for (std::int64_t b = lo; b <= hi; ++b) {
      const double pb = std::exp(log_binom_pmf(N, w, b));
      window_mass += pb;
      // pair_tv vanishes exactly below the kernel order.
      if (b >= m && pb > 1e-320) contrib += pb * pair_tv(spec, i, b);
    }
    // Mass outside the 12-sigma window is counted in full against pair_tv<=1,
    // keeping the truncation rigorous.
    marginal += contrib + std::max(0.0, 1.0 - window_mass);

    // Crude split: exact tail probability past B, plus the max term.
    const std::int64_t b_int =
        static_cast<std::int64_t>(std::floor(std::min(b_cap, 4.0e18)));
    double tail = 0.0;
    for (std::int64_t b = b_int + 1; b <= N; ++b) {
      const double pb = std::exp(log_binom_pmf(N, w, b));
      tail += pb;
      if (pb < 1e-320 && b > static_cast<std::int64_t>(mean)) break;
    }
    crude_tail += tail;
    const std::int64_t max_b = std::min<std::int64_t>(N, b_int);
    double max_tv = 0.0;
    if (max_b >= m) {
      if (max_b - m > 20000) {
        max_tv = pair_tv(spec, i, max_b);
        report.warning += (report.warning.empty() ? "" : "; ");
        report.warning +=
            "crude max term evaluated at b = B only (range too large)";
      } else {
        for (std::int64_t b = m; b <= max_b; ++b) {
          max_tv = std::max(max_tv, pair_tv(spec, i, b));
        }
      }
    }
    crude_max_sum += max_tv;
  }
  report.marginal_bound = marginal;
  report.crude_tail = std::min(1.0, crude_tail);
  report.crude_max_sum = crude_max_sum;
  report.crude_bound = report.crude_tail + crude_max_sum;
  return report;
}

McEstimate mc_tv_estimate(const EnsembleSpec& spec, std::int64_t n_samples,
                          std::int64_t trials, std::uint64_t seed) {
  require_valid(spec);
  if (trials <= 0) {
    throw Error(ErrorCode::invalid_argument, "trials must be > 0");
  }
  const std::size_t s = spec.pairs.size();
  const int m = spec.order;

  // Per-side, per-pair, per-atom log masses of the two pair bins.
  std::vector<std::vector<double>> log_j(2), log_k(2);
  for (int side = 0; side < 2; ++side) {
    log_j[side].assign(s * m, kNegInf);
    log_k[side].assign(s * m, kNegInf);
    for (std::size_t i = 0; i < s; ++i) {
      const auto [j, k] = spec.pairs[i];
      const MomentKernel kernel =
          pair_kernel(spec, i, side == 0 ? Side::yes : Side::no);
      for (int a = 0; a < m; ++a) {
        const double delta = atom_value(kernel, a);
        const double pj = spec.base.masses()[j] + delta;
        const double pk = spec.base.masses()[k] - delta;
        if (pj > 0.0) log_j[side][i * m + a] = std::log(pj);
        if (pk > 0.0) log_k[side][i * m + a] = std::log(pk);
      }
    }
  }

  std::vector<double> vals(m);
  auto pair_log_factor = [&](int side, std::size_t i, std::int64_t cj,
                             std::int64_t ck) {
    // logsumexp over atoms of cj*log pj + ck*log pk (the 1/m cancels in the
    // likelihood ratio).
    double best = kNegInf;
    for (int a = 0; a < m; ++a) {
      double v = 0.0;
      if (cj > 0) v += cj * log_j[side][i * m + a];
      if (ck > 0) v += ck * log_k[side][i * m + a];
      vals[a] = v;
      best = std::max(best, v);
    }
    if (best == kNegInf) return kNegInf;
    double acc = 0.0;
    for (int a = 0; a < m; ++a) acc += std::exp(vals[a] - best);
    return best + std::log(acc);
  };

  constexpr std::int64_t kBlock = 4096;
  double sum_v = 0.0, sum_v2 = 0.0;
  std::uniform_int_distribution<int> atom_dist(0, m - 1);
  std::vector<int> atom_indices(s);
  for (std::int64_t block = 0, done = 0; done < trials; ++block) {
    Rng rng = make_substream(seed, static_cast<std::uint64_t>(block));
    const std::int64_t count = std::min(kBlock, trials - done);
    for (std::int64_t t = 0; t < count; ++t) {
      for (auto& a : atom_indices) a = atom_dist(rng);
      const DiscreteDistribution p(apply_atoms(spec, Side::yes, atom_indices));
      const auto counts = sample_dataset(p, n_samples, rng);
      double log_ratio = 0.0;
      for (std::size_t i = 0; i < s; ++i) {
        const auto [j, k] = spec.pairs[i];
        const double ly = pair_log_factor(0, i, counts[j], counts[k]);
        const double ln = pair_log_factor(1, i, counts[j], counts[k]);
        if (ly == kNegInf) {
          throw Error(ErrorCode::degenerate_likelihood,
                      "yes-side likelihood vanished at pair " +
                          std::to_string(i));
        }
        log_ratio += ln - ly;
      }
      const double v = log_ratio >= 0.0 ? 0.0 : 1.0 - std::exp(log_ratio);
      sum_v += v;
      sum_v2 += v * v;
    }
    done += count;
  }

  McEstimate est;
  est.trials = trials;
  est.estimate = sum_v / static_cast<double>(trials);
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_v2 - trials * est.estimate * est.estimate) /
                          static_cast<double>(trials - 1));
    est.conf_radius = 1.96 * std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

Prop1Result prop1_bound(const BoundInputs& inputs, const Prop1Knobs& knobs,
                        double c_constant) {
  Prop1Result r;
  const double s = static_cast<double>(inputs.s);
  const double x = inputs.x_max;
  const double B = inputs.b_cap;
  const double m = static_cast<double>(inputs.m);
  const double ls = s > 1.0 ? std::log(s) : 0.0;
  r.xmax_ok = x < 0.1;
  r.order_ok = m >= c_constant * ls;
  const double big = std::sqrt(B * ls) + x * B;
  const double small = std::sqrt(x * x * B * ls) + x * x * B;
  r.value = knobs.c1 / s +
            std::pow(m, 4) * s * knobs.c2 * big *
                std::pow(1.0 + x, knobs.c3 * big) *
                std::pow(knobs.c4 * small, m);
  return r;
}

TheoremResult theorem_lower_bound(const InstanceParams& params,
                                  const TheoremKnobs& knobs) {
  TheoremResult out;
  const double eps = params.epsilon;
  const double L = std::log(1.0 / eps);
  const double n = static_cast<double>(params.n);
  if (params.family == Family::logconcave) {
    const double cap = std::pow(eps, -0.5) * std::pow(L, -1.5);
    out.branch = n <= cap ? "n" : "epsilon-cap";
    out.n_samples =
        knobs.k3 * std::pow(L, -7.0) * std::pow(eps, -2.0) * std::min(n, cap);
    return out;
  }
  const double d = static_cast<double>(params.d);
  const double cap = d * (1.0 / eps) * std::pow(L, -3.0);
  out.branch = n <= cap ? "n" : "epsilon-cap";
  out.n_samples = knobs.k1 * std::pow(2.0, -knobs.k2 * d) * std::pow(d, -d) *
                  std::pow(eps, -2.0) * std::pow(L, -7.0) *
                  std::pow(std::min(n, cap), d);
  return out;
}

}  // namespace mmens
