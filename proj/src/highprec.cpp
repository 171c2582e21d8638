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

#include "highprec.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"

namespace mmens::hp {

namespace {

// RAII wrapper; just enough surface for the mixture computation below.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
  Real(const Real& other) {
    mpfr_init2(v, mpfr_get_prec(other.v));
    mpfr_set(v, other.v, MPFR_RNDN);
  }
  Real& operator=(const Real& other) {
    if (this != &other) mpfr_set(v, other.v, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v); }
  mpfr_t v;
};

}  // namespace

TvValue pair_tv(const EnsembleSpec& spec, std::size_t pair_index,
                std::int64_t conditioned_count, long precision_bits) {
  if (pair_index >= spec.pairs.size()) {
    throw Error(ErrorCode::invalid_argument, "pair index out of range");
  }
  if (conditioned_count < 0) {
    throw Error(ErrorCode::invalid_argument, "conditioned count must be >= 0");
  }
  const auto [j, k] = spec.pairs[pair_index];
  const double qj = spec.base.masses()[j];
  const double qk = spec.base.masses()[k];
  const double amp = spec.kernels[pair_index].amplitude;
  const double off = spec.kernels[pair_index].offset;
  const int m = spec.order;
  const std::int64_t B = conditioned_count;

  long prec = precision_bits;
  if (prec <= 0) {
    // Resolve the cancellation residue at B ~ m, which scales like
    // 2 (|A| / (Q_j + Q_k))^m.
    const double scale = std::fabs(amp) / std::max(qj + qk, 1e-300);
    double bits = 0.0;
    if (scale > 0.0 && scale < 1.0) bits = -(m * (std::log2(scale)));
    prec = static_cast<long>(std::min(bits, 1.0e6)) + 256;
  }

  mpfr_t pi, theta, delta, r, one_minus_r, term, choose, acc, diff, total, tmp;
  mpfr_inits2(prec, pi, theta, delta, r, one_minus_r, term, choose, acc, diff,
              total, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);

  // Per-side success probabilities r_a = (Q_j + delta_a) / (Q_j + Q_k).
  std::vector<Real> rs[2];
  for (int side = 0; side < 2; ++side) {
    rs[side].reserve(m);
    for (int a = 0; a < m; ++a) {
      // theta = 2 pi (a + phase) / m
      mpfr_set_si(theta, 2 * a + side, MPFR_RNDN);  // phase 1/2 on the no side
      mpfr_mul(theta, theta, pi, MPFR_RNDN);
      mpfr_div_si(theta, theta, m, MPFR_RNDN);
      mpfr_cos(delta, theta, MPFR_RNDN);
      mpfr_add_d(delta, delta, off, MPFR_RNDN);
      mpfr_mul_d(delta, delta, amp, MPFR_RNDN);
      mpfr_add_d(r, delta, qj, MPFR_RNDN);
      mpfr_set_d(tmp, qj, MPFR_RNDN);
      mpfr_add_d(tmp, tmp, qk, MPFR_RNDN);
      mpfr_div(r, r, tmp, MPFR_RNDN);
      Real stored(prec);
      mpfr_set(stored.v, r, MPFR_RNDN);
      rs[side].push_back(stored);
    }
  }

  mpfr_set_zero(total, 1);
  mpfr_set_si(choose, 1, MPFR_RNDN);  // C(B, l), updated incrementally
  for (std::int64_t l = 0; l <= B; ++l) {
    mpfr_set_zero(diff, 1);
    for (int side = 0; side < 2; ++side) {
      mpfr_set_zero(acc, 1);
      for (int a = 0; a < m; ++a) {
        mpfr_pow_si(term, rs[side][a].v, l, MPFR_RNDN);
        mpfr_ui_sub(one_minus_r, 1, rs[side][a].v, MPFR_RNDN);
        mpfr_pow_si(tmp, one_minus_r, B - l, MPFR_RNDN);
        mpfr_mul(term, term, tmp, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
      }
      mpfr_div_si(acc, acc, m, MPFR_RNDN);
      if (side == 0) {
        mpfr_set(diff, acc, MPFR_RNDN);
      } else {
        mpfr_sub(diff, diff, acc, MPFR_RNDN);
      }
    }
    mpfr_abs(diff, diff, MPFR_RNDN);
    mpfr_mul(diff, diff, choose, MPFR_RNDN);
    mpfr_add(total, total, diff, MPFR_RNDN);
    // C(B, l+1) = C(B, l) * (B - l) / (l + 1)
    mpfr_mul_si(choose, choose, B - l, MPFR_RNDN);
    mpfr_div_si(choose, choose, l + 1, MPFR_RNDN);
  }
  mpfr_div_si(total, total, 2, MPFR_RNDN);

  TvValue out;
  out.positive = mpfr_sgn(total) > 0;
  out.value = mpfr_get_d(total, MPFR_RNDN);
  if (out.positive) {
    mpfr_log10(tmp, total, MPFR_RNDN);
    out.log10_abs = mpfr_get_d(tmp, MPFR_RNDN);
  }
  mpfr_clears(pi, theta, delta, r, one_minus_r, term, choose, acc, diff, total,
              tmp, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace mmens::hp
