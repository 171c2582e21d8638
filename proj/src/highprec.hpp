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

#include "ensembles.hpp"

namespace mmens::hp {

// A pair_tv value computed in multiple precision. Below double underflow the
// double field is 0 while log10_abs and positive still carry the magnitude.
struct TvValue {
  double value = 0.0;       // rounded to double (may underflow to 0)
  double log10_abs = 0.0;   // log10 of the true magnitude; meaningful iff positive
  bool positive = false;
};

// pair_tv evaluated with MPFR arithmetic. precision_bits == 0 picks a
// precision large enough to resolve the ~(|A|/(Q_j+Q_k))^m scale of the
// moment-cancellation residue at B near m.
TvValue pair_tv(const EnsembleSpec& spec, std::size_t pair_index,
                std::int64_t conditioned_count, long precision_bits = 0);

}  // namespace mmens::hp
