/* Copyright 2026 The mmens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* mmens: moment-matched adversarial ensembles for monotonicity and
 * log-concavity testing lower bounds.
 *
 * C API over the C++ core. All handles are opaque; every fallible call
 * returns an mmens_status and, on failure, an explanatory message through
 * the optional errmsg out-parameter. Strings handed out through char** are
 * heap-allocated and must be released with mmens_string_free.
 */

#ifndef MMENS_H
#define MMENS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mmens_instance mmens_instance;

typedef enum mmens_status {
  MMENS_OK = 0,
  MMENS_ERR_INVALID_ARGUMENT = 1,
  MMENS_ERR_INFEASIBLE = 2,
  MMENS_ERR_BUDGET = 3,
  MMENS_ERR_HYPOTHESIS = 4,
  MMENS_ERR_DEGENERATE = 5,
  MMENS_ERR_SOLVER = 6,
  MMENS_ERR_IO = 7,
  MMENS_ERR_INTERNAL = 8
} mmens_status;

void mmens_string_free(char* s);
void mmens_instance_free(mmens_instance* instance);

/* Builds a hard instance. family is one of "monotone1d", "monotoneDd",
 * "logconcave". Fails with MMENS_ERR_INFEASIBLE when the parameters violate
 * the construction's regime, naming the violated inequality. */
mmens_status mmens_forge(const char* family, double epsilon, int64_t n, int d,
                         double constant_c, uint64_t seed,
                         mmens_instance** out, char** errmsg);

/* Descriptor (de)serialization. Real-valued fields round-trip bit-exactly. */
mmens_status mmens_instance_to_json(const mmens_instance* instance, char** out,
                                    char** errmsg);
mmens_status mmens_instance_from_json(const char* text, mmens_instance** out,
                                      char** errmsg);

/* Descriptor facts. family's storage is static. */
const char* mmens_instance_family(const mmens_instance* instance);
double mmens_instance_epsilon(const mmens_instance* instance);
int64_t mmens_instance_n(const mmens_instance* instance);
int64_t mmens_instance_n0(const mmens_instance* instance);
int mmens_instance_d(const mmens_instance* instance);
double mmens_instance_constant(const mmens_instance* instance);
int mmens_instance_m(const mmens_instance* instance);
int64_t mmens_instance_pair_count(const mmens_instance* instance);
double mmens_instance_x_max(const mmens_instance* instance);

/* Feasibility margins of the construction as a JSON object (ratios of each
 * constrained quantity to its bound; < 1 means satisfied). */
mmens_status mmens_instance_margins(const mmens_instance* instance, char** json,
                                    char** errmsg);

/* Certified-property verification pass. options_json may be NULL or override
 * {"draws": 1000, "seed": 1, "mode": "auto"|"exhaustive"|"sampled",
 *  "farness_threshold": 0.95, "yes_budget": 1000000, "lp_bin_budget": 4096}.
 * report_jsonl receives one JSON object per line (one per check plus a
 * summary); *pass is 1 iff every check passed. */
mmens_status mmens_verify(const mmens_instance* instance,
                          const char* options_json, char** report_jsonl,
                          int* pass, char** errmsg);

/* Indistinguishability curve: one CSV row per N with the aggregate upper
 * bounds, the Monte-Carlo estimate with its 95% radius, and the closed-form
 * proposition bound. knobs_json may be NULL or override
 * {"c1":1,"c2":1,"c3":1,"c4":1}. */
mmens_status mmens_tv_curve(const mmens_instance* instance,
                            const int64_t* n_list, size_t n_count,
                            int64_t trials, uint64_t seed,
                            const char* knobs_json, char** csv, char** errmsg);

/* Closed-form theorem lower bound. knobs_json may be NULL or override
 * {"k1":1,"k2":1,"k3":1}. branch (optional) names the attaining arm of the
 * min: "n" or "epsilon-cap". */
mmens_status mmens_theorem_bound(const char* family, double epsilon, int64_t n,
                                 int d, const char* knobs_json, double* out_n,
                                 char** branch, char** errmsg);

/* Draws one distribution from the chosen side ("yes"/"no"), then n_samples
 * i.i.d. samples from it. json_out carries the count vector, the realized
 * per-pair deltas, and the domain description. Deterministic per seed. */
mmens_status mmens_sample(const mmens_instance* instance, const char* side,
                          int64_t n_samples, uint64_t seed, char** json_out,
                          char** errmsg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MMENS_H */
