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

#include "mmens.h"

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "descriptor.hpp"
#include "error.hpp"
#include "indist.hpp"
#include "instances.hpp"
#include "verify.hpp"

using nlohmann::json;

struct mmens_instance {
  mmens::Instance instance;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_errmsg(char** errmsg, const std::string& message) {
  if (errmsg != nullptr) *errmsg = dup_string(message);
}

mmens_status status_of(mmens::ErrorCode code) {
  using mmens::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return MMENS_ERR_INVALID_ARGUMENT;
    case ErrorCode::infeasible_parameters: return MMENS_ERR_INFEASIBLE;
    case ErrorCode::budget_exceeded: return MMENS_ERR_BUDGET;
    case ErrorCode::hypothesis_violation: return MMENS_ERR_HYPOTHESIS;
    case ErrorCode::degenerate_likelihood: return MMENS_ERR_DEGENERATE;
    case ErrorCode::solver_failure: return MMENS_ERR_SOLVER;
    case ErrorCode::io_error: return MMENS_ERR_IO;
  }
  return MMENS_ERR_INTERNAL;
}

template <typename Fn>
mmens_status guarded(char** errmsg, Fn&& fn) {
  try {
    fn();
    return MMENS_OK;
  } catch (const mmens::Error& e) {
    set_errmsg(errmsg, e.what());
    return status_of(e.code());
  } catch (const std::exception& e) {
    set_errmsg(errmsg, e.what());
    return MMENS_ERR_INTERNAL;
  }
}

json parse_optional_json(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw mmens::Error(mmens::ErrorCode::invalid_argument,
                       "options must be a JSON object");
  }
  return doc;
}

}  // namespace

extern "C" {

void mmens_string_free(char* s) { std::free(s); }

void mmens_instance_free(mmens_instance* instance) { delete instance; }

mmens_status mmens_forge(const char* family, double epsilon, int64_t n, int d,
                         double constant_c, uint64_t seed,
                         mmens_instance** out, char** errmsg) {
  return guarded(errmsg, [&] {
    if (family == nullptr || out == nullptr) {
      throw mmens::Error(mmens::ErrorCode::invalid_argument,
                         "family and out are required");
    }
    const auto parsed = mmens::family_from_name(family);
    if (!parsed.has_value()) {
      throw mmens::Error(mmens::ErrorCode::invalid_argument,
                         std::string("unknown family '") + family + "'");
    }
    mmens::InstanceParams params{*parsed, epsilon, n, d, constant_c};
    *out = new mmens_instance{mmens::build_instance(params, seed)};
  });
}

mmens_status mmens_instance_to_json(const mmens_instance* instance, char** out,
                                    char** errmsg) {
  return guarded(errmsg, [&] {
    *out = dup_string(mmens::instance_to_json(instance->instance));
  });
}

mmens_status mmens_instance_from_json(const char* text, mmens_instance** out,
                                      char** errmsg) {
  return guarded(errmsg, [&] {
    if (text == nullptr || out == nullptr) {
      throw mmens::Error(mmens::ErrorCode::invalid_argument,
                         "text and out are required");
    }
    *out = new mmens_instance{mmens::instance_from_json(text)};
  });
}

const char* mmens_instance_family(const mmens_instance* instance) {
  switch (instance->instance.params.family) {
    case mmens::Family::monotone1d: return "monotone1d";
    case mmens::Family::monotoneDd: return "monotoneDd";
    case mmens::Family::logconcave: return "logconcave";
  }
  return "unknown";
}

double mmens_instance_epsilon(const mmens_instance* instance) {
  return instance->instance.params.epsilon;
}

int64_t mmens_instance_n(const mmens_instance* instance) {
  return instance->instance.params.n;
}

int64_t mmens_instance_n0(const mmens_instance* instance) {
  return instance->instance.n0;
}

int mmens_instance_d(const mmens_instance* instance) {
  return instance->instance.params.d;
}

double mmens_instance_constant(const mmens_instance* instance) {
  return instance->instance.params.c;
}

int mmens_instance_m(const mmens_instance* instance) {
  return instance->instance.m;
}

int64_t mmens_instance_pair_count(const mmens_instance* instance) {
  return static_cast<int64_t>(instance->instance.spec.pairs.size());
}

double mmens_instance_x_max(const mmens_instance* instance) {
  return mmens::x_max(instance->instance.spec);
}

mmens_status mmens_instance_margins(const mmens_instance* instance, char** out,
                                    char** errmsg) {
  return guarded(errmsg, [&] {
    const mmens::Instance& inst = instance->instance;
    const double n0 = static_cast<double>(inst.n0);
    const int m = inst.m;
    const double eps = inst.params.epsilon;
    json doc;
    doc["x_max_over_tenth"] = mmens::x_max(inst.spec) / 0.1;
    double amp_ratio = 0.0;
    switch (inst.params.family) {
      case mmens::Family::monotone1d: {
        const double amp = 8.0 * m * m * m * eps / n0;
        amp_ratio = amp / (1.0 / (4.0 * n0 * n0));
        break;
      }
      case mmens::Family::monotoneDd: {
        const int d = inst.params.d;
        const double amp = std::pow(2.0, d + 2) * m * m * m *
                           std::pow(static_cast<double>(d), d) * eps /
                           std::pow(n0, d);
        const double cap = std::pow(2.0, d - 3) *
                           std::pow(static_cast<double>(d), d + 1) /
                           std::pow(n0, d + 1);
        amp_ratio = amp / cap;
        break;
      }
      case mmens::Family::logconcave: {
        double min_shift = 0.0;
        if (!inst.pair_shift.empty()) {
          min_shift = inst.pair_shift[0];
          for (double s : inst.pair_shift) min_shift = std::min(min_shift, s);
        }
        const double excursion = inst.params.c * m * m * m * eps / n0;
        amp_ratio = min_shift > 0.0 ? 2.0 * excursion / min_shift : 0.0;
        break;
      }
    }
    doc["amplitude_over_cap"] = amp_ratio;
    double def3 = 0.0;
    const auto& q = inst.spec.base.masses();
    for (std::size_t i = 0; i < inst.spec.pairs.size(); ++i) {
      const auto [j, k] = inst.spec.pairs[i];
      const double bound = std::min(q[j], q[k]) /
                           (1.0 + std::fabs(inst.spec.kernels[i].offset));
      def3 = std::max(def3, std::fabs(inst.spec.kernels[i].amplitude) / bound);
    }
    doc["amplitude_over_definition3"] = def3;
    *out = dup_string(doc.dump());
  });
}

mmens_status mmens_verify(const mmens_instance* instance,
                          const char* options_json, char** report_jsonl,
                          int* pass, char** errmsg) {
  return guarded(errmsg, [&] {
    const json opts = parse_optional_json(options_json);
    mmens::VerifyOptions options;
    options.draws = opts.value("draws", options.draws);
    options.seed = opts.value("seed", options.seed);
    options.farness_threshold =
        opts.value("farness_threshold", options.farness_threshold);
    options.yes_budget = opts.value("yes_budget", options.yes_budget);
    options.lp_bin_budget = opts.value("lp_bin_budget", options.lp_bin_budget);
    const std::string mode = opts.value("mode", std::string("auto"));
    if (mode == "exhaustive") {
      options.mode = mmens::VerifyOptions::Mode::exhaustive;
    } else if (mode == "sampled") {
      options.mode = mmens::VerifyOptions::Mode::sampled;
    } else if (mode == "auto") {
      options.mode = mmens::VerifyOptions::Mode::automatic;
    } else {
      throw mmens::Error(mmens::ErrorCode::invalid_argument,
                         "mode must be auto, exhaustive or sampled");
    }
    const auto report = mmens::run_verify(instance->instance, options);
    if (report_jsonl != nullptr) {
      *report_jsonl = dup_string(mmens::report_to_jsonl(report));
    }
    if (pass != nullptr) *pass = report.pass ? 1 : 0;
  });
}

mmens_status mmens_tv_curve(const mmens_instance* instance,
                            const int64_t* n_list, size_t n_count,
                            int64_t trials, uint64_t seed,
                            const char* knobs_json, char** csv, char** errmsg) {
  return guarded(errmsg, [&] {
    const json opts = parse_optional_json(knobs_json);
    mmens::Prop1Knobs knobs;
    knobs.c1 = opts.value("c1", 1.0);
    knobs.c2 = opts.value("c2", 1.0);
    knobs.c3 = opts.value("c3", 1.0);
    knobs.c4 = opts.value("c4", 1.0);
    std::ostringstream os;
    os.precision(12);
    os << "N,marginal_bound,crude_tail,crude_max_sum,crude_bound,"
          "mc_estimate,mc_radius,prop1_bound,prop1_xmax_ok,prop1_order_ok,"
          "hypothesis_warning\n";
    const auto& spec = instance->instance.spec;
    for (size_t i = 0; i < n_count; ++i) {
      const int64_t N = n_list[i];
      const auto bound = mmens::aggregate_tv_bound(spec, N);
      const auto mc = mmens::mc_tv_estimate(spec, N, trials,
                                            mmens::mix_seed(seed, i));
      const auto prop = mmens::prop1_bound(mmens::bound_inputs(spec, N), knobs,
                                           instance->instance.params.c);
      os << N << ',' << bound.marginal_bound << ',' << bound.crude_tail << ','
         << bound.crude_max_sum << ',' << bound.crude_bound << ','
         << mc.estimate << ',' << mc.conf_radius << ',' << prop.value << ','
         << (prop.xmax_ok ? 1 : 0) << ',' << (prop.order_ok ? 1 : 0) << ','
         << '"' << bound.warning << '"' << '\n';
    }
    *csv = dup_string(os.str());
  });
}

mmens_status mmens_theorem_bound(const char* family, double epsilon, int64_t n,
                                 int d, const char* knobs_json, double* out_n,
                                 char** branch, char** errmsg) {
  return guarded(errmsg, [&] {
    const auto parsed = mmens::family_from_name(family == nullptr ? "" : family);
    if (!parsed.has_value()) {
      throw mmens::Error(mmens::ErrorCode::invalid_argument, "unknown family");
    }
    if (d < 1) {
      throw mmens::Error(mmens::ErrorCode::invalid_argument, "d >= 1 required");
    }
    const json opts = parse_optional_json(knobs_json);
    mmens::TheoremKnobs knobs;
    knobs.k1 = opts.value("k1", 1.0);
    knobs.k2 = opts.value("k2", 1.0);
    knobs.k3 = opts.value("k3", 1.0);
    mmens::InstanceParams params{*parsed, epsilon, n, d, 4.0};
    const auto result = mmens::theorem_lower_bound(params, knobs);
    if (out_n != nullptr) *out_n = result.n_samples;
    if (branch != nullptr) *branch = dup_string(result.branch);
  });
}

mmens_status mmens_sample(const mmens_instance* instance, const char* side,
                          int64_t n_samples, uint64_t seed, char** json_out,
                          char** errmsg) {
  return guarded(errmsg, [&] {
    mmens::Side s;
    if (side != nullptr && std::string(side) == "yes") {
      s = mmens::Side::yes;
    } else if (side != nullptr && std::string(side) == "no") {
      s = mmens::Side::no;
    } else {
      throw mmens::Error(mmens::ErrorCode::invalid_argument,
                         "side must be 'yes' or 'no'");
    }
    const mmens::Instance& inst = instance->instance;
    mmens::Rng rng = mmens::make_rng(seed);
    const mmens::Draw d = mmens::draw(inst.spec, s, rng);
    const mmens::DiscreteDistribution* target = &d.distribution;
    mmens::DiscreteDistribution lifted =
        mmens::DiscreteDistribution::unchecked({1.0});
    json domain;
    if (inst.layout.has_value()) {
      lifted = mmens::lift_halfcube(*inst.layout, d.distribution);
      target = &lifted;
      domain = {{"kind", "lattice"},
                {"n0", inst.layout->n0},
                {"d", inst.layout->d}};
    } else {
      domain = {{"kind", "line"}, {"n", inst.params.n}, {"n0", inst.n0}};
    }
    const auto counts = mmens::sample_dataset(*target, n_samples, rng);
    json doc;
    doc["schema_version"] = 1;
    doc["side"] = side;
    doc["seed"] = seed;
    doc["n_samples"] = n_samples;
    doc["domain"] = std::move(domain);
    json deltas = json::array();
    for (double delta : d.deltas) deltas.push_back(mmens::format_double(delta));
    doc["deltas"] = std::move(deltas);
    doc["counts"] = counts;
    *json_out = dup_string(doc.dump(2) + "\n");
  });
}

}  // extern "C"
