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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "kernels.hpp"
#include "oracles.hpp"

namespace mmens {

namespace {

using nlohmann::json;

std::string describe(double value) {
  std::ostringstream os;
  os.precision(12);
  os << value;
  return os.str();
}

bool yes_side_ok(const Instance& instance, const std::vector<double>& masses) {
  switch (instance.params.family) {
    case Family::monotone1d:
      return is_monotone(DiscreteDistribution::unchecked(masses), TotalOrder{});
    case Family::monotoneDd: {
      const auto lifted = lift_halfcube(
          *instance.layout, DiscreteDistribution::unchecked(masses));
      return is_monotone(lifted,
                         LatticeOrder{instance.layout->n0, instance.layout->d});
    }
    case Family::logconcave:
      return is_log_concave(DiscreteDistribution::unchecked(masses));
  }
  return false;
}

DistanceCertificate no_side_certificate(const Instance& instance,
                                        const DiscreteDistribution& p,
                                        const VerifyOptions& options) {
  switch (instance.params.family) {
    case Family::monotone1d: {
      if (static_cast<std::int64_t>(p.size()) <= options.lp_bin_budget) {
        return lp_distance_to_monotone(p, TotalOrder{}, options.lp_bin_budget);
      }
      // gamma needs an even bin count; any trailing odd bin is zero mass
      // (padding) and drops out of the certificate.
      std::vector<double> prefix(p.masses().begin(),
                                 p.masses().end() - (p.size() % 2));
      return gamma_distance_1d(DiscreteDistribution::unchecked(prefix));
    }
    case Family::monotoneDd:
      return gamma_distance_halfcube(*instance.layout, p);
    case Family::logconcave: {
      std::vector<double> prefix(p.masses().begin(),
                                 p.masses().end() - (p.size() % 3));
      return sqrt_triple_distance(DiscreteDistribution::unchecked(prefix));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown family");
}

}  // namespace

VerifyReport run_verify(const Instance& instance, const VerifyOptions& options) {
  VerifyReport report;
  const EnsembleSpec& spec = instance.spec;

  // Definition-3 validity.
  {
    const auto v = validate(spec);
    CheckResult check{"validate", v.ok, ""};
    if (!v.ok) {
      check.details = v.violation->constraint +
                      (v.violation->index >= 0
                           ? " at index " + std::to_string(v.violation->index)
                           : "") +
                      ": " + v.violation->message;
    }
    report.checks.push_back(std::move(check));
    if (!v.ok) {
      report.pass = false;
      return report;
    }
  }
  report.x_max = x_max(spec);

  // Moment matching for all k below the order, per distinct kernel.
  {
    bool ok = true;
    std::string details;
    std::vector<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < spec.pairs.size() && ok; ++i) {
      const std::pair<double, double> key{spec.kernels[i].amplitude,
                                          spec.kernels[i].offset};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      const double scale =
          std::fabs(key.first) * (1.0 + std::fabs(key.second));
      for (int k = 0; k < spec.order && ok; ++k) {
        const double my = moment(pair_kernel(spec, i, Side::yes), k);
        const double mn = moment(pair_kernel(spec, i, Side::no), k);
        const double tol = 1e-10 * std::max(1.0, std::pow(scale, k));
        if (std::fabs(my - mn) > tol) {
          ok = false;
          details = "kernel " + std::to_string(i) + " moment " +
                    std::to_string(k) + " differs by " +
                    describe(std::fabs(my - mn)) + " > " + describe(tol);
        }
      }
    }
    report.checks.push_back({"moment_matching", ok, details});
  }

  // Yes-side property on every outcome (exhaustive) or sampled draws.
  {
    const std::uint64_t joint = joint_atom_count(spec);
    bool exhaustive = options.mode == VerifyOptions::Mode::exhaustive ||
                      (options.mode == VerifyOptions::Mode::automatic &&
                       joint <= options.yes_budget);
    std::int64_t cases = 0;
    std::int64_t violations = 0;
    if (exhaustive) {
      for_each_atom(spec, Side::yes, options.yes_budget,
                    [&](double, const std::vector<double>& masses) {
                      ++cases;
                      if (!yes_side_ok(instance, masses)) ++violations;
                    });
    } else {
      Rng rng = make_substream(options.seed, 0x9e5);
      for (std::int64_t t = 0; t < options.draws; ++t) {
        const Draw d = draw(spec, Side::yes, rng);
        ++cases;
        if (!yes_side_ok(instance, d.distribution.masses())) ++violations;
      }
    }
    report.yes_cases = cases;
    report.yes_violations = violations;
    report.yes_exhaustive = exhaustive;
    report.checks.push_back(
        {"yes_side_property", violations == 0,
         (exhaustive ? "exhaustive over " : "sampled over ") +
             std::to_string(cases) + " cases, " + std::to_string(violations) +
             " violations"});
  }

  // No-side certified farness fraction.
  {
    Rng rng = make_substream(options.seed, 0x9e6);
    std::int64_t far_count = 0;
    std::string failure;
    for (std::int64_t t = 0; t < options.draws; ++t) {
      const Draw d = draw(spec, Side::no, rng);
      try {
        const auto cert = no_side_certificate(instance, d.distribution, options);
        if (cert.lower_bound >= instance.params.epsilon) ++far_count;
      } catch (const Error& e) {
        failure = e.what();
        break;
      }
    }
    report.farness_fraction =
        options.draws > 0 ? static_cast<double>(far_count) / options.draws : 0.0;
    report.farness_threshold = options.farness_threshold;
    const bool ok = failure.empty() &&
                    report.farness_fraction >= options.farness_threshold - 1e-12;
    std::string details =
        "fraction " + describe(report.farness_fraction) + " of " +
        std::to_string(options.draws) + " draws certified >= epsilon (threshold " +
        describe(options.farness_threshold) + ")";
    if (!failure.empty()) details += "; certificate error: " + failure;
    report.checks.push_back({"no_side_farness", ok, details});
  }

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  return report;
}

std::string report_to_jsonl(const VerifyReport& report) {
  std::string out;
  for (const auto& check : report.checks) {
    json line = {{"check", check.name}, {"pass", check.pass}};
    if (!check.details.empty()) line["details"] = check.details;
    out += line.dump() + "\n";
  }
  json summary = {{"summary", report.pass ? "pass" : "fail"},
                  {"x_max", report.x_max},
                  {"farness_fraction", report.farness_fraction},
                  {"farness_threshold", report.farness_threshold},
                  {"yes_cases", report.yes_cases},
                  {"yes_violations", report.yes_violations},
                  {"yes_exhaustive", report.yes_exhaustive},
                  {"membership_slack", kMembershipSlack}};
  out += summary.dump() + "\n";
  return out;
}

std::string report_to_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& check : report.checks) {
    os << (check.pass ? "PASS" : "FAIL") << "  " << check.name;
    if (!check.details.empty()) os << "  (" << check.details << ")";
    os << "\n";
  }
  os << (report.pass ? "verify: all checks passed"
                     : "verify: at least one check failed")
     << " [x_max " << report.x_max << "]\n";
  return os.str();
}

}  // namespace mmens
