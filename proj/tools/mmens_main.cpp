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

// Command-line surface over the mmens C API: forge, verify, tv, bound,
// sample. Exit codes: 0 success, 1 failed property check, 2 usage, I/O or
// infeasible parameters.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmens.h"

namespace {

struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { mmens_string_free(value); }
  std::string str() const { return value == nullptr ? "" : value; }
};

struct OwnedInstance {
  mmens_instance* value = nullptr;
  ~OwnedInstance() { mmens_instance_free(value); }
};

int fail(const OwnedString& err, const std::string& context) {
  std::cerr << "error: " << context;
  if (err.value != nullptr) std::cerr << ": " << err.value;
  std::cerr << "\n";
  return 2;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << contents;
  return static_cast<bool>(out);
}

// --knob k=v pairs collected into a JSON object body.
std::string knobs_to_json(const std::vector<std::string>& knobs) {
  std::string body = "{";
  for (std::size_t i = 0; i < knobs.size(); ++i) {
    const auto eq = knobs[i].find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--knob", "expected k=v, got " + knobs[i]);
    }
    if (i > 0) body += ",";
    body += "\"" + knobs[i].substr(0, eq) + "\":" + knobs[i].substr(eq + 1);
  }
  return body + "}";
}

OwnedInstance load_descriptor_or_exit(const std::string& path, int& rc) {
  OwnedInstance inst;
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read descriptor " << path << "\n";
    rc = 2;
    return inst;
  }
  OwnedString err;
  if (mmens_instance_from_json(text.c_str(), &inst.value, &err.value) !=
      MMENS_OK) {
    rc = fail(err, "parsing descriptor " + path);
    return inst;
  }
  rc = 0;
  return inst;
}

std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoll(token));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moment-matched adversarial ensembles for property-testing "
               "lower bounds"};
  app.require_subcommand(1);

  // forge
  auto* forge = app.add_subcommand("forge", "build an instance descriptor");
  std::string family = "monotone1d";
  double epsilon = 0.0;
  std::int64_t n = 0;
  int d = 1;
  double constant_c = 4.0;
  std::uint64_t seed = 1;
  std::string out_path;
  forge->add_option("--family", family, "monotone1d|monotoneDd|logconcave")
      ->required();
  forge->add_option("--epsilon", epsilon, "distance parameter")->required();
  forge->add_option("--n", n, "domain size per axis")->required();
  forge->add_option("--d", d, "dimension (monotoneDd)");
  forge->add_option("--const-c", constant_c, "the construction constant C");
  forge->add_option("--seed", seed, "creation seed recorded in the descriptor");
  forge->add_option("--out", out_path, "descriptor output path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check certified properties");
  std::string verify_path;
  std::int64_t draws = 1000;
  std::string mode = "auto";
  std::vector<std::string> verify_knobs;
  std::uint64_t verify_seed = 1;
  verify->add_option("descriptor", verify_path, "descriptor path")->required();
  verify->add_option("--draws", draws, "random draws per sampled check");
  verify->add_option("--seed", verify_seed, "rng seed");
  verify->add_option("--mode", mode, "auto|exhaustive|sampled");
  verify->add_option("--knob", verify_knobs,
                     "k=v (farness_threshold, yes_budget, lp_bin_budget)");

  // tv
  auto* tv = app.add_subcommand("tv", "indistinguishability bounds and "
                                      "Monte-Carlo estimates over N");
  std::string tv_path, n_list_text, tv_out;
  std::int64_t trials = 100000;
  std::uint64_t tv_seed = 1;
  std::vector<std::string> tv_knobs;
  tv->add_option("descriptor", tv_path, "descriptor path")->required();
  tv->add_option("--n-list", n_list_text, "comma-separated sample counts")
      ->required();
  tv->add_option("--trials", trials, "Monte-Carlo trials per N");
  tv->add_option("--seed", tv_seed, "rng seed");
  tv->add_option("--out", tv_out, "CSV output path (default stdout)");
  tv->add_option("--knob", tv_knobs, "k=v (c1..c4 proposition constants)");

  // bound
  auto* bound = app.add_subcommand("bound", "closed-form sample-complexity "
                                            "lower bound");
  std::string bound_family;
  double bound_eps = 0.0;
  std::int64_t bound_n = 0;
  int bound_d = 1;
  std::vector<std::string> bound_knobs;
  bound->add_option("--family", bound_family, "family")->required();
  bound->add_option("--epsilon", bound_eps, "distance parameter")->required();
  bound->add_option("--n", bound_n, "domain size per axis")->required();
  bound->add_option("--d", bound_d, "dimension");
  bound->add_option("--knob", bound_knobs, "k=v (k1,k2,k3 theorem constants)");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a dataset from one side");
  std::string sample_path, side = "yes", sample_out;
  std::int64_t count = 0;
  std::uint64_t sample_seed = 1;
  sample->add_option("descriptor", sample_path, "descriptor path")->required();
  sample->add_option("--side", side, "yes|no")->required();
  sample->add_option("--count", count, "number of samples N")->required();
  sample->add_option("--seed", sample_seed, "rng seed");
  sample->add_option("--out", sample_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (forge->parsed()) {
      OwnedInstance inst;
      OwnedString err;
      if (mmens_forge(family.c_str(), epsilon, n, d, constant_c, seed,
                      &inst.value, &err.value) != MMENS_OK) {
        return fail(err, "forge");
      }
      OwnedString text;
      if (mmens_instance_to_json(inst.value, &text.value, &err.value) !=
          MMENS_OK) {
        return fail(err, "serialize");
      }
      if (!write_file(out_path, text.str())) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      OwnedString margins;
      mmens_instance_margins(inst.value, &margins.value, nullptr);
      std::cout << "family " << mmens_instance_family(inst.value)
                << "  n " << mmens_instance_n(inst.value)
                << "  n0 " << mmens_instance_n0(inst.value)
                << "  m " << mmens_instance_m(inst.value)
                << "  pairs " << mmens_instance_pair_count(inst.value)
                << "  x_max " << mmens_instance_x_max(inst.value) << "\n";
      std::cout << "feasibility margins " << margins.str() << "\n";
      std::cout << "wrote " << out_path << "\n";
      return 0;
    }

    if (verify->parsed()) {
      int rc = 0;
      OwnedInstance inst = load_descriptor_or_exit(verify_path, rc);
      if (rc != 0) return rc;
      std::string options = "{\"draws\":" + std::to_string(draws) +
                            ",\"seed\":" + std::to_string(verify_seed) +
                            ",\"mode\":\"" + mode + "\"";
      for (const auto& knob : verify_knobs) {
        const auto eq = knob.find('=');
        if (eq == std::string::npos) {
          std::cerr << "error: --knob expects k=v\n";
          return 2;
        }
        options += ",\"" + knob.substr(0, eq) + "\":" + knob.substr(eq + 1);
      }
      options += "}";
      OwnedString report, err;
      int pass = 0;
      if (mmens_verify(inst.value, options.c_str(), &report.value, &pass,
                       &err.value) != MMENS_OK) {
        return fail(err, "verify");
      }
      std::cout << report.str();
      std::cerr << (pass ? "verify: PASS" : "verify: FAIL") << "\n";
      return pass ? 0 : 1;
    }

    if (tv->parsed()) {
      int rc = 0;
      OwnedInstance inst = load_descriptor_or_exit(tv_path, rc);
      if (rc != 0) return rc;
      const auto n_values = parse_n_list(n_list_text);
      if (n_values.empty()) {
        std::cerr << "error: --n-list is empty\n";
        return 2;
      }
      const std::string knobs = knobs_to_json(tv_knobs);
      OwnedString csv, err;
      if (mmens_tv_curve(inst.value, n_values.data(), n_values.size(), trials,
                         tv_seed, knobs.c_str(), &csv.value, &err.value) !=
          MMENS_OK) {
        return fail(err, "tv");
      }
      if (tv_out.empty()) {
        std::cout << csv.str();
      } else if (!write_file(tv_out, csv.str())) {
        std::cerr << "error: cannot write " << tv_out << "\n";
        return 2;
      }
      return 0;
    }

    if (bound->parsed()) {
      const std::string knobs = knobs_to_json(bound_knobs);
      double n_required = 0.0;
      OwnedString branch, err;
      if (mmens_theorem_bound(bound_family.c_str(), bound_eps, bound_n,
                              bound_d, knobs.c_str(), &n_required,
                              &branch.value, &err.value) != MMENS_OK) {
        return fail(err, "bound");
      }
      std::cout.precision(12);
      std::cout << "N " << n_required << "\n";
      std::cout << "branch " << branch.str() << "\n";
      if (bound_family == "monotoneDd" || bound_family == "monotone1d") {
        std::cout << "d^-d factor " << std::pow(static_cast<double>(bound_d),
                                                -bound_d)
                  << "\n";
      }
      return 0;
    }

    if (sample->parsed()) {
      int rc = 0;
      OwnedInstance inst = load_descriptor_or_exit(sample_path, rc);
      if (rc != 0) return rc;
      OwnedString out, err;
      if (mmens_sample(inst.value, side.c_str(), count, sample_seed,
                       &out.value, &err.value) != MMENS_OK) {
        return fail(err, "sample");
      }
      if (sample_out.empty()) {
        std::cout << out.str();
      } else if (!write_file(sample_out, out.str())) {
        std::cerr << "error: cannot write " << sample_out << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
