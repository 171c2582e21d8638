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

// Exercises the shared-library surface exactly as an external consumer would:
// through mmens.h only.

#include <doctest.h>

#include <cstring>
#include <string>

#include "mmens.h"

namespace {

struct Str {
  char* v = nullptr;
  ~Str() { mmens_string_free(v); }
  std::string str() const { return v == nullptr ? "" : v; }
};

struct Inst {
  mmens_instance* v = nullptr;
  ~Inst() { mmens_instance_free(v); }
};

}  // namespace

TEST_CASE("forge and inspect a monotone instance") {
  Inst inst;
  Str err;
  REQUIRE(mmens_forge("monotone1d", 5e-10, 60, 1, 4.0, 123, &inst.v, &err.v) ==
          MMENS_OK);
  CHECK(std::string(mmens_instance_family(inst.v)) == "monotone1d");
  CHECK(mmens_instance_epsilon(inst.v) == 5e-10);
  CHECK(mmens_instance_n(inst.v) == 60);
  CHECK(mmens_instance_n0(inst.v) == 60);
  CHECK(mmens_instance_m(inst.v) == 87);
  CHECK(mmens_instance_pair_count(inst.v) == 30);
  CHECK(mmens_instance_x_max(inst.v) < 0.1);
  Str margins;
  REQUIRE(mmens_instance_margins(inst.v, &margins.v, &err.v) == MMENS_OK);
  CHECK(margins.str().find("amplitude_over_cap") != std::string::npos);
}

TEST_CASE("infeasible parameters report the violated inequality") {
  Inst inst;
  Str err;
  const auto status =
      mmens_forge("monotone1d", 0.02, 60, 1, 4.0, 1, &inst.v, &err.v);
  CHECK(status == MMENS_ERR_INFEASIBLE);
  CHECK(err.str().find("n0") != std::string::npos);

  Str err2;
  Inst inst2;
  CHECK(mmens_forge("monotone1d", 1e-9, 60, 0, 4.0, 1, &inst2.v, &err2.v) ==
        MMENS_ERR_INVALID_ARGUMENT);
  CHECK(err2.str().find("d >= 1 required") != std::string::npos);
}

TEST_CASE("descriptor JSON round-trips byte-identically") {
  Inst inst;
  Str err;
  REQUIRE(mmens_forge("logconcave", 1e-12, 64, 1, 4.0, 9, &inst.v, &err.v) ==
          MMENS_OK);
  Str first;
  REQUIRE(mmens_instance_to_json(inst.v, &first.v, &err.v) == MMENS_OK);
  Inst parsed;
  REQUIRE(mmens_instance_from_json(first.v, &parsed.v, &err.v) == MMENS_OK);
  Str second;
  REQUIRE(mmens_instance_to_json(parsed.v, &second.v, &err.v) == MMENS_OK);
  CHECK(first.str() == second.str());
  CHECK(mmens_instance_n0(parsed.v) == 60);
}

TEST_CASE("verify through the C API") {
  Inst inst;
  Str err;
  REQUIRE(mmens_forge("monotone1d", 1e-8, 150, 1, 1.0, 5, &inst.v, &err.v) ==
          MMENS_OK);
  Str report;
  int pass = 0;
  REQUIRE(mmens_verify(inst.v, "{\"draws\": 300, \"seed\": 11}", &report.v,
                       &pass, &err.v) == MMENS_OK);
  CHECK(pass == 1);
  CHECK(report.str().find("\"check\":\"no_side_farness\"") !=
        std::string::npos);

  int bad_pass = 1;
  Str bad_report;
  CHECK(mmens_verify(inst.v, "{\"mode\":\"bogus\"}", &bad_report.v, &bad_pass,
                     &err.v) == MMENS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tv curve CSV shape and the N=0 row") {
  Inst inst;
  Str err;
  REQUIRE(mmens_forge("logconcave", 1e-12, 12, 1, 4.0, 5, &inst.v, &err.v) ==
          MMENS_OK);
  const int64_t ns[2] = {0, 8};
  Str csv;
  REQUIRE(mmens_tv_curve(inst.v, ns, 2, 2000, 7, nullptr, &csv.v, &err.v) ==
          MMENS_OK);
  const std::string text = csv.str();
  CHECK(text.find("N,marginal_bound") == 0);
  CHECK(text.find("\n0,0,0,0,0,0,0,") != std::string::npos);
  // Three lines: header plus two rows.
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("theorem bound branches through the C API") {
  double n_required = 0.0;
  Str branch, err;
  REQUIRE(mmens_theorem_bound("monotone1d", 1e-9, 100000000000, 1, nullptr,
                              &n_required, &branch.v, &err.v) == MMENS_OK);
  CHECK(branch.str() == "epsilon-cap");
  Str branch2;
  REQUIRE(mmens_theorem_bound("logconcave", 1e-9, 10, 1, "{\"k3\": 2.0}",
                              &n_required, &branch2.v, &err.v) == MMENS_OK);
  CHECK(branch2.str() == "n");
}

TEST_CASE("sampling is deterministic and respects N") {
  Inst inst;
  Str err;
  REQUIRE(mmens_forge("monotone1d", 1e-9, 6, 1, 4.0, 5, &inst.v, &err.v) ==
          MMENS_OK);
  Str a, b;
  REQUIRE(mmens_sample(inst.v, "no", 50, 77, &a.v, &err.v) == MMENS_OK);
  REQUIRE(mmens_sample(inst.v, "no", 50, 77, &b.v, &err.v) == MMENS_OK);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("\"deltas\"") != std::string::npos);

  Str zero;
  REQUIRE(mmens_sample(inst.v, "yes", 0, 3, &zero.v, &err.v) == MMENS_OK);
  CHECK(zero.str().find("\"n_samples\": 0") != std::string::npos);

  Str bad;
  CHECK(mmens_sample(inst.v, "maybe", 5, 3, &bad.v, &err.v) ==
        MMENS_ERR_INVALID_ARGUMENT);
}
