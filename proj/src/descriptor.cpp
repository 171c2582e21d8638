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

#include "descriptor.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "error.hpp"

namespace mmens {

using nlohmann::json;

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::io_error, "non-finite value in descriptor");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw Error(ErrorCode::io_error, "bad numeric field '" + text + "'");
  }
  return v;
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["schema_version"] = kDescriptorSchemaVersion;
  doc["family"] = family_name(instance.params.family);
  doc["params"] = {{"epsilon", format_double(instance.params.epsilon)},
                   {"n", instance.params.n},
                   {"n0", instance.n0},
                   {"d", instance.params.d},
                   {"C", format_double(instance.params.c)},
                   {"m", instance.m}};
  doc["creation_seed"] = instance.creation_seed;
  json base = json::array();
  for (double mass : instance.spec.base.masses()) {
    base.push_back(format_double(mass));
  }
  doc["base"] = std::move(base);
  json pairs = json::array();
  for (const auto& [j, k] : instance.spec.pairs) {
    pairs.push_back(json::array({j, k}));
  }
  doc["pairs"] = std::move(pairs);
  json kernels = json::array();
  for (const auto& kern : instance.spec.kernels) {
    kernels.push_back({{"A", format_double(kern.amplitude)},
                       {"g", format_double(kern.offset)}});
  }
  doc["kernels"] = std::move(kernels);
  if (instance.layout.has_value()) {
    doc["halfcube"] = {{"n0", instance.layout->n0}, {"d", instance.layout->d}};
  }
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io_error, std::string("descriptor parse: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kDescriptorSchemaVersion) {
      throw Error(ErrorCode::io_error,
                  "unsupported schema version " +
                      doc.at("schema_version").dump());
    }
    const auto family = family_from_name(doc.at("family").get<std::string>());
    if (!family.has_value()) {
      throw Error(ErrorCode::io_error,
                  "unknown family " + doc.at("family").dump());
    }
    const auto& params = doc.at("params");
    InstanceParams parsed_params{
        *family, parse_double(params.at("epsilon").get<std::string>()),
        params.at("n").get<std::int64_t>(), params.at("d").get<int>(),
        parse_double(params.at("C").get<std::string>())};
    const std::int64_t n0 = params.at("n0").get<std::int64_t>();
    const int m = params.at("m").get<int>();

    std::vector<double> base;
    for (const auto& mass : doc.at("base")) {
      base.push_back(parse_double(mass.get<std::string>()));
    }
    // Masses load unchecked: a corrupted descriptor must surface as a failed
    // validation check, not a parse error.
    EnsembleSpec spec{DiscreteDistribution::unchecked(std::move(base)),
                      {},
                      {},
                      m};
    for (const auto& pair : doc.at("pairs")) {
      spec.pairs.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    for (const auto& kern : doc.at("kernels")) {
      spec.kernels.push_back({parse_double(kern.at("A").get<std::string>()),
                              parse_double(kern.at("g").get<std::string>())});
    }
    std::optional<HalfcubeLayout> layout;
    if (doc.contains("halfcube")) {
      layout = HalfcubeLayout{doc["halfcube"].at("n0").get<std::int64_t>(),
                              doc["halfcube"].at("d").get<int>()};
    }
    return Instance{parsed_params,
                    n0,
                    m,
                    std::move(spec),
                    layout,
                    {},
                    doc.at("creation_seed").get<std::uint64_t>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io_error, std::string("descriptor fields: ") + e.what());
  }
}

}  // namespace mmens
