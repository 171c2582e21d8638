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

#include <string>

#include "instances.hpp"

namespace mmens {

// Instance descriptors serialize every real number as a 17-significant-digit
// decimal string, so parse(serialize(x)) reproduces each double bit-exactly.
inline constexpr int kDescriptorSchemaVersion = 1;

std::string format_double(double value);
double parse_double(const std::string& text);

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

}  // namespace mmens
