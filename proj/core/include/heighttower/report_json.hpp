// Copyright 2026 The heighttower Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON form of tower levels and certificate reports. Big integers and
// rationals are decimal strings; enclosures are {lo, hi, precision_bits}
// with lo rounded down and hi rounded up. Field order is fixed so equal
// reports serialize to equal bytes.

#ifndef HEIGHTTOWER_REPORT_JSON_HPP_
#define HEIGHTTOWER_REPORT_JSON_HPP_

#include <nlohmann/json.hpp>

#include <string>

#include "heighttower/certify.hpp"

namespace heighttower {

using Json = nlohmann::ordered_json;

// Significant digits used for enclosure endpoints.
inline constexpr int kReportDigits = 30;

Json to_json(const Enclosure& x);
Json to_json(const PrimalityVerdict& verdict);
Json to_json(const ConstructionParams& params);
Json to_json(const TowerLevel& level);
Json to_json(const LevelMetrics& metrics);
Json to_json(const CertificateReport& report);

// Two-space indented, newline terminated.
std::string serialize(const Json& json);

}  // namespace heighttower

#endif  // HEIGHTTOWER_REPORT_JSON_HPP_
