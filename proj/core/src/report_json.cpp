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

#include "heighttower/report_json.hpp"

namespace heighttower {

namespace {

Json optional_index(const std::optional<int>& index) {
  return index ? Json(*index) : Json(nullptr);
}

Json optional_rational(const std::optional<mpq_class>& value) {
  return value ? Json(format_rational(*value)) : Json(nullptr);
}

}  // namespace

Json to_json(const Enclosure& x) {
  Json j;
  j["lo"] = x.lo_decimal(kReportDigits);
  j["hi"] = x.hi_decimal(kReportDigits);
  j["precision_bits"] = x.precision_bits();
  return j;
}

Json to_json(const PrimalityVerdict& verdict) {
  Json j;
  j["status"] = std::string(to_string(verdict.status));
  j["method"] = std::string(to_string(verdict.method));
  j["rounds"] = verdict.rounds;
  return j;
}

Json to_json(const ConstructionParams& params) {
  Json j;
  j["variant"] = params.variant() == Variant::kDelta ? "delta" : "general";
  j["gamma"] = format_rational(params.gamma);
  j["epsilon"] = optional_rational(params.epsilon);
  j["delta"] = optional_rational(params.delta);
  j["witness_epsilon"] = format_rational(params.witness_epsilon());
  j["horizon"] = params.horizon;
  j["max_p_bits"] = params.max_p_bits;
  Json precision;
  precision["initial_bits"] = params.precision.initial_bits;
  precision["max_bits"] = params.precision.max_bits;
  precision["target_width"] = params.precision.target_width;
  j["precision"] = std::move(precision);
  return j;
}

Json to_json(const TowerLevel& level) {
  Json j;
  j["index"] = level.index;
  j["d"] = level.d.get_str();
  j["p"] = level.p.get_str();
  j["primality"] = std::string(to_string(level.p_verdict.method));
  j["p_verdict"] = to_json(level.p_verdict);
  j["d_verdict"] = to_json(level.d_verdict);
  j["p_bracket"] = {{"lo", level.p_bracket.lo.get_str()},
                    {"hi", level.p_bracket.hi.get_str()}};
  j["log_p"] = to_json(level.log_p);
  j["log_d"] = to_json(level.log_d);
  j["abs_degree"] = level.abs_degree.get_str();
  j["generator_height"] = to_json(level.generator_height);
  return j;
}

Json to_json(const LevelMetrics& metrics) {
  Json j;
  j["index"] = metrics.index;
  j["a"] = to_json(metrics.a);
  j["b"] = to_json(metrics.b);
  j["silverman_floor"] = to_json(metrics.silverman_floor);
  j["f_floor"] = to_json(metrics.f_floor);
  j["witness_f"] = to_json(metrics.witness_f);
  j["scaled_silverman"] = to_json(metrics.scaled_silverman);
  j["generator_f"] = to_json(metrics.generator_f);
  j["precision_bits"] = metrics.precision_bits;
  return j;
}

Json to_json(const CertificateReport& report) {
  Json j;
  j["schema_version"] = report.schema_version;
  j["params"] = to_json(report.params);

  Json levels = Json::array();
  for (const auto& [level, metrics] : report.levels) {
    Json entry;
    entry["level"] = to_json(level);
    entry["metrics"] = to_json(metrics);
    entry["checks"] = {{"identity_overlap", metrics.identity_overlap()},
                       {"chain_inequality", metrics.chain_holds()},
                       {"floor_below_generator", metrics.floor_below_generator()}};
    levels.push_back(std::move(entry));
  }
  j["levels"] = std::move(levels);

  j["audit"] = {{"a_monotone_from", optional_index(report.audit.a_monotone_from)},
                {"b_decreasing_from", optional_index(report.audit.b_decreasing_from)},
                {"indeterminate_comparisons", report.audit.indeterminate_comparisons}};
  j["witness"] = {{"eta", format_rational(report.eta)},
                  {"index", optional_index(report.witness_index)}};
  j["primality_summary"] = {
      {"provable_prime", report.primality_summary.provable_prime},
      {"probable_prime", report.primality_summary.probable_prime}};
  j["northcott_statement"] =
      "any alpha in L whose smallest containing level is i satisfies "
      "(deg alpha)^gamma * h(alpha) >= f_floor(i); a_monotone_from and "
      "b_decreasing_from are finite evidence over the horizon, not limits";
  return j;
}

std::string serialize(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace heighttower
