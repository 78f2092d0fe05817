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

#include <gtest/gtest.h>

#include "heighttower/certify.hpp"
#include "test_helpers.hpp"

namespace heighttower {
namespace {

using testing::Q;

TEST(ReportJsonTest, EnclosureEndpointsBracketTheValue) {
  const Enclosure e = log_enc(Enclosure::exact(5));
  const Json j = to_json(e);
  EXPECT_EQ(j["precision_bits"], e.precision_bits());
  const mpq_class lo = parse_rational(j["lo"].get<std::string>());
  const mpq_class hi = parse_rational(j["hi"].get<std::string>());
  EXPECT_LT(lo, hi);
  EXPECT_LE(lo, Q("1.6094379124341003746"));
  EXPECT_GE(hi, Q("1.6094379124341003746"));
  EXPECT_TRUE(Enclosure::hull(Enclosure::of(lo, 256), Enclosure::of(hi, 256)).contains(e));
}

TEST(ReportJsonTest, BigIntegersAreDecimalStrings) {
  const auto report = audit_report(ConstructionParams::general(Q("0.5"), Q("0.5"), 8));
  const Json j = to_json(report);
  const Json& last = j["levels"].back()["level"];
  ASSERT_TRUE(last["p"].is_string());
  EXPECT_GE(last["p"].get<std::string>().size(), 30u);
  EXPECT_TRUE(last["d"].is_string());
  EXPECT_TRUE(last["abs_degree"].is_string());
  EXPECT_EQ(last["abs_degree"], report.levels.back().first.abs_degree.get_str());
  EXPECT_EQ(last["primality"], "bpsw");
  EXPECT_EQ(last["p_verdict"]["status"], "ProbablePrime");
  EXPECT_GT(j["primality_summary"]["probable_prime"].get<int>(), 0);
}

TEST(ReportJsonTest, DeltaReportLayout) {
  const auto report = audit_report(ConstructionParams::delta_variant(2, 3));
  const Json j = to_json(report);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "params", "levels", "audit",
                                            "witness", "primality_summary",
                                            "northcott_statement"}));
  EXPECT_EQ(j["schema_version"], "1.0.0");
  EXPECT_EQ(j["params"]["variant"], "delta");
  EXPECT_EQ(j["params"]["delta"], "2");
  EXPECT_TRUE(j["params"]["epsilon"].is_null());
  EXPECT_EQ(j["params"]["witness_epsilon"], "1");
  ASSERT_EQ(j["levels"].size(), 3u);
  EXPECT_EQ(j["levels"][2]["level"]["d"], "17");
  EXPECT_EQ(j["levels"][2]["level"]["p"], "293");
  EXPECT_EQ(j["levels"][2]["level"]["p_bracket"]["lo"], "289");
  EXPECT_EQ(j["levels"][2]["level"]["p_bracket"]["hi"], "578");
  EXPECT_EQ(j["levels"][2]["checks"]["chain_inequality"], true);
  EXPECT_EQ(j["audit"]["a_monotone_from"], 1);
  EXPECT_EQ(j["witness"]["eta"], "0.5");
}

TEST(ReportJsonTest, MissingOnsetSerializesAsNull) {
  CertificateReport report;
  report.params = ConstructionParams::general(1, 1, 1);
  report.eta = Q("1/3");
  const Json j = to_json(report);
  EXPECT_TRUE(j["audit"]["a_monotone_from"].is_null());
  EXPECT_TRUE(j["witness"]["index"].is_null());
  EXPECT_EQ(j["witness"]["eta"], "1/3");
}

TEST(ReportJsonTest, SerializationIsByteStable) {
  const auto params = ConstructionParams::general(1, 1, 3);
  const std::string first = serialize(to_json(audit_report(params)));
  const std::string second = serialize(to_json(audit_report(params)));
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.back(), '\n');
}

}  // namespace
}  // namespace heighttower
