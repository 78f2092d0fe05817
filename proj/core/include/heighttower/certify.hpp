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

// Certified per-level evidence for the two properties of the tower field L:
//
//   a_i = d^(gamma-1) (log p - log d)            grows: gamma-Northcott
//   b_i = d^(gamma-epsilon-1) log p              shrinks: not
//                                                (gamma-epsilon)-Bogomolov
//   silverman_floor = log p / 2d - log d / 2(d-1)
//   f_floor         = ((log p - log d) / d^(1-gamma) - 1) / 2
//
// Any alpha in L whose smallest containing level is i satisfies
// (deg alpha)^gamma h(alpha) >= f_floor(i). Finite computation cannot verify
// the limits, so monotonicity is audited and reported, never asserted.

#ifndef HEIGHTTOWER_CERTIFY_HPP_
#define HEIGHTTOWER_CERTIFY_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heighttower/bigreal.hpp"
#include "heighttower/tower.hpp"

namespace heighttower {

struct LevelMetrics {
  int index = 0;
  Enclosure a = Enclosure::exact(0);
  Enclosure b = Enclosure::exact(0);
  Enclosure silverman_floor = Enclosure::exact(0);
  Enclosure f_floor = Enclosure::exact(0);
  // f_{gamma-epsilon}(p^(1/d)) via f_value(radical_height); same number as b.
  Enclosure witness_f = Enclosure::exact(0);
  // d^gamma * silverman_floor, the left side of the floor chain.
  Enclosure scaled_silverman = Enclosure::exact(0);
  // f_gamma(p^(1/d)), one of the numbers the floor bounds.
  Enclosure generator_f = Enclosure::exact(0);
  mpfr_prec_t precision_bits = 0;

  bool identity_overlap() const { return witness_f.overlaps(b); }
  // scaled_silverman.lo >= f_floor.hi - (combined widths).
  bool chain_holds() const;
  // generator_f.lo >= f_floor.lo - (combined widths).
  bool floor_below_generator() const;
};

// All metrics at one fixed working precision.
LevelMetrics level_metrics_at(const TowerLevel& level,
                              const ConstructionParams& params,
                              mpfr_prec_t bits);

// Escalates from params.precision.initial_bits until a, b and both floors
// meet target_width (relative to max(1, |value|)).
LevelMetrics level_metrics(const TowerLevel& level,
                           const ConstructionParams& params);

struct WitnessSearch {
  bool reached = false;
  // First index with b.hi < eta when reached, else the index of the
  // smallest b seen.
  int index = 0;
  Enclosure b = Enclosure::exact(0);
};

// Builds levels 1..level_cap as needed. level_cap may exceed the horizon.
WitnessSearch witness_index(const ConstructionParams& params,
                            const mpq_class& eta, int level_cap);

struct MonotonicityAudit {
  // Onset of the longest suffix on which a is strictly increasing
  // (b strictly decreasing), compared enclosure-wise. nullopt when even
  // the last pair fails; 1 for a single level.
  std::optional<int> a_monotone_from;
  std::optional<int> b_decreasing_from;
  // Comparisons still overlapping after one precision escalation.
  int indeterminate_comparisons = 0;
};

struct PrimalitySummary {
  int provable_prime = 0;
  int probable_prime = 0;
};

struct CertificateReport {
  static constexpr const char* kSchemaVersion = "1.0.0";

  ConstructionParams params;
  std::vector<std::pair<TowerLevel, LevelMetrics>> levels;
  MonotonicityAudit audit;
  mpq_class eta;
  std::optional<int> witness_index;
  PrimalitySummary primality_summary;
  std::string schema_version = kSchemaVersion;

  bool all_identity_overlaps() const;
  bool all_chains_hold() const;
  bool all_floors_below_generators() const;
};

CertificateReport audit_report(const ConstructionParams& params,
                               const mpq_class& eta = mpq_class(1, 2));

// Audit of an already computed metric sequence; escalates precision once on
// indeterminate comparisons and writes the refined metrics back.
MonotonicityAudit audit_monotonicity(
    std::vector<std::pair<TowerLevel, LevelMetrics>>& levels,
    const ConstructionParams& params);

}  // namespace heighttower

#endif  // HEIGHTTOWER_CERTIFY_HPP_
