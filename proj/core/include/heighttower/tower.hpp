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

// Construction of the radical tower K_i = K_{i-1}(p_i^(1/d_i)): the primes
// d_i grow at least geometrically (d_i >= 2 d_{i-1}) and each p_i is taken
// from the certified integer bracket [x, 2x], with
//   x = exp(d^(1 - gamma + epsilon/2))   (general variant), or
//   x = d^delta                          (delta variant, gamma = 1).
// Both primes are always the smallest eligible ones, and no prime is ever
// used twice across the whole tower.

#ifndef HEIGHTTOWER_TOWER_HPP_
#define HEIGHTTOWER_TOWER_HPP_

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "heighttower/bigreal.hpp"
#include "heighttower/primes.hpp"

namespace heighttower {

enum class Variant { kGeneral, kDelta };

struct ConstructionParams {
  static constexpr int kMaxHorizon = 256;

  mpq_class gamma = 1;
  // Required for the general variant. In the delta variant it only sets the
  // exponent gamma - epsilon probed by the witness metric (default 1).
  std::optional<mpq_class> epsilon;
  std::optional<mpq_class> delta;
  int horizon = 1;
  PrecisionPolicy precision;
  // Largest admissible bit length of any p_i.
  unsigned long max_p_bits = 40000;
  // Candidates scanned above 2 d_{i-1} before giving up on d_i.
  unsigned long d_scan_cap = 1ul << 24;
  PrimeSearchOptions search;

  static ConstructionParams general(mpq_class gamma, mpq_class epsilon,
                                    int horizon);
  static ConstructionParams delta_variant(mpq_class delta, int horizon);

  Variant variant() const { return delta ? Variant::kDelta : Variant::kGeneral; }
  // The epsilon of the (gamma - epsilon)-Bogomolov witness.
  mpq_class witness_epsilon() const { return epsilon.value_or(mpq_class(1)); }
  // Throws DomainError describing the first violated constraint.
  void validate() const;
};

struct TowerLevel {
  int index = 0;
  mpz_class d;
  mpz_class p;
  PrimalityVerdict d_verdict;
  PrimalityVerdict p_verdict;
  IntegerBracket p_bracket;
  Enclosure log_p = Enclosure::exact(0);
  Enclosure log_d = Enclosure::exact(0);
  // prod_{j <= i} d_j = [K_i : Q]
  mpz_class abs_degree;
  // (log p) / d
  Enclosure generator_height = Enclosure::exact(0);
};

// Certified [ceil(x), floor(2x)]. Throws PrecisionExhausted or
// SizeCapExceeded.
IntegerBracket p_interval(const mpz_class& d, const ConstructionParams& params);

// Smallest prime >= 2 * prev_d (or >= 2 for the first level) outside
// exclusions. Throws SearchExhausted after scan_cap candidates.
mpz_class next_d(const std::optional<mpz_class>& prev_d,
                 const PrimeSet& exclusions,
                 unsigned long scan_cap = 1ul << 24,
                 const PrimeSearchOptions& search = {});

// Smallest prime in p_interval(d, params) outside exclusions. Throws
// IntervalExhausted carrying the bracket.
mpz_class next_p(const mpz_class& d, const ConstructionParams& params,
                 const PrimeSet& exclusions);

// Incremental construction; each extend() appends one level.
class TowerBuilder {
 public:
  explicit TowerBuilder(ConstructionParams params);

  // Errors carry the index of the failing level.
  const TowerLevel& extend();

  std::span<const TowerLevel> levels() const { return levels_; }
  const PrimeSet& used_primes() const { return used_; }
  const ConstructionParams& params() const { return params_; }

 private:
  ConstructionParams params_;
  std::vector<TowerLevel> levels_;
  PrimeSet used_;
  mpz_class abs_degree_ = 1;
};

std::vector<TowerLevel> build_tower(const ConstructionParams& params);

// Enclosure of log n for a positive integer, to the policy's width.
Enclosure log_integer(const mpz_class& n, const PrecisionPolicy& policy);

}  // namespace heighttower

#endif  // HEIGHTTOWER_TOWER_HPP_
