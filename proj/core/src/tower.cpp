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

#include "heighttower/tower.hpp"

#include <cmath>
#include <string>

#include "heighttower/error.hpp"
#include "heighttower/heights.hpp"

namespace heighttower {

ConstructionParams ConstructionParams::general(mpq_class gamma,
                                               mpq_class epsilon, int horizon) {
  ConstructionParams params;
  params.gamma = std::move(gamma);
  params.epsilon = std::move(epsilon);
  params.horizon = horizon;
  return params;
}

ConstructionParams ConstructionParams::delta_variant(mpq_class delta,
                                                     int horizon) {
  ConstructionParams params;
  params.gamma = 1;
  params.delta = std::move(delta);
  params.horizon = horizon;
  return params;
}

void ConstructionParams::validate() const {
  if (gamma <= 0 || gamma > 1) throw DomainError("gamma must lie in (0, 1]");
  if (delta) {
    if (*delta <= 1) throw DomainError("delta must exceed 1");
    if (gamma != 1) throw DomainError("the delta variant requires gamma = 1");
  } else if (!epsilon) {
    throw DomainError("either epsilon or delta must be given");
  }
  if (epsilon && *epsilon <= 0) throw DomainError("epsilon must be positive");
  if (horizon < 1 || horizon > kMaxHorizon) {
    throw DomainError("horizon must lie in [1, " + std::to_string(kMaxHorizon) +
                      "]");
  }
  if (max_p_bits < 2) throw DomainError("max_p_bits too small");
  precision.validate();
}

Enclosure log_integer(const mpz_class& n, const PrecisionPolicy& policy) {
  if (n < 1) throw DomainError("log of a non-positive integer");
  return refine_to_policy(
      [&](mpfr_prec_t bits) { return log_at(Enclosure::of(n, bits), bits); },
      policy, WidthScale::kAbsolute, "log");
}

namespace {

double log2_of(const mpz_class& n) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exponent);
}

// [ceil(r), floor(2r)] for r = d^(a/b) using exact integer roots.
IntegerBracket exact_power_bracket(const mpz_class& d, const mpq_class& delta) {
  const unsigned long a = delta.get_num().get_ui();
  const unsigned long b = delta.get_den().get_ui();
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), d.get_mpz_t(), a);

  IntegerBracket out;
  if (mpz_root(out.lo.get_mpz_t(), power.get_mpz_t(), b) == 0) out.lo += 1;
  mpz_class doubled;
  mpz_mul_2exp(doubled.get_mpz_t(), power.get_mpz_t(), b);
  mpz_root(out.hi.get_mpz_t(), doubled.get_mpz_t(), b);
  return out;
}

IntegerBracket enclosure_bracket(
    const std::function<Enclosure(mpfr_prec_t)>& endpoint,
    double estimated_log2, const PrecisionPolicy& policy) {
  // Separating x from the nearest integer needs at least log2(x) bits.
  mpfr_prec_t bits = policy.initial_bits;
  while (bits < estimated_log2 + 32 && bits < policy.max_bits) {
    bits = std::min<mpfr_prec_t>(bits * 2, policy.max_bits);
  }
  const Enclosure two = Enclosure::exact(2);
  while (true) {
    const Enclosure x = endpoint(bits);
    if (auto bracket = integer_bracket(x, x * two)) return *bracket;
    if (bits >= policy.max_bits) {
      throw PrecisionExhausted("p_interval: bracket endpoints still ambiguous at " +
                               std::to_string(policy.max_bits) + " bits");
    }
    bits = std::min<mpfr_prec_t>(bits * 2, policy.max_bits);
  }
}

void check_size(double log2_p, const ConstructionParams& params,
                const mpz_class& d) {
  if (log2_p > static_cast<double>(params.max_p_bits)) {
    throw SizeCapExceeded("p for d = " + d.get_str() + " would need about " +
                          std::to_string(static_cast<long>(log2_p)) +
                          " bits, above the cap of " +
                          std::to_string(params.max_p_bits));
  }
}

}  // namespace

IntegerBracket p_interval(const mpz_class& d, const ConstructionParams& params) {
  params.validate();
  if (d < 2) throw DomainError("p_interval needs d >= 2");
  const double log2_d = log2_of(d);

  if (params.variant() == Variant::kDelta) {
    const mpq_class& delta = *params.delta;
    check_size(delta.get_d() * log2_d + 1.0, params, d);
    // d^delta is an integer whenever delta is, so the exact route is the
    // only one that always terminates. It is used while d^num stays small.
    if (delta.get_num().fits_ulong_p() && delta.get_den().fits_ulong_p() &&
        delta.get_num().get_d() * log2_d < static_cast<double>(1ul << 22)) {
      return exact_power_bracket(d, delta);
    }
    return enclosure_bracket(
        [&](mpfr_prec_t bits) {
          return pow_at(Enclosure::of(d, bits), Enclosure::of(delta, bits), bits);
        },
        delta.get_d() * log2_d, params.precision);
  }

  // exp of an algebraic nonzero number is transcendental, so the loop below
  // always terminates.
  const mpq_class exponent = 1 - params.gamma + *params.epsilon / 2;
  const Enclosure inner_estimate =
      pow_at(Enclosure::of(d, 64), Enclosure::of(exponent, 64), 64);
  const double log2_x = inner_estimate.lo().to_double(MPFR_RNDD) / std::log(2.0);
  check_size(log2_x + 1.0, params, d);
  return enclosure_bracket(
      [&](mpfr_prec_t bits) {
        const Enclosure inner = pow_at(Enclosure::of(d, bits),
                                       Enclosure::of(exponent, bits), bits + 32);
        return exp_at(inner, bits);
      },
      log2_x, params.precision);
}

mpz_class next_d(const std::optional<mpz_class>& prev_d,
                 const PrimeSet& exclusions, unsigned long scan_cap,
                 const PrimeSearchOptions& search) {
  const mpz_class start = prev_d ? mpz_class(2 * *prev_d) : mpz_class(2);
  auto found = find_prime_in_interval(start, start + scan_cap, exclusions, search);
  if (!found) {
    throw SearchExhausted("no eligible prime d in [" + start.get_str() + ", " +
                          mpz_class(start + scan_cap).get_str() + "]");
  }
  return *found;
}

namespace {

mpz_class smallest_in_bracket(const mpz_class& d, const IntegerBracket& bracket,
                              const ConstructionParams& params,
                              const PrimeSet& exclusions) {
  if (bracket.lo <= bracket.hi) {
    auto found = find_prime_in_interval(bracket.lo, bracket.hi, exclusions,
                                        params.search);
    if (found) return *found;
  }
  throw IntervalExhausted("no eligible prime p for d = " + d.get_str() +
                              " in [" + bracket.lo.get_str() + ", " +
                              bracket.hi.get_str() + "]",
                          bracket.lo.get_str(), bracket.hi.get_str());
}

}  // namespace

mpz_class next_p(const mpz_class& d, const ConstructionParams& params,
                 const PrimeSet& exclusions) {
  return smallest_in_bracket(d, p_interval(d, params), params, exclusions);
}

TowerBuilder::TowerBuilder(ConstructionParams params)
    : params_(std::move(params)) {
  params_.validate();
}

const TowerLevel& TowerBuilder::extend() {
  const int index = static_cast<int>(levels_.size()) + 1;
  try {
    if (index > ConstructionParams::kMaxHorizon) {
      throw DomainError("tower depth limited to " +
                        std::to_string(ConstructionParams::kMaxHorizon));
    }
    std::optional<mpz_class> prev_d;
    if (!levels_.empty()) prev_d = levels_.back().d;

    TowerLevel level;
    level.index = index;
    level.d = next_d(prev_d, used_, params_.d_scan_cap, params_.search);
    used_.insert(level.d);
    level.p_bracket = p_interval(level.d, params_);
    level.p = smallest_in_bracket(level.d, level.p_bracket, params_, used_);
    used_.insert(level.p);

    level.d_verdict = is_prime(level.d);
    level.p_verdict = is_prime(level.p);
    level.log_p = log_integer(level.p, params_.precision);
    level.log_d = log_integer(level.d, params_.precision);
    abs_degree_ *= level.d;
    level.abs_degree = abs_degree_;
    level.generator_height = radical_height(level.p, level.d, params_.precision);
    levels_.push_back(std::move(level));
    return levels_.back();
  } catch (Error& e) {
    e.set_level(index);
    throw;
  }
}

std::vector<TowerLevel> build_tower(const ConstructionParams& params) {
  TowerBuilder builder(params);
  for (int i = 0; i < params.horizon; ++i) builder.extend();
  return {builder.levels().begin(), builder.levels().end()};
}

}  // namespace heighttower
