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

#include "heighttower/certify.hpp"

#include <algorithm>

#include "heighttower/error.hpp"
#include "heighttower/heights.hpp"

namespace heighttower {

namespace {

BigFloat combined_width(const Enclosure& x, const Enclosure& y) {
  BigFloat out(std::max(x.precision_bits(), y.precision_bits()));
  mpfr_add(out.get(), x.width().get(), y.width().get(), MPFR_RNDU);
  return out;
}

// left.lo >= right_bound - combined widths
bool dominates(const BigFloat& left_lo, const BigFloat& right_bound,
               const BigFloat& slack) {
  BigFloat threshold(std::max(right_bound.precision(), slack.precision()));
  mpfr_sub(threshold.get(), right_bound.get(), slack.get(), MPFR_RNDD);
  return left_lo >= threshold;
}

bool narrow_enough(const Enclosure& x, double target) {
  BigFloat allowed = x.magnitude();
  if (mpfr_cmp_ui(allowed.get(), 1) < 0) mpfr_set_ui(allowed.get(), 1, MPFR_RNDN);
  mpfr_mul_d(allowed.get(), allowed.get(), target, MPFR_RNDD);
  return x.width() <= allowed;
}

}  // namespace

bool LevelMetrics::chain_holds() const {
  return dominates(scaled_silverman.lo(), f_floor.hi(),
                   combined_width(scaled_silverman, f_floor));
}

bool LevelMetrics::floor_below_generator() const {
  return dominates(generator_f.lo(), f_floor.lo(),
                   combined_width(generator_f, f_floor));
}

LevelMetrics level_metrics_at(const TowerLevel& level,
                              const ConstructionParams& params,
                              mpfr_prec_t bits) {
  const mpq_class& gamma = params.gamma;
  const mpq_class epsilon = params.witness_epsilon();
  auto power_of_d = [&](const Enclosure& d, const mpq_class& exponent) {
    return pow_at(d, Enclosure::of(exponent, bits), bits);
  };

  const Enclosure d = Enclosure::of(level.d, bits);
  const Enclosure log_p = log_at(Enclosure::of(level.p, bits), bits);
  const Enclosure log_d = log_at(d, bits);
  const Enclosure one = Enclosure::exact(1, bits);
  const Enclosure two = Enclosure::exact(2, bits);

  LevelMetrics m;
  m.index = level.index;
  m.precision_bits = bits;
  m.a = power_of_d(d, gamma - 1) * (log_p - log_d);
  m.b = power_of_d(d, gamma - epsilon - 1) * log_p;
  m.silverman_floor = log_p / (two * d) - log_d / (two * (d - one));
  m.f_floor = ((log_p - log_d) / power_of_d(d, 1 - gamma) - one) / two;
  m.scaled_silverman = power_of_d(d, gamma) * m.silverman_floor;

  PrecisionPolicy fixed = params.precision;
  fixed.initial_bits = bits;
  fixed.max_bits = std::max(bits, params.precision.max_bits);
  const Enclosure h = radical_height(level.p, level.d, fixed);
  m.witness_f = f_value(level.d, gamma - epsilon, h, fixed);
  m.generator_f = f_value(level.d, gamma, h, fixed);
  return m;
}

LevelMetrics level_metrics(const TowerLevel& level,
                           const ConstructionParams& params) {
  const PrecisionPolicy& policy = params.precision;
  policy.validate();
  mpfr_prec_t bits = policy.initial_bits;
  while (true) {
    LevelMetrics m = level_metrics_at(level, params, bits);
    const double target = policy.target_width;
    if (narrow_enough(m.a, target) && narrow_enough(m.b, target) &&
        narrow_enough(m.silverman_floor, target) &&
        narrow_enough(m.f_floor, target)) {
      return m;
    }
    if (bits >= policy.max_bits) {
      throw PrecisionExhausted("level_metrics: level " +
                               std::to_string(level.index) +
                               " not resolved at " +
                               std::to_string(policy.max_bits) + " bits");
    }
    bits = std::min<mpfr_prec_t>(bits * 2, policy.max_bits);
  }
}

WitnessSearch witness_index(const ConstructionParams& params,
                            const mpq_class& eta, int level_cap) {
  if (eta <= 0) throw DomainError("eta must be positive");
  if (level_cap < 1 || level_cap > ConstructionParams::kMaxHorizon) {
    throw DomainError("level_cap must lie in [1, " +
                      std::to_string(ConstructionParams::kMaxHorizon) + "]");
  }
  TowerBuilder builder(params);
  WitnessSearch best;
  for (int i = 1; i <= level_cap; ++i) {
    const TowerLevel& level = builder.extend();
    LevelMetrics m = level_metrics(level, params);
    if (mpfr_cmp_q(m.b.hi().get(), eta.get_mpq_t()) < 0) {
      return WitnessSearch{true, i, std::move(m.b)};
    }
    if (best.index == 0 || m.b.hi() < best.b.hi()) {
      best.index = i;
      best.b = std::move(m.b);
    }
  }
  return best;
}

namespace {

enum class Order { kIncreasing, kDecreasing };

bool strictly_ordered(const Enclosure& earlier, const Enclosure& later,
                      Order order) {
  return order == Order::kIncreasing ? earlier.certainly_below(later)
                                     : later.certainly_below(earlier);
}

std::optional<int> onset_of_suffix(const std::vector<bool>& ordered_pairs) {
  if (ordered_pairs.empty()) return 1;
  std::size_t start = ordered_pairs.size();
  while (start > 0 && ordered_pairs[start - 1]) --start;
  if (start == ordered_pairs.size()) return std::nullopt;
  return static_cast<int>(start) + 1;
}

}  // namespace

MonotonicityAudit audit_monotonicity(
    std::vector<std::pair<TowerLevel, LevelMetrics>>& levels,
    const ConstructionParams& params) {
  MonotonicityAudit audit;
  const std::size_t n = levels.size();
  std::vector<bool> a_increasing(n > 0 ? n - 1 : 0, false);
  std::vector<bool> b_decreasing(n > 0 ? n - 1 : 0, false);

  auto select = [](const LevelMetrics& m, bool use_a) -> const Enclosure& {
    return use_a ? m.a : m.b;
  };
  auto compare = [&](std::size_t i, bool use_a) {
    const Order order = use_a ? Order::kIncreasing : Order::kDecreasing;
    auto& [left_level, left] = levels[i];
    auto& [right_level, right] = levels[i + 1];
    if (strictly_ordered(select(left, use_a), select(right, use_a), order)) {
      return true;
    }
    if (!select(left, use_a).overlaps(select(right, use_a))) return false;
    // Indeterminate: one escalation, then record what we have.
    const mpfr_prec_t bits =
        std::min(params.precision.max_bits,
                 2 * std::max(left.precision_bits, right.precision_bits));
    left = level_metrics_at(left_level, params, bits);
    right = level_metrics_at(right_level, params, bits);
    if (strictly_ordered(select(left, use_a), select(right, use_a), order)) {
      return true;
    }
    if (select(left, use_a).overlaps(select(right, use_a))) {
      ++audit.indeterminate_comparisons;
    }
    return false;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    a_increasing[i] = compare(i, true);
    b_decreasing[i] = compare(i, false);
  }
  audit.a_monotone_from = onset_of_suffix(a_increasing);
  audit.b_decreasing_from = onset_of_suffix(b_decreasing);
  return audit;
}

bool CertificateReport::all_identity_overlaps() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto& entry) {
    return entry.second.identity_overlap();
  });
}

bool CertificateReport::all_chains_hold() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto& entry) {
    return entry.second.chain_holds();
  });
}

bool CertificateReport::all_floors_below_generators() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto& entry) {
    return entry.second.floor_below_generator();
  });
}

CertificateReport audit_report(const ConstructionParams& params,
                               const mpq_class& eta) {
  if (eta <= 0) throw DomainError("eta must be positive");
  CertificateReport report;
  report.params = params;
  report.eta = eta;
  for (auto& level : build_tower(params)) {
    LevelMetrics m = level_metrics(level, params);
    report.levels.emplace_back(std::move(level), std::move(m));
  }
  report.audit = audit_monotonicity(report.levels, params);

  for (const auto& [level, m] : report.levels) {
    if (!report.witness_index &&
        mpfr_cmp_q(m.b.hi().get(), eta.get_mpq_t()) < 0) {
      report.witness_index = level.index;
    }
    for (const auto* verdict : {&level.d_verdict, &level.p_verdict}) {
      if (verdict->status == PrimalityStatus::kProvablePrime) {
        ++report.primality_summary.provable_prime;
      } else if (verdict->status == PrimalityStatus::kProbablePrime) {
        ++report.primality_summary.probable_prime;
      }
    }
  }
  return report;
}

}  // namespace heighttower
