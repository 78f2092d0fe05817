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

#ifndef HEIGHTTOWER_PRIMES_HPP_
#define HEIGHTTOWER_PRIMES_HPP_

#include <gmpxx.h>

#include <optional>
#include <set>
#include <string_view>

namespace heighttower {

enum class PrimalityStatus { kComposite, kProvablePrime, kProbablePrime };
enum class PrimalityMethod { kTrialDivision, kDeterministicMR, kBPSW };

std::string_view to_string(PrimalityStatus status);
std::string_view to_string(PrimalityMethod method);

struct PrimalityVerdict {
  PrimalityStatus status = PrimalityStatus::kComposite;
  PrimalityMethod method = PrimalityMethod::kTrialDivision;
  // Strong probable-prime rounds performed (Miller-Rabin bases, plus one
  // for the Lucas stage of BPSW).
  int rounds = 0;

  bool is_prime() const { return status != PrimalityStatus::kComposite; }
  friend bool operator==(const PrimalityVerdict&,
                         const PrimalityVerdict&) = default;
};

// Trial division settles n < 10^6. Below 2^64 a Miller-Rabin run over the
// first twelve prime bases is a proof. Above that the verdict is BPSW.
PrimalityVerdict is_prime(const mpz_class& n);

namespace detail {

// Strong probable prime test to base a; n odd, n > 3.
bool miller_rabin_round(const mpz_class& n, unsigned long base);

// Strong Lucas probable prime test with Selfridge's parameter choice.
// n odd, n > 3 and not a perfect square.
bool strong_lucas_probable_prime(const mpz_class& n);

}  // namespace detail

using PrimeSet = std::set<mpz_class>;

struct PrimeSearchOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Candidates per chunk handed to one worker.
  unsigned long chunk_size = 1 << 14;
};

// Smallest prime q with lo <= q <= hi and q not in exclude, or nullopt.
// The answer does not depend on threads or chunk_size.
std::optional<mpz_class> find_prime_in_interval(
    const mpz_class& lo, const mpz_class& hi, const PrimeSet& exclude = {},
    const PrimeSearchOptions& options = {});

}  // namespace heighttower

#endif  // HEIGHTTOWER_PRIMES_HPP_
