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

#include "heighttower/primes.hpp"

#include <algorithm>
#include <array>
#include <thread>
#include <vector>

#include "heighttower/error.hpp"

namespace heighttower {

std::string_view to_string(PrimalityStatus status) {
  switch (status) {
    case PrimalityStatus::kComposite:
      return "Composite";
    case PrimalityStatus::kProvablePrime:
      return "ProvablePrime";
    case PrimalityStatus::kProbablePrime:
      return "ProbablePrime";
  }
  return "?";
}

std::string_view to_string(PrimalityMethod method) {
  switch (method) {
    case PrimalityMethod::kTrialDivision:
      return "trial_division";
    case PrimalityMethod::kDeterministicMR:
      return "deterministic_mr";
    case PrimalityMethod::kBPSW:
      return "bpsw";
  }
  return "?";
}

namespace {

constexpr unsigned long kWheelLimit = 1000;
constexpr unsigned long kTrialDivisionBound = kWheelLimit * kWheelLimit;

// Bases 2..37 decide every n < 3.3 * 10^24, which covers all of 64 bits.
constexpr std::array<unsigned long, 12> kDeterministicBases = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

const std::vector<unsigned long>& wheel_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kWheelLimit, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i < kWheelLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < kWheelLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool fits_in_64_bits(const mpz_class& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

mpz_class half_mod(mpz_class x, const mpz_class& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  return x;
}

}  // namespace

namespace detail {

bool miller_rabin_round(const mpz_class& n, unsigned long base) {
  const mpz_class n_minus_1 = n - 1;
  mpz_class d = n_minus_1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  mpz_class a = base;
  a %= n;
  if (a == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_lucas_probable_prime(const mpz_class& n) {
  // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long d_value = 5;
  while (true) {
    const mpz_class d_mpz = d_value;
    const int jacobi = mpz_jacobi(d_mpz.get_mpz_t(), n.get_mpz_t());
    if (jacobi == -1) break;
    if (jacobi == 0 && abs(d_mpz) != n) return false;
    d_value = d_value > 0 ? -(d_value + 2) : -(d_value - 2);
    if (d_value > 1000000 || d_value < -1000000) {
      // Only perfect squares get here; callers screen those out.
      return false;
    }
  }
  const mpz_class D = d_value;
  const mpz_class Q = (1 - D) / 4;

  // n + 1 = k * 2^s, k odd.
  mpz_class k = n + 1;
  const unsigned long s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  auto mod = [&](mpz_class x) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return x;
  };

  // P = 1. Walk the bits of k from the top, keeping U_j, V_j and Q^j.
  mpz_class u = 1;
  mpz_class v = 1;
  mpz_class q_pow = mod(Q);
  const mpz_class q_mod = q_pow;
  const mpz_class d_mod = mod(D);
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2;
       bit >= 0; --bit) {
    u = mod(u * v);
    v = mod(v * v - 2 * q_pow);
    q_pow = mod(q_pow * q_pow);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      const mpz_class next_u = half_mod(mod(u + v), n);
      v = half_mod(mod(d_mod * u + v), n);
      u = next_u;
      q_pow = mod(q_pow * q_mod);
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = mod(v * v - 2 * q_pow);
    if (v == 0) return true;
    q_pow = mod(q_pow * q_pow);
  }
  return false;
}

}  // namespace detail

PrimalityVerdict is_prime(const mpz_class& n) {
  using S = PrimalityStatus;
  using M = PrimalityMethod;
  if (n < 2) return {S::kComposite, M::kTrialDivision, 0};

  for (unsigned long q : wheel_primes()) {
    if (n == q) return {S::kProvablePrime, M::kTrialDivision, 0};
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      return {S::kComposite, M::kTrialDivision, 0};
    }
  }
  if (n < kTrialDivisionBound) return {S::kProvablePrime, M::kTrialDivision, 0};

  if (fits_in_64_bits(n)) {
    int rounds = 0;
    for (unsigned long base : kDeterministicBases) {
      ++rounds;
      if (!detail::miller_rabin_round(n, base)) {
        return {S::kComposite, M::kDeterministicMR, rounds};
      }
    }
    return {S::kProvablePrime, M::kDeterministicMR, rounds};
  }

  if (!detail::miller_rabin_round(n, 2)) return {S::kComposite, M::kBPSW, 1};
  if (mpz_perfect_square_p(n.get_mpz_t())) return {S::kComposite, M::kBPSW, 1};
  if (!detail::strong_lucas_probable_prime(n)) {
    return {S::kComposite, M::kBPSW, 2};
  }
  return {S::kProbablePrime, M::kBPSW, 2};
}

namespace {

// Smallest eligible prime in [start, start + length).
std::optional<mpz_class> scan_chunk(const mpz_class& start,
                                    unsigned long length,
                                    const PrimeSet& exclude) {
  std::vector<char> sieved_out(length, 0);
  for (unsigned long q : wheel_primes()) {
    const unsigned long r = mpz_fdiv_ui(start.get_mpz_t(), q);
    unsigned long offset = (q - r) % q;
    if (start + offset == q) offset += q;
    for (; offset < length; offset += q) sieved_out[offset] = 1;
  }
  mpz_class candidate;
  for (unsigned long i = 0; i < length; ++i) {
    if (sieved_out[i]) continue;
    candidate = start + i;
    if (candidate < 2 || exclude.contains(candidate)) continue;
    if (is_prime(candidate).is_prime()) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::optional<mpz_class> find_prime_in_interval(const mpz_class& lo,
                                                const mpz_class& hi,
                                                const PrimeSet& exclude,
                                                const PrimeSearchOptions& options) {
  if (lo > hi) throw DomainError("find_prime_in_interval: lo > hi");
  if (options.chunk_size == 0) throw DomainError("chunk_size must be positive");
  const unsigned threads =
      options.threads != 0 ? options.threads
                           : std::max(1u, std::thread::hardware_concurrency());

  mpz_class next = lo < 2 ? mpz_class(2) : lo;
  std::vector<mpz_class> starts;
  std::vector<unsigned long> lengths;
  std::vector<std::optional<mpz_class>> found;
  while (next <= hi) {
    // One batch: up to `threads` consecutive chunks, scanned concurrently.
    starts.clear();
    lengths.clear();
    while (starts.size() < threads && next <= hi) {
      const mpz_class remaining = hi - next + 1;
      const unsigned long length =
          remaining < options.chunk_size ? remaining.get_ui()
                                         : options.chunk_size;
      starts.push_back(next);
      lengths.push_back(length);
      next += length;
    }
    found.assign(starts.size(), std::nullopt);
    if (starts.size() == 1) {
      found[0] = scan_chunk(starts[0], lengths[0], exclude);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(starts.size());
      for (std::size_t c = 0; c < starts.size(); ++c) {
        workers.emplace_back([&, c] {
          found[c] = scan_chunk(starts[c], lengths[c], exclude);
        });
      }
    }
    // Chunks are ordered, so the first hit is the minimum of the batch.
    for (auto& hit : found) {
      if (hit) return std::move(hit);
    }
  }
  return std::nullopt;
}

}  // namespace heighttower
