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

#include "heighttower/heights.hpp"

#include <cmath>

#include "heighttower/error.hpp"
#include "heighttower/primes.hpp"

namespace heighttower {

Enclosure radical_height(const mpz_class& p, const mpz_class& d,
                         const PrecisionPolicy& policy) {
  if (p < 1 || d < 1) {
    throw DomainError("radical_height needs positive p and d");
  }
  return refine_to_policy(
      [&](mpfr_prec_t bits) {
        return log_at(Enclosure::of(p, bits), bits) / Enclosure::of(d, bits);
      },
      policy, WidthScale::kAbsolute, "radical_height");
}

RadicalGenerator make_radical_generator(const mpz_class& p, const mpz_class& d,
                                        const PrecisionPolicy& policy) {
  if (!is_prime(p).is_prime() || !is_prime(d).is_prime()) {
    throw DomainError("radical generator needs prime p and d");
  }
  return RadicalGenerator{p, d, d, radical_height(p, d, policy)};
}

Enclosure f_value(const mpz_class& degree, const mpq_class& gamma_prime,
                  const Enclosure& h, const PrecisionPolicy& policy) {
  if (degree < 1) throw DomainError("f_value needs degree >= 1");
  return refine_to_policy(
      [&](mpfr_prec_t bits) {
        return pow_at(Enclosure::of(degree, bits),
                      Enclosure::of(gamma_prime, bits), bits) *
               h;
      },
      policy, WidthScale::kRelative, "f_value");
}

Enclosure weil_height_from_minpoly(const IntPolynomial& f,
                                   const PrecisionPolicy& policy) {
  if (f.degree() < 1) throw DomainError("height needs degree >= 1");
  const IntPolynomial minpoly = f.primitive_part();
  if (minpoly.degree() >= 2 && has_rational_root(minpoly)) {
    throw DomainError("polynomial " + minpoly.to_string() +
                      " has a rational root, so it is not a minimal polynomial");
  }
  const Enclosure measure = mahler_measure(minpoly, policy);
  const mpz_class degree = minpoly.degree();
  return refine_to_policy(
      [&](mpfr_prec_t bits) {
        return log_at(measure, bits) / Enclosure::of(degree, bits);
      },
      policy, WidthScale::kAbsolute, "weil_height");
}

bool eisenstein_check(const IntPolynomial& f, const mpz_class& q) {
  if (!is_prime(q).is_prime()) {
    throw DomainError("eisenstein_check needs a prime, got " + q.get_str());
  }
  if (f.degree() < 1 || f.leading() != 1) return false;
  for (long i = 0; i < f.degree(); ++i) {
    if (!mpz_divisible_p(f.coefficient(static_cast<std::size_t>(i)).get_mpz_t(),
                         q.get_mpz_t())) {
      return false;
    }
  }
  const mpz_class q_squared = q * q;
  return !mpz_divisible_p(f.coefficient(0).get_mpz_t(), q_squared.get_mpz_t());
}

namespace {

// Above this bound the divisor enumeration is skipped and only +-1 are
// tried.
const mpz_class kDivisorScreenLimit("1000000000000", 10);

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  const mpz_class m = abs(n);
  for (mpz_class k = 1; k * k <= m; ++k) {
    if (mpz_divisible_p(m.get_mpz_t(), k.get_mpz_t())) {
      small.push_back(k);
      if (k * k != m) large.push_back(m / k);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

bool has_rational_root(const IntPolynomial& f) {
  if (f.degree() < 1) return false;
  if (f.coefficient(0) == 0) return true;
  const mpz_class& c0 = f.coefficient(0);
  const mpz_class& cd = f.leading();
  if (abs(c0) > kDivisorScreenLimit || abs(cd) > kDivisorScreenLimit) {
    return f.vanishes_at(1, 1) || f.vanishes_at(-1, 1);
  }
  const auto numerators = positive_divisors(c0);
  const auto denominators = positive_divisors(cd);
  for (const auto& b : denominators) {
    for (const auto& a : numerators) {
      if (f.vanishes_at(a, b) || f.vanishes_at(-a, b)) return true;
    }
  }
  return false;
}

}  // namespace heighttower
