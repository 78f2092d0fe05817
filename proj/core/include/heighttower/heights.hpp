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

// Absolute logarithmic Weil heights. Radical generators p^(1/d) have the
// closed form (log p)/d; any other algebraic number is handled through the
// Mahler measure of its minimal polynomial, h = log M(f) / deg f.

#ifndef HEIGHTTOWER_HEIGHTS_HPP_
#define HEIGHTTOWER_HEIGHTS_HPP_

#include <gmpxx.h>

#include "heighttower/bigreal.hpp"
#include "heighttower/polynomial.hpp"

namespace heighttower {

struct RadicalGenerator {
  mpz_class p;
  mpz_class d;
  mpz_class degree;  // equals d: x^d - p is Eisenstein at p
  Enclosure height;
};

// Encloses (log p)/d. Throws DomainError unless p, d >= 2.
Enclosure radical_height(const mpz_class& p, const mpz_class& d,
                         const PrecisionPolicy& policy = {});

// Validates primality of p and d and packages the generator p^(1/d).
RadicalGenerator make_radical_generator(const mpz_class& p, const mpz_class& d,
                                        const PrecisionPolicy& policy = {});

// degree^gamma_prime * h, for any real (rational) gamma_prime.
Enclosure f_value(const mpz_class& degree, const mpq_class& gamma_prime,
                  const Enclosure& h, const PrecisionPolicy& policy = {});

// M(f) = |lead f| * prod max(1, |root|), roots with multiplicity. Width is
// relative to the value. Throws DomainError for constant f,
// PrecisionExhausted if the roots cannot be separated within max_bits.
Enclosure mahler_measure(const IntPolynomial& f,
                         const PrecisionPolicy& policy = {});

// (log M(f)) / deg f. Irreducibility of f is the caller's job; only a
// rational-root screen is applied (DomainError if one is found and
// deg f >= 2).
Enclosure weil_height_from_minpoly(const IntPolynomial& f,
                                   const PrecisionPolicy& policy = {});

// Monic, q divides every lower coefficient, q^2 does not divide the
// constant term. Throws DomainError if q is not prime.
bool eisenstein_check(const IntPolynomial& f, const mpz_class& q);

// True if f has a rational root found by the screen (divisors of the
// constant and leading coefficients, up to a size limit).
bool has_rational_root(const IntPolynomial& f);

}  // namespace heighttower

#endif  // HEIGHTTOWER_HEIGHTS_HPP_
