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

// Integer brackets [ceil(x), floor(2x)] recomputed without MPFR.

#ifndef HEIGHTTOWER_TESTS_BRACKET_ORACLE_HPP_
#define HEIGHTTOWER_TESTS_BRACKET_ORACLE_HPP_

#include <gmpxx.h>

namespace heighttower::oracle {

struct IntRange {
  mpz_class lo;
  mpz_class hi;
};

// x = d^delta for a positive rational delta, by exact integer powers.
IntRange power_bracket(const mpz_class& d, const mpq_class& delta);

// x = exp(d^tau), by rational series bounds refined until both integer
// parts are settled.
IntRange exp_power_bracket(const mpz_class& d, const mpq_class& tau);

}  // namespace heighttower::oracle

#endif  // HEIGHTTOWER_TESTS_BRACKET_ORACLE_HPP_
