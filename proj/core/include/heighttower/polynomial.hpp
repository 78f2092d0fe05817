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

#ifndef HEIGHTTOWER_POLYNOMIAL_HPP_
#define HEIGHTTOWER_POLYNOMIAL_HPP_

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heighttower {

// Dense polynomial with big-integer coefficients, ascending degree order.
// Trailing zero coefficients are trimmed so the leading coefficient of a
// nonzero polynomial is never zero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  // Accepts the dense form "c0,c1,...,cd" or a human form such as
  // "x^3-2" or "-x^10 + 2*x^9 - 3x + 1". ASCII only; throws DomainError.
  static IntPolynomial parse(std::string_view text);

  // x^d - p.
  static IntPolynomial radical(const mpz_class& p, unsigned long d);

  bool is_zero() const { return coefficients_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coefficients_.size()) - 1; }
  const mpz_class& leading() const { return coefficients_.back(); }
  const mpz_class& coefficient(std::size_t i) const { return coefficients_[i]; }
  std::span<const mpz_class> coefficients() const { return coefficients_; }

  IntPolynomial derivative() const;
  // gcd of the coefficients, nonnegative.
  mpz_class content() const;
  // Divided by content, with a positive leading coefficient.
  IntPolynomial primitive_part() const;
  // Largest k with x^k dividing *this, and the quotient.
  std::pair<unsigned long, IntPolynomial> split_zero_roots() const;

  mpz_class evaluate(const mpz_class& x) const;
  // Sign-exact test for f(num/den) == 0 (den > 0).
  bool vanishes_at(const mpz_class& num, const mpz_class& den) const;

  std::string to_string() const;
  std::string to_dense() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const mpz_class& c, const IntPolynomial& a);

 private:
  void trim();

  std::vector<mpz_class> coefficients_;
};

// Remainder of lead(b)^(deg a - deg b + 1) * a divided by b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

// Primitive gcd over the integers (positive leading coefficient).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

// q with a = q * b up to a rational scalar; the result is primitive.
// Throws DomainError if b does not divide a over the rationals.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);

// Squarefree primitive factors s_1, s_2, ... where s_k has every root of a
// of multiplicity >= k exactly once, so a is a constant times their product.
// Zero roots are kept.
std::vector<IntPolynomial> squarefree_layers(const IntPolynomial& a);

}  // namespace heighttower

#endif  // HEIGHTTOWER_POLYNOMIAL_HPP_
