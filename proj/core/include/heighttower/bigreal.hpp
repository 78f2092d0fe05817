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

// Certified real arithmetic on top of MPFR. Every value is an Enclosure
// [lo, hi] whose endpoints were produced with directed rounding, so the true
// mathematical quantity always lies inside.

#ifndef HEIGHTTOWER_BIGREAL_HPP_
#define HEIGHTTOWER_BIGREAL_HPP_

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace heighttower {

// Owning handle for an mpfr_t. Copies keep the source precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const {
    return mpfr_get_d(value_, rnd);
  }

  // Decimal text with `digits` significant digits, rounded in direction
  // `rnd` so that the printed number is on the requested side of the value.
  std::string to_decimal(int digits, mpfr_rnd_t rnd) const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a,
                                           const BigFloat& b);

 private:
  mpfr_t value_;
};

struct PrecisionPolicy {
  mpfr_prec_t initial_bits = 64;
  mpfr_prec_t max_bits = 65536;
  // Relative for exp/pow/Mahler results, absolute for logarithms.
  double target_width = 1e-12;

  // Throws DomainError on an inconsistent policy.
  void validate() const;
};

class Enclosure {
 public:
  // Throws DomainError unless lo <= hi and both are finite.
  Enclosure(BigFloat lo, BigFloat hi);

  static Enclosure exact(long value, mpfr_prec_t bits = 64);
  static Enclosure of(const mpz_class& value, mpfr_prec_t bits);
  static Enclosure of(const mpq_class& value, mpfr_prec_t bits);
  static Enclosure hull(const Enclosure& a, const Enclosure& b);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision_bits() const;

  bool is_point() const { return lo_ == hi_; }
  // hi - lo rounded up.
  BigFloat width() const;
  // max(|lo|, |hi|).
  BigFloat magnitude() const;
  double width_double() const { return width().to_double(MPFR_RNDU); }
  double mid_double() const;

  bool contains(const mpq_class& value) const;
  bool contains(const BigFloat& value) const;
  bool contains(const Enclosure& other) const;
  bool overlaps(const Enclosure& other) const;
  // Every point of *this is strictly smaller than every point of other.
  bool certainly_below(const Enclosure& other) const;

  std::string lo_decimal(int digits = 30) const;
  std::string hi_decimal(int digits = 30) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

Enclosure operator-(const Enclosure& x);
Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
// Throws DomainError if b contains zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

// Elementary functions at a fixed working precision.
Enclosure exp_at(const Enclosure& x, mpfr_prec_t bits);
Enclosure log_at(const Enclosure& x, mpfr_prec_t bits);
Enclosure pow_at(const Enclosure& base, const Enclosure& exponent,
                 mpfr_prec_t bits);
Enclosure sqrt_at(const Enclosure& x, mpfr_prec_t bits);

// Adaptive versions: start at policy.initial_bits and double until the
// target width is met, or until doubling stops narrowing the result (the
// width is then inherited from the input). Throw PrecisionExhausted when
// max_bits is reached first.
Enclosure exp_enc(const Enclosure& x, const PrecisionPolicy& policy = {});
Enclosure log_enc(const Enclosure& x, const PrecisionPolicy& policy = {});
Enclosure pow_enc(const Enclosure& base, const Enclosure& exponent,
                  const PrecisionPolicy& policy = {});

enum class WidthScale { kAbsolute, kRelative };

// The precision loop behind the *_enc functions, for callers composing
// their own computations. `compute` must return an enclosure of the same
// quantity at the requested working precision.
Enclosure refine_to_policy(
    const std::function<Enclosure(mpfr_prec_t)>& compute,
    const PrecisionPolicy& policy, WidthScale scale, std::string_view what);

// ceil / floor that agree on every point of x, or nullopt when x straddles
// an integer boundary and the caller needs to refine.
std::optional<mpz_class> unambiguous_ceil(const Enclosure& x);
std::optional<mpz_class> unambiguous_floor(const Enclosure& x);

struct IntegerBracket {
  mpz_class lo;  // ceil of the lower endpoint
  mpz_class hi;  // floor of the upper endpoint
};

// nullopt means NeedsMorePrecision.
std::optional<IntegerBracket> integer_bracket(const Enclosure& lower_endpoint,
                                              const Enclosure& upper_endpoint);

// Exact rational from "12", "-0.25", "1.5e-3" or "3/4".
// Throws DomainError on malformed text.
mpq_class parse_rational(std::string_view text);

// Shortest plain decimal for a rational with a terminating expansion,
// otherwise "num/den".
std::string format_rational(const mpq_class& value);

}  // namespace heighttower

#endif  // HEIGHTTOWER_BIGREAL_HPP_
