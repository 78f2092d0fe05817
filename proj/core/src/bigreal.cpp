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

#include "heighttower/bigreal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <utility>

#include "heighttower/error.hpp"

namespace heighttower {

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_decimal(int digits, mpfr_rnd_t rnd) const {
  char* buffer = nullptr;
  const char* format = rnd == MPFR_RNDD   ? "%.*RDg"
                       : rnd == MPFR_RNDU ? "%.*RUg"
                                          : "%.*RNg";
  if (mpfr_asprintf(&buffer, format, digits, value_) < 0) {
    throw DomainError("decimal conversion failed");
  }
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0   ? std::partial_ordering::less
         : c > 0 ? std::partial_ordering::greater
                 : std::partial_ordering::equivalent;
}

// ---------------------------------------------------------- PrecisionPolicy

void PrecisionPolicy::validate() const {
  if (initial_bits < MPFR_PREC_MIN || max_bits > MPFR_PREC_MAX) {
    throw DomainError("precision bits out of range");
  }
  if (initial_bits > max_bits) {
    throw DomainError("initial_bits exceeds max_bits");
  }
  if (!(target_width > 0.0)) {
    throw DomainError("target_width must be positive");
  }
}

// ---------------------------------------------------------------- Enclosure

namespace {

using UnaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

mpfr_prec_t join_precision(const Enclosure& a, const Enclosure& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

BigFloat apply(UnaryOp op, const BigFloat& x, mpfr_prec_t bits,
               mpfr_rnd_t rnd) {
  BigFloat out(bits);
  op(out.get(), x.get(), rnd);
  return out;
}

BigFloat apply(BinaryOp op, const BigFloat& x, const BigFloat& y,
               mpfr_prec_t bits, mpfr_rnd_t rnd) {
  BigFloat out(bits);
  op(out.get(), x.get(), y.get(), rnd);
  return out;
}

const BigFloat& min_of(const BigFloat& a, const BigFloat& b) {
  return mpfr_lessequal_p(a.get(), b.get()) ? a : b;
}

const BigFloat& max_of(const BigFloat& a, const BigFloat& b) {
  return mpfr_greaterequal_p(a.get(), b.get()) ? a : b;
}

// Four-corner product or quotient with outward rounding.
Enclosure corners(BinaryOp op, const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t bits = join_precision(a, b);
  const BigFloat* xs[2] = {&a.lo(), &a.hi()};
  const BigFloat* ys[2] = {&b.lo(), &b.hi()};
  std::optional<BigFloat> lo;
  std::optional<BigFloat> hi;
  for (const BigFloat* x : xs) {
    for (const BigFloat* y : ys) {
      BigFloat down = apply(op, *x, *y, bits, MPFR_RNDD);
      BigFloat up = apply(op, *x, *y, bits, MPFR_RNDU);
      if (!lo || down < *lo) lo = std::move(down);
      if (!hi || up > *hi) hi = std::move(up);
    }
  }
  return Enclosure(std::move(*lo), std::move(*hi));
}

void check_finite(const BigFloat& x, const char* what) {
  if (!x.is_finite()) {
    throw DomainError(std::string(what) + ": result not finite");
  }
}

}  // namespace

Enclosure::Enclosure(BigFloat lo, BigFloat hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!lo_.is_finite() || !hi_.is_finite()) {
    throw DomainError("enclosure endpoints must be finite");
  }
  if (mpfr_greater_p(lo_.get(), hi_.get())) {
    throw DomainError("enclosure with lo > hi");
  }
}

Enclosure Enclosure::exact(long value, mpfr_prec_t bits) {
  return of(mpz_class(value), bits);
}

Enclosure Enclosure::of(const mpz_class& value, mpfr_prec_t bits) {
  BigFloat lo(bits);
  BigFloat hi(bits);
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::of(const mpq_class& value, mpfr_prec_t bits) {
  BigFloat lo(bits);
  BigFloat hi(bits);
  mpfr_set_q(lo.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), value.get_mpq_t(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(min_of(a.lo(), b.lo()), max_of(a.hi(), b.hi()));
}

mpfr_prec_t Enclosure::precision_bits() const {
  return std::max(lo_.precision(), hi_.precision());
}

BigFloat Enclosure::width() const {
  return apply(mpfr_sub, hi_, lo_, precision_bits(), MPFR_RNDU);
}

BigFloat Enclosure::magnitude() const {
  BigFloat a = apply(mpfr_abs, lo_, precision_bits(), MPFR_RNDU);
  BigFloat b = apply(mpfr_abs, hi_, precision_bits(), MPFR_RNDU);
  return max_of(a, b);
}

double Enclosure::mid_double() const {
  BigFloat sum = apply(mpfr_add, lo_, hi_, precision_bits() + 1, MPFR_RNDN);
  return sum.to_double() / 2.0;
}

bool Enclosure::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const BigFloat& value) const {
  return lo_ <= value && value <= hi_;
}

bool Enclosure::contains(const Enclosure& other) const {
  return lo_ <= other.lo_ && other.hi_ <= hi_;
}

bool Enclosure::overlaps(const Enclosure& other) const {
  return lo_ <= other.hi_ && other.lo_ <= hi_;
}

bool Enclosure::certainly_below(const Enclosure& other) const {
  return hi_ < other.lo_;
}

std::string Enclosure::lo_decimal(int digits) const {
  return lo_.to_decimal(digits, MPFR_RNDD);
}

std::string Enclosure::hi_decimal(int digits) const {
  return hi_.to_decimal(digits, MPFR_RNDU);
}

Enclosure operator-(const Enclosure& x) {
  const mpfr_prec_t bits = x.precision_bits();
  return Enclosure(apply(mpfr_neg, x.hi(), bits, MPFR_RNDD),
                   apply(mpfr_neg, x.lo(), bits, MPFR_RNDU));
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t bits = join_precision(a, b);
  return Enclosure(apply(mpfr_add, a.lo(), b.lo(), bits, MPFR_RNDD),
                   apply(mpfr_add, a.hi(), b.hi(), bits, MPFR_RNDU));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t bits = join_precision(a, b);
  return Enclosure(apply(mpfr_sub, a.lo(), b.hi(), bits, MPFR_RNDD),
                   apply(mpfr_sub, a.hi(), b.lo(), bits, MPFR_RNDU));
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  return corners(mpfr_mul, a, b);
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo().sign() <= 0 && b.hi().sign() >= 0) {
    throw DomainError("division by an enclosure containing zero");
  }
  return corners(mpfr_div, a, b);
}

// ------------------------------------------------------ elementary functions

Enclosure exp_at(const Enclosure& x, mpfr_prec_t bits) {
  BigFloat lo = apply(mpfr_exp, x.lo(), bits, MPFR_RNDD);
  BigFloat hi = apply(mpfr_exp, x.hi(), bits, MPFR_RNDU);
  check_finite(hi, "exp");
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure log_at(const Enclosure& x, mpfr_prec_t bits) {
  if (x.lo().sign() <= 0) {
    throw DomainError("log of an enclosure reaching zero or below");
  }
  return Enclosure(apply(mpfr_log, x.lo(), bits, MPFR_RNDD),
                   apply(mpfr_log, x.hi(), bits, MPFR_RNDU));
}

Enclosure sqrt_at(const Enclosure& x, mpfr_prec_t bits) {
  if (x.lo().sign() < 0) {
    throw DomainError("sqrt of a negative enclosure");
  }
  return Enclosure(apply(mpfr_sqrt, x.lo(), bits, MPFR_RNDD),
                   apply(mpfr_sqrt, x.hi(), bits, MPFR_RNDU));
}

Enclosure pow_at(const Enclosure& base, const Enclosure& exponent,
                 mpfr_prec_t bits) {
  if (base.lo().sign() <= 0) {
    throw DomainError("pow requires a positive base");
  }
  // exp turns an absolute error in its argument into a relative error of
  // the same size, so the argument carries extra bits for its own magnitude.
  const Enclosure log_base = log_at(base, bits + 32);
  const Enclosure probe = exponent * log_base;
  const long magnitude_bits =
      std::max<long>(0, mpfr_get_exp(probe.magnitude().get()));
  const mpfr_prec_t inner = bits + 32 + magnitude_bits;
  const Enclosure argument = exponent * log_at(base, inner);
  return exp_at(argument, bits);
}

namespace {

bool width_met(const Enclosure& r, double target, WidthScale scale) {
  const mpfr_prec_t bits = r.precision_bits();
  BigFloat allowed(bits);
  if (scale == WidthScale::kRelative) {
    mpfr_mul_d(allowed.get(), r.magnitude().get(), target, MPFR_RNDD);
  } else {
    mpfr_set_d(allowed.get(), target, MPFR_RNDD);
  }
  return r.width() <= allowed;
}

}  // namespace

Enclosure refine_to_policy(
    const std::function<Enclosure(mpfr_prec_t)>& compute,
    const PrecisionPolicy& policy, WidthScale scale, std::string_view what) {
  policy.validate();
  mpfr_prec_t bits = policy.initial_bits;
  std::optional<BigFloat> previous_width;
  while (true) {
    Enclosure r = compute(bits);
    if (width_met(r, policy.target_width, scale)) return r;
    BigFloat width = r.width();
    if (previous_width) {
      // Doubling the precision no longer halves the width: what is left
      // comes from the input interval itself.
      BigFloat half(previous_width->precision());
      mpfr_div_2ui(half.get(), previous_width->get(), 1, MPFR_RNDN);
      if (width > half) return r;
    }
    if (bits >= policy.max_bits) {
      throw PrecisionExhausted(std::string(what) +
                               ": target width not reached at " +
                               std::to_string(policy.max_bits) + " bits");
    }
    previous_width = std::move(width);
    bits = std::min<mpfr_prec_t>(bits * 2, policy.max_bits);
  }
}

Enclosure exp_enc(const Enclosure& x, const PrecisionPolicy& policy) {
  return refine_to_policy([&](mpfr_prec_t bits) { return exp_at(x, bits); }, policy,
                WidthScale::kRelative, "exp");
}

Enclosure log_enc(const Enclosure& x, const PrecisionPolicy& policy) {
  if (x.lo().sign() <= 0) {
    throw DomainError("log of an enclosure reaching zero or below");
  }
  return refine_to_policy([&](mpfr_prec_t bits) { return log_at(x, bits); }, policy,
                WidthScale::kAbsolute, "log");
}

Enclosure pow_enc(const Enclosure& base, const Enclosure& exponent,
                  const PrecisionPolicy& policy) {
  if (base.lo().sign() <= 0) {
    throw DomainError("pow requires a positive base");
  }
  return refine_to_policy(
      [&](mpfr_prec_t bits) { return pow_at(base, exponent, bits); }, policy,
      WidthScale::kRelative, "pow");
}

// -------------------------------------------------------- integer brackets

namespace {

mpz_class round_to_integer(const BigFloat& x, mpfr_rnd_t rnd) {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x.get(), rnd);
  return out;
}

}  // namespace

std::optional<mpz_class> unambiguous_ceil(const Enclosure& x) {
  mpz_class a = round_to_integer(x.lo(), MPFR_RNDU);
  if (a != round_to_integer(x.hi(), MPFR_RNDU)) return std::nullopt;
  return a;
}

std::optional<mpz_class> unambiguous_floor(const Enclosure& x) {
  mpz_class a = round_to_integer(x.lo(), MPFR_RNDD);
  if (a != round_to_integer(x.hi(), MPFR_RNDD)) return std::nullopt;
  return a;
}

std::optional<IntegerBracket> integer_bracket(const Enclosure& lower_endpoint,
                                              const Enclosure& upper_endpoint) {
  auto lo = unambiguous_ceil(lower_endpoint);
  if (!lo) return std::nullopt;
  auto hi = unambiguous_floor(upper_endpoint);
  if (!hi) return std::nullopt;
  return IntegerBracket{std::move(*lo), std::move(*hi)};
}

// ---------------------------------------------------------------- rationals

mpq_class parse_rational(std::string_view text) {
  auto fail = [&]() -> DomainError {
    return DomainError("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpq_class num = parse_rational(text.substr(0, slash));
    const mpq_class den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    const char c = text[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) --scale;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  if (i < text.size()) {
    const std::string exponent(text.substr(i + 1));
    if (exponent.empty() || exponent.size() > 6) throw fail();
    char* end = nullptr;
    const long e = std::strtol(exponent.c_str(), &end, 10);
    if (*end != '\0') throw fail();
    scale += e;
  }

  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  mpq_class out = scale >= 0 ? mpq_class(mantissa * power)
                             : mpq_class(mantissa, power);
  out.canonicalize();
  return out;
}

std::string format_rational(const mpq_class& value) {
  // Terminating iff the reduced denominator has no primes besides 2 and 5.
  mpz_class den = value.get_den();
  long twos = 0;
  long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_str();

  const long places = std::max(twos, fives);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(places));
  const mpz_class scaled = value.get_num() * power / value.get_den();
  if (places == 0) return scaled.get_str();

  mpz_class magnitude = abs(scaled);
  std::string body = magnitude.get_str();
  if (body.size() <= static_cast<std::size_t>(places)) {
    body.insert(0, static_cast<std::size_t>(places) + 1 - body.size(), '0');
  }
  body.insert(body.size() - static_cast<std::size_t>(places), ".");
  return (scaled < 0 ? "-" : "") + body;
}

}  // namespace heighttower
