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

// Mahler measure through certified root inclusion.
//
// For a squarefree g of degree n with approximate roots z_1..z_n put
// W_i = g(z_i) / (lead(g) * prod_{j != i} (z_i - z_j)). The matrix
// diag(z) - 1 W^T has characteristic polynomial g / lead(g), so by
// Gershgorin on its columns every root lies in some disc |z - z_i| <= n|W_i|
// and a connected union of m discs holds exactly m roots. Root moduli, and
// with them max(1, |root|), are bounded per connected component.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "heighttower/error.hpp"
#include "heighttower/heights.hpp"

namespace heighttower {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Complex {
  BigFloat re;
  BigFloat im;

  explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {}
};

// Round-to-nearest complex arithmetic for the approximation phase.
class ApproxArith {
 public:
  explicit ApproxArith(mpfr_prec_t bits)
      : bits_(bits), t1_(bits), t2_(bits), t3_(bits), t4_(bits), t5_(bits) {}

  Complex make() const { return Complex(bits_); }

  void set(Complex& out, const Complex& a) const {
    mpfr_set(out.re.get(), a.re.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), a.im.get(), MPFR_RNDN);
  }

  void mul(Complex& out, const Complex& a, const Complex& b) {
    mpfr_mul(t1_.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2_.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(t1_.get(), t1_.get(), t2_.get(), MPFR_RNDN);
    mpfr_mul(t2_.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_fma(out.im.get(), a.im.get(), b.re.get(), t2_.get(), MPFR_RNDN);
    mpfr_set(out.re.get(), t1_.get(), MPFR_RNDN);
  }

  // Returns false when b is zero.
  bool div(Complex& out, const Complex& a, const Complex& b) {
    BigFloat& denom = t3_;
    mpfr_sqr(denom.get(), b.re.get(), MPFR_RNDN);
    mpfr_fma(denom.get(), b.im.get(), b.im.get(), denom.get(), MPFR_RNDN);
    if (denom.sign() == 0) return false;
    BigFloat& re = t4_;
    mpfr_mul(re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_fma(re.get(), a.im.get(), b.im.get(), re.get(), MPFR_RNDN);
    BigFloat& im = t5_;
    mpfr_mul(im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_fms(im.get(), a.im.get(), b.re.get(), im.get(), MPFR_RNDN);
    mpfr_div(out.re.get(), re.get(), denom.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), im.get(), denom.get(), MPFR_RNDN);
    return true;
  }

  void sub(Complex& out, const Complex& a, const Complex& b) const {
    mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  }

  void add(Complex& out, const Complex& a, const Complex& b) const {
    mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  }

  // log2 |a|, robust against values outside double range.
  double log2_abs(const Complex& a) {
    mpfr_hypot(t3_.get(), a.re.get(), a.im.get(), MPFR_RNDN);
    return log2_of(t3_);
  }

  static double log2_of(const BigFloat& x) {
    if (x.sign() == 0) return -INFINITY;
    long exponent = 0;
    const double mantissa = mpfr_get_d_2exp(&exponent, x.get(), MPFR_RNDN);
    return std::log2(std::fabs(mantissa)) + static_cast<double>(exponent);
  }

 private:
  mpfr_prec_t bits_;
  BigFloat t1_;
  BigFloat t2_;
  BigFloat t3_;
  BigFloat t4_;
  BigFloat t5_;
};

double log2_abs(const mpz_class& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log2(std::fabs(mantissa)) + static_cast<double>(exponent);
}

std::vector<Complex> initial_roots(const IntPolynomial& g, mpfr_prec_t bits) {
  const long n = g.degree();
  // Circle through the geometric mean of the root moduli.
  const double log2_radius =
      (log2_abs(g.coefficient(0)) - log2_abs(g.leading())) / static_cast<double>(n);
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    Complex z(bits);
    mpfr_set_d(z.re.get(), std::cos(angle), MPFR_RNDN);
    mpfr_set_d(z.im.get(), std::sin(angle), MPFR_RNDN);
    BigFloat scale(bits);
    mpfr_set_d(scale.get(), log2_radius, MPFR_RNDN);
    mpfr_exp2(scale.get(), scale.get(), MPFR_RNDN);
    mpfr_mul(z.re.get(), z.re.get(), scale.get(), MPFR_RNDN);
    mpfr_mul(z.im.get(), z.im.get(), scale.get(), MPFR_RNDN);
    roots.push_back(std::move(z));
  }
  return roots;
}

// Aberth-Ehrlich iteration in place, Gauss-Seidel style. A root is frozen
// once its correction is below the working precision or its residual is
// within the rounding noise of evaluating g there; frozen roots still repel
// the others.
void aberth(const IntPolynomial& g, std::vector<Complex>& roots,
            mpfr_prec_t bits) {
  const std::size_t n = roots.size();
  ApproxArith ar(bits);
  std::vector<Complex> coefficients;
  std::vector<BigFloat> magnitudes;
  coefficients.reserve(n + 1);
  magnitudes.reserve(n + 1);
  for (const auto& c : g.coefficients()) {
    Complex z(bits);
    mpfr_set_z(z.re.get(), c.get_mpz_t(), MPFR_RNDN);
    magnitudes.emplace_back(53);
    mpfr_set_z(magnitudes.back().get(), c.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(magnitudes.back().get(), magnitudes.back().get(), MPFR_RNDN);
    coefficients.push_back(std::move(z));
  }

  Complex p = ar.make(), dp = ar.make(), newton = ar.make(), sum = ar.make();
  Complex diff = ar.make(), inv = ar.make(), tmp = ar.make(), step = ar.make();
  Complex one = ar.make();
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  BigFloat modulus(53), noise(53);
  const double tolerance_log2 = -static_cast<double>(bits) + 4.0;
  const double noise_slack_log2 = std::log2(4.0 * static_cast<double>(n + 1)) -
                                  static_cast<double>(bits);
  const int max_iterations = 60 + 8 * static_cast<int>(n) +
                             static_cast<int>(bits / 8);
  std::vector<bool> frozen(n, false);

  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    bool converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (frozen[k]) continue;
      Complex& z = roots[k];
      // Horner for g and g', plus sum |c_i| |z|^i for the noise floor.
      ar.set(p, coefficients[n]);
      mpfr_set_zero(dp.re.get(), 1);
      mpfr_set_zero(dp.im.get(), 1);
      mpfr_hypot(modulus.get(), z.re.get(), z.im.get(), MPFR_RNDN);
      mpfr_set(noise.get(), magnitudes[n].get(), MPFR_RNDN);
      for (std::size_t i = n; i-- > 0;) {
        ar.mul(tmp, dp, z);
        ar.add(dp, tmp, p);
        ar.mul(tmp, p, z);
        ar.add(p, tmp, coefficients[i]);
        mpfr_fma(noise.get(), noise.get(), modulus.get(), magnitudes[i].get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) {
        frozen[k] = true;
        continue;
      }
      converged = false;
      if (ar.log2_abs(p) <= ApproxArith::log2_of(noise) + noise_slack_log2) {
        frozen[k] = true;
        continue;
      }
      if (!ar.div(newton, p, dp)) {
        // Stationary point: nudge off it.
        mpfr_nextabove(z.re.get());
        mpfr_mul_d(z.im.get(), z.im.get(), 1.0 + 1e-8, MPFR_RNDN);
        continue;
      }
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        ar.sub(diff, z, roots[j]);
        if (!ar.div(inv, one, diff)) continue;
        ar.add(sum, sum, inv);
      }
      // step = N / (1 - N * S)
      ar.mul(tmp, newton, sum);
      ar.sub(tmp, one, tmp);
      if (!ar.div(step, newton, tmp)) ar.set(step, newton);
      ar.sub(z, z, step);

      const double scale = std::max(0.0, ar.log2_abs(z));
      if (ar.log2_abs(step) <= tolerance_log2 + scale) frozen[k] = true;
    }
    if (converged) break;
  }
}

// ---- rigorous part -------------------------------------------------------

BigFloat op(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t),
            const BigFloat& a, const BigFloat& b, mpfr_prec_t bits,
            mpfr_rnd_t rnd) {
  BigFloat out(bits);
  f(out.get(), a.get(), b.get(), rnd);
  return out;
}

// Smallest |x| over the interval.
BigFloat mignitude(const Enclosure& x, mpfr_prec_t bits) {
  BigFloat out(bits);
  if (x.lo().sign() > 0) {
    mpfr_set(out.get(), x.lo().get(), MPFR_RNDD);
  } else if (x.hi().sign() < 0) {
    mpfr_neg(out.get(), x.hi().get(), MPFR_RNDD);
  }
  return out;
}

// Lower / upper bounds of sqrt(a^2 + b^2) from per-axis bounds.
BigFloat modulus_lower(const BigFloat& a, const BigFloat& b, mpfr_prec_t bits) {
  BigFloat out(bits);
  mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDD);
  return out;
}

BigFloat modulus_upper(const BigFloat& a, const BigFloat& b, mpfr_prec_t bits) {
  BigFloat out(bits);
  mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

struct ComplexInterval {
  Enclosure re;
  Enclosure im;
};

ComplexInterval multiply(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Upper bound on |g(z)| for an exact point z.
BigFloat residual_upper(const IntPolynomial& g, const Complex& z,
                        mpfr_prec_t bits) {
  const ComplexInterval point{Enclosure(z.re, z.re), Enclosure(z.im, z.im)};
  const std::size_t n = static_cast<std::size_t>(g.degree());
  ComplexInterval acc{Enclosure::of(g.coefficient(n), bits),
                      Enclosure::exact(0, bits)};
  for (std::size_t i = n; i-- > 0;) {
    acc = multiply(acc, point);
    acc.re = acc.re + Enclosure::of(g.coefficient(i), bits);
  }
  return modulus_upper(acc.re.magnitude(), acc.im.magnitude(), bits);
}

// Lower bound on |z - w| for exact points.
BigFloat distance_lower(const Complex& z, const Complex& w, mpfr_prec_t bits) {
  const Enclosure dr = Enclosure(z.re, z.re) - Enclosure(w.re, w.re);
  const Enclosure di = Enclosure(z.im, z.im) - Enclosure(w.im, w.im);
  return modulus_lower(mignitude(dr, bits), mignitude(di, bits), bits);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Enclosure of prod max(1, |root|) over the roots of squarefree g, or
// nullopt if the approximations could not be certified at this precision.
std::optional<Enclosure> certified_radial_product(
    const IntPolynomial& g, const std::vector<Complex>& roots,
    mpfr_prec_t bits) {
  const std::size_t n = roots.size();
  std::vector<std::vector<BigFloat>> distance(n);
  std::vector<BigFloat> radius;
  radius.reserve(n);
  const BigFloat lead_abs = [&] {
    BigFloat out(bits);
    mpfr_set_z(out.get(), g.leading().get_mpz_t(), MPFR_RNDD);
    mpfr_abs(out.get(), out.get(), MPFR_RNDD);
    return out;
  }();

  for (std::size_t i = 0; i < n; ++i) {
    distance[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      distance[i].push_back(j == i ? BigFloat(bits)
                                   : distance_lower(roots[i], roots[j], bits));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    BigFloat denominator = lead_abs;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      denominator = op(mpfr_mul, denominator, distance[i][j], bits, MPFR_RNDD);
    }
    if (denominator.sign() <= 0) return std::nullopt;
    BigFloat r = op(mpfr_div, residual_upper(g, roots[i], bits), denominator,
                    bits, MPFR_RNDU);
    mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    radius.push_back(std::move(r));
  }

  DisjointSets components(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const BigFloat reach = op(mpfr_add, radius[i], radius[j], bits, MPFR_RNDU);
      if (distance[i][j] <= reach) components.join(i, j);
    }
  }

  BigFloat one(bits);
  mpfr_set_ui(one.get(), 1, MPFR_RNDN);
  BigFloat lo = one;
  BigFloat hi = one;
  for (std::size_t root = 0; root < n; ++root) {
    if (components.find(root) != root) continue;
    std::optional<BigFloat> min_modulus;
    std::optional<BigFloat> max_modulus;
    unsigned long members = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (components.find(i) != root) continue;
      ++members;
      const BigFloat abs_re = [&] {
        BigFloat a(bits);
        mpfr_abs(a.get(), roots[i].re.get(), MPFR_RNDN);
        return a;
      }();
      const BigFloat abs_im = [&] {
        BigFloat a(bits);
        mpfr_abs(a.get(), roots[i].im.get(), MPFR_RNDN);
        return a;
      }();
      BigFloat low = op(mpfr_sub, modulus_lower(abs_re, abs_im, bits),
                        radius[i], bits, MPFR_RNDD);
      BigFloat high = op(mpfr_add, modulus_upper(abs_re, abs_im, bits),
                         radius[i], bits, MPFR_RNDU);
      if (!min_modulus || low < *min_modulus) min_modulus = std::move(low);
      if (!max_modulus || high > *max_modulus) max_modulus = std::move(high);
    }
    BigFloat factor_lo = *min_modulus < one ? one : *min_modulus;
    BigFloat factor_hi = *max_modulus < one ? one : *max_modulus;
    mpfr_pow_ui(factor_lo.get(), factor_lo.get(), members, MPFR_RNDD);
    mpfr_pow_ui(factor_hi.get(), factor_hi.get(), members, MPFR_RNDU);
    lo = op(mpfr_mul, lo, factor_lo, bits, MPFR_RNDD);
    hi = op(mpfr_mul, hi, factor_hi, bits, MPFR_RNDU);
  }
  if (!lo.is_finite() || !hi.is_finite()) return std::nullopt;
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure linear_radial_product(const IntPolynomial& g, mpfr_prec_t bits) {
  // Single root -c0/c1.
  mpq_class root(g.coefficient(0), g.coefficient(1));
  root.canonicalize();
  root = abs(root);
  if (root < 1) root = 1;
  return Enclosure::of(root, bits);
}

// Tracks one squarefree factor across precision levels so its root
// approximations are reused.
class RadialFactor {
 public:
  explicit RadialFactor(IntPolynomial g) : g_(std::move(g)) {}

  std::optional<Enclosure> at(mpfr_prec_t bits) {
    if (g_.degree() == 1) return linear_radial_product(g_, bits);
    if (roots_.empty()) {
      roots_ = initial_roots(g_, bits);
    } else {
      for (auto& z : roots_) {
        mpfr_prec_round(z.re.get(), bits, MPFR_RNDN);
        mpfr_prec_round(z.im.get(), bits, MPFR_RNDN);
      }
    }
    aberth(g_, roots_, bits);
    return certified_radial_product(g_, roots_, bits);
  }

 private:
  IntPolynomial g_;
  std::vector<Complex> roots_;
};

}  // namespace

Enclosure mahler_measure(const IntPolynomial& f, const PrecisionPolicy& policy) {
  policy.validate();
  if (f.degree() < 1) throw DomainError("mahler_measure needs degree >= 1");

  // Zero roots contribute max(1, 0) = 1.
  const IntPolynomial nonzero_part = f.split_zero_roots().second;
  std::vector<RadialFactor> factors;
  for (auto& layer : squarefree_layers(nonzero_part)) {
    factors.emplace_back(std::move(layer));
  }
  const mpz_class lead = abs(f.leading());

  mpfr_prec_t bits = policy.initial_bits;
  while (true) {
    std::optional<Enclosure> product = Enclosure::of(lead, bits);
    for (auto& factor : factors) {
      auto radial = factor.at(bits);
      if (!radial) {
        product.reset();
        break;
      }
      *product = *product * *radial;
    }
    if (product) {
      BigFloat allowed(bits);
      mpfr_mul_d(allowed.get(), product->hi().get(), policy.target_width,
                 MPFR_RNDD);
      if (product->width() <= allowed) return *product;
    }
    if (bits >= policy.max_bits) {
      throw PrecisionExhausted("mahler_measure: roots of " + f.to_string() +
                               " not certified at " +
                               std::to_string(policy.max_bits) + " bits");
    }
    bits = std::min<mpfr_prec_t>(bits * 2, policy.max_bits);
  }
}

}  // namespace heighttower
