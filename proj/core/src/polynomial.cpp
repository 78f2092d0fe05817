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

#include "heighttower/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "heighttower/error.hpp"

namespace heighttower {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coefficients_.emplace_back(c);
  trim();
}

void IntPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) {
    coefficients_.pop_back();
  }
}

IntPolynomial IntPolynomial::radical(const mpz_class& p, unsigned long d) {
  std::vector<mpz_class> c(d + 1, 0);
  c[0] = -p;
  c[d] = 1;
  return IntPolynomial(std::move(c));
}

namespace {

DomainError parse_error(std::string_view text, const std::string& why) {
  return DomainError("cannot parse polynomial '" + std::string(text) +
                     "': " + why);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

IntPolynomial parse_dense(std::string_view text) {
  std::vector<mpz_class> coefficients;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view field = text.substr(start, comma - start);
    std::string_view digits = field;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      digits.remove_prefix(1);
    }
    if (!all_digits(digits)) throw parse_error(text, "bad coefficient");
    std::string owned(field[0] == '+' ? field.substr(1) : field);
    coefficients.emplace_back(owned, 10);
    start = comma + 1;
  }
  return IntPolynomial(std::move(coefficients));
}

IntPolynomial parse_human(std::string_view text) {
  std::vector<mpz_class> coefficients;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool first = true;
  while (i < n) {
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else if (!first) {
      throw parse_error(text, "expected '+' or '-'");
    }
    first = false;

    std::size_t digits_start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view digits = text.substr(digits_start, i - digits_start);
    bool has_x = false;
    unsigned long power = 0;
    if (i < n && text[i] == '*') {
      if (digits.empty()) throw parse_error(text, "'*' without coefficient");
      ++i;
      if (i >= n || text[i] != 'x') throw parse_error(text, "expected x");
    }
    if (i < n && text[i] == 'x') {
      has_x = true;
      power = 1;
      ++i;
      if (i < n && text[i] == '^') {
        ++i;
        const std::size_t e_start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        const std::string_view e = text.substr(e_start, i - e_start);
        if (e.empty() || e.size() > 6) throw parse_error(text, "bad exponent");
        power = std::stoul(std::string(e));
      }
    }
    if (digits.empty() && !has_x) throw parse_error(text, "empty term");

    mpz_class c = digits.empty() ? mpz_class(1)
                                 : mpz_class(std::string(digits), 10);
    if (negative) c = -c;
    if (coefficients.size() <= power) coefficients.resize(power + 1, 0);
    coefficients[power] += c;
  }
  if (first) throw parse_error(text, "empty input");
  return IntPolynomial(std::move(coefficients));
}

}  // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (static_cast<unsigned char>(c) > 127) {
      throw parse_error(text, "non-ASCII input");
    }
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) throw parse_error(text, "empty input");
  if (compact.find('x') != std::string::npos) return parse_human(compact);
  return parse_dense(compact);
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpz_class> c(coefficients_.size() - 1);
  for (std::size_t i = 1; i < coefficients_.size(); ++i) {
    c[i - 1] = coefficients_[i] * static_cast<unsigned long>(i);
  }
  return IntPolynomial(std::move(c));
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coefficients_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> c(coefficients_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_divexact(c[i].get_mpz_t(), coefficients_[i].get_mpz_t(), g.get_mpz_t());
  }
  return IntPolynomial(std::move(c));
}

std::pair<unsigned long, IntPolynomial> IntPolynomial::split_zero_roots() const {
  std::size_t k = 0;
  while (k < coefficients_.size() && coefficients_[k] == 0) ++k;
  return {k, IntPolynomial(std::vector<mpz_class>(
                 coefficients_.begin() + static_cast<long>(k),
                 coefficients_.end()))};
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

bool IntPolynomial::vanishes_at(const mpz_class& num, const mpz_class& den) const {
  // den^deg * f(num/den), evaluated with a running power of den.
  mpz_class acc = 0;
  mpz_class den_power = 1;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * num + *it * den_power;
    den_power *= den;
  }
  return acc == 0;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (long i = degree(); i >= 0; --i) {
    const mpz_class& c = coefficients_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpz_class magnitude = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    if (i == 0 || magnitude != 1) out += magnitude.get_str();
    if (i > 0) {
      if (magnitude != 1) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::string IntPolynomial::to_dense() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i > 0) out += ",";
    out += coefficients_[i].get_str();
  }
  return out;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<mpz_class> c(std::max(a.coefficients_.size(), b.coefficients_.size()), 0);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) c[i] += a.coefficients_[i];
  for (std::size_t i = 0; i < b.coefficients_.size(); ++i) c[i] += b.coefficients_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  return a + mpz_class(-1) * b;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coefficients_.size() + b.coefficients_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const mpz_class& k, const IntPolynomial& a) {
  std::vector<mpz_class> c(a.coefficients_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.coefficients_[i];
  return IntPolynomial(std::move(c));
}

namespace {

// lead(b)^(deg a - deg b + 1) * a = q * b + r.
std::pair<IntPolynomial, IntPolynomial> pseudo_divide(const IntPolynomial& a,
                                                      const IntPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {IntPolynomial(), a};
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<mpz_class> r(a.coefficients().begin(), a.coefficients().end());
  std::vector<mpz_class> q(r.size() - db, 0);
  const mpz_class& lb = b.leading();
  for (std::size_t k = r.size() - 1; k + 1 > db; --k) {
    const mpz_class top = r[k];
    // r <- lb * r - top * x^(k-db) * b ; q <- lb * q + top * x^(k-db)
    for (auto& c : r) c *= lb;
    for (auto& c : q) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k - db + j] -= top * b.coefficient(j);
    }
    q[k - db] += top;
    if (k == db) break;
  }
  r.resize(db);
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

}  // namespace

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  return pseudo_divide(a, b).second;
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = pseudo_remainder(x, y).primitive_part();
    x = std::move(y);
    y = std::move(r);
  }
  if (x.degree() == 0) return IntPolynomial{1};
  return x;
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = pseudo_divide(a, b);
  if (!r.is_zero()) throw DomainError("polynomial division is not exact");
  return q.primitive_part();
}

std::vector<IntPolynomial> squarefree_layers(const IntPolynomial& a) {
  std::vector<IntPolynomial> layers;
  IntPolynomial current = a.primitive_part();
  while (current.degree() >= 1) {
    IntPolynomial repeated = gcd(current, current.derivative());
    layers.push_back(divide_exact(current, repeated));
    current = std::move(repeated);
  }
  return layers;
}

}  // namespace heighttower
