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

#ifndef HEIGHTTOWER_ERROR_HPP_
#define HEIGHTTOWER_ERROR_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heighttower {

enum class ErrorKind {
  kDomain,
  kPrecisionExhausted,
  kIntervalExhausted,
  kSearchExhausted,
  kSizeCapExceeded,
};

std::string_view to_string(ErrorKind kind);

// Base of every failure raised by the library. Signals that are ordinary
// outcomes (an ambiguous integer bracket, an empty prime interval, an
// unreached witness) are returned as values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Tower level at which a construction failed, when known.
  std::optional<int> level() const { return level_; }
  void set_level(int level) { level_ = level; }

 private:
  ErrorKind kind_;
  std::optional<int> level_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error(ErrorKind::kPrecisionExhausted, what) {}
};

// No eligible prime in a certified bracket. The bracket travels as decimal
// text so this header stays free of GMP.
class IntervalExhausted : public Error {
 public:
  IntervalExhausted(const std::string& what, std::string lo, std::string hi)
      : Error(ErrorKind::kIntervalExhausted, what),
        lo_(std::move(lo)),
        hi_(std::move(hi)) {}

  const std::string& bracket_lo() const { return lo_; }
  const std::string& bracket_hi() const { return hi_; }

 private:
  std::string lo_;
  std::string hi_;
};

class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(const std::string& what)
      : Error(ErrorKind::kSearchExhausted, what) {}
};

class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& what)
      : Error(ErrorKind::kSizeCapExceeded, what) {}
};

}  // namespace heighttower

#endif  // HEIGHTTOWER_ERROR_HPP_
