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

#include "heighttower/error.hpp"

namespace heighttower {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain:
      return "DomainError";
    case ErrorKind::kPrecisionExhausted:
      return "PrecisionExhausted";
    case ErrorKind::kIntervalExhausted:
      return "IntervalExhausted";
    case ErrorKind::kSearchExhausted:
      return "SearchExhausted";
    case ErrorKind::kSizeCapExceeded:
      return "SizeCapExceeded";
  }
  return "Error";
}

}  // namespace heighttower
