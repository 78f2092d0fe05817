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

// Command-line front end: argument parsing, validation, dispatch and output
// rendering, kept apart from main() so tests can drive it in process.

#ifndef HEIGHTTOWER_TOOLS_CLI_HPP_
#define HEIGHTTOWER_TOOLS_CLI_HPP_

#include <gmpxx.h>

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heighttower/bigreal.hpp"

namespace heighttower::cli {

enum class Command { kConstruct, kCertify, kWitness, kHeight, kMeasure };
enum class OutputFormat { kJson, kCsv, kText };

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitExhausted = 2;
inline constexpr int kExitIo = 3;

struct CliConfig {
  Command command = Command::kConstruct;
  std::optional<mpq_class> gamma;
  std::optional<mpq_class> epsilon;
  std::optional<mpq_class> delta;
  std::optional<int> horizon;
  std::optional<mpq_class> eta;
  std::optional<int> level_cap;
  std::optional<std::string> poly;
  std::optional<mpz_class> p;
  std::optional<mpz_class> d;
  OutputFormat format = OutputFormat::kText;
  std::optional<std::string> output_path;
  PrecisionPolicy precision;
  std::optional<unsigned long> max_p_bits;
  std::optional<unsigned> threads;

  // Throws DomainError on an inconsistent combination of options.
  void validate() const;
};

// Parse argv into a config. Returns nullopt after printing help; throws
// DomainError for malformed or missing arguments. `env` looks up
// environment variables (HEIGHTTOWER_MAX_BITS).
std::optional<CliConfig> parse_arguments(
    const std::vector<std::string>& args, std::ostream& help_out,
    const std::function<std::optional<std::string>(const std::string&)>& env);

// Runs a validated config. Primary output goes to `out` (or the configured
// file); a single-line JSON error goes to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// parse_arguments + validate + run with uniform error reporting.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err,
               const std::function<std::optional<std::string>(const std::string&)>& env);

}  // namespace heighttower::cli

#endif  // HEIGHTTOWER_TOOLS_CLI_HPP_
