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

// Acceptance suite. Runs the installed CLI and the library against
// independent oracles and prints one PASS/FAIL line per criterion.
//
// usage: acceptance <path-to-heighttower-cli>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bracket_oracle.hpp"
#include "heighttower/certify.hpp"
#include "heighttower/heights.hpp"
#include "heighttower/tower.hpp"
#include "series_oracle.hpp"
#include "soundness.hpp"

namespace heighttower::acceptance {
namespace {

using nlohmann::json;

struct CliRun {
  int exit_code = -1;
  std::string out;
  double seconds = 0;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

class Cli {
 public:
  explicit Cli(std::string path) : path_(std::move(path)) {}

  // Every run is remembered so the determinism criterion can replay it.
  CliRun run(const std::vector<std::string>& args) {
    CliRun result = execute(args);
    history_.emplace_back(args, result.out);
    return result;
  }

  // Replays every recorded command; returns the ones whose payload changed.
  std::vector<std::string> replay_mismatches() {
    std::vector<std::string> changed;
    for (const auto& [args, first] : history_) {
      if (execute(args).out != first) changed.push_back(join(args));
    }
    return changed;
  }

  std::size_t commands_run() const { return history_.size(); }

  static std::string join(const std::vector<std::string>& args) {
    std::string out;
    for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
    return out;
  }

 private:
  CliRun execute(const std::vector<std::string>& args) const {
    std::string command = shell_quote(path_);
    for (const auto& a : args) command += " " + shell_quote(a);
    command += " 2>/dev/null";
    CliRun result;
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
    const int status = pclose(pipe);
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
  }

  std::string path_;
  std::vector<std::pair<std::vector<std::string>, std::string>> history_;
};

// Collects failures for one criterion.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 6) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool passed() const { return !failed_ && checks_ > 0; }
  int checks() const { return checks_; }
  std::string failures() const {
    std::string out;
    for (const auto& f : failures_) out += "\n      - " + f;
    return out;
  }

 private:
  bool failed_ = false;
  int checks_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  int number;
  std::string title;
  bool passed;
  std::string summary;
  std::string failures;
};

std::string fixed(double seconds) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << seconds;
  return out.str();
}

std::string pairs_text(const json& levels, const char* key = nullptr) {
  std::string out;
  for (const auto& entry : levels) {
    const json& level = key ? entry.at(key) : entry;
    out += "(" + level.at("d").get<std::string>() + "," + level.at("p").get<std::string>() + ") ";
  }
  return out;
}

json parse_or_null(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return nullptr;
  }
}

// Re-derives each level by trial division inside an independently computed
// integer bracket, and compares with the CLI's levels.
void verify_levels_by_trial(const json& levels,
                            const std::function<oracle::IntRange(const mpz_class&)>& bracket_of,
                            Verdict& verdict) {
  std::vector<mpz_class> used;
  mpz_class previous_d = 0;
  for (const auto& level : levels) {
    const mpz_class d(level.at("d").get<std::string>());
    const mpz_class p(level.at("p").get<std::string>());
    const std::string where = "level " + std::to_string(level.at("index").get<int>());
    const mpz_class expected_d =
        oracle::next_prime_by_trial(previous_d == 0 ? mpz_class(2) : mpz_class(2 * previous_d), used);
    verdict.check(d == expected_d, where + ": d " + d.get_str() + " != oracle " + expected_d.get_str());
    used.push_back(d);
    const oracle::IntRange range = bracket_of(d);
    verdict.check(level.at("p_bracket").at("lo").get<std::string>() == range.lo.get_str() &&
                      level.at("p_bracket").at("hi").get<std::string>() == range.hi.get_str(),
                  where + ": bracket differs from oracle [" + range.lo.get_str() + ", " +
                      range.hi.get_str() + "]");
    const mpz_class expected_p = oracle::next_prime_by_trial(range.lo, used);
    verdict.check(expected_p <= range.hi, where + ": oracle finds no prime in bracket");
    verdict.check(p == expected_p, where + ": p " + p.get_str() + " != oracle " + expected_p.get_str());
    verdict.check(oracle::trial_division_is_prime(p) && oracle::trial_division_is_prime(d),
                  where + ": trial division rejects a prime");
    used.push_back(p);
    previous_d = d;
  }
}

Outcome criterion_delta_regression(Cli& cli) {
  Verdict v;
  const auto r = cli.run({"construct", "--gamma", "1", "--delta", "2", "--horizon", "5", "--format", "json"});
  v.check(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  v.check(r.seconds < 5.0, "runtime " + fixed(r.seconds) + " s >= 5 s");
  const json j = parse_or_null(r.out);
  std::string pairs;
  if (j.is_object() && j.contains("levels")) {
    const json& levels = j["levels"];
    pairs = pairs_text(levels);
    v.check(levels.size() == 5, "expected 5 levels");
    const std::vector<std::pair<std::string, std::string>> frozen = {
        {"2", "5"}, {"7", "53"}, {"17", "293"}, {"37", "1373"}, {"79", "6247"}};
    for (std::size_t i = 0; i < std::min<std::size_t>(levels.size(), frozen.size()); ++i) {
      v.check(levels[i]["d"] == frozen[i].first && levels[i]["p"] == frozen[i].second,
              "level " + std::to_string(i + 1) + " differs from the frozen table");
    }
    verify_levels_by_trial(levels, [](const mpz_class& d) { return oracle::power_bracket(d, 2); }, v);
  } else {
    v.check(false, "output is not a JSON object");
  }
  return {1, "construction regression, delta variant (gamma=1, delta=2, horizon 5)", v.passed(),
          pairs + "in " + fixed(r.seconds) + " s, " + std::to_string(v.checks()) + " checks",
          v.failures()};
}

Outcome criterion_general_regression(Cli& cli) {
  Verdict v;
  const auto r = cli.run({"construct", "--gamma", "1", "--epsilon", "1", "--horizon", "3", "--format", "json"});
  v.check(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  v.check(r.seconds < 5.0, "runtime " + fixed(r.seconds) + " s >= 5 s");
  const json j = parse_or_null(r.out);
  std::string pairs;
  if (j.is_object() && j.contains("levels")) {
    const json& levels = j["levels"];
    pairs = pairs_text(levels);
    const std::vector<std::pair<std::string, std::string>> frozen = {{"2", "5"}, {"7", "17"}, {"19", "79"}};
    v.check(levels.size() == frozen.size(), "expected 3 levels");
    for (std::size_t i = 0; i < std::min<std::size_t>(levels.size(), frozen.size()); ++i) {
      v.check(levels[i]["d"] == frozen[i].first && levels[i]["p"] == frozen[i].second,
              "level " + std::to_string(i + 1) + " differs from the frozen table");
    }
    // Bracket of [e^sqrt(d), 2 e^sqrt(d)] from rational series bounds.
    verify_levels_by_trial(
        levels, [](const mpz_class& d) { return oracle::exp_power_bracket(d, mpq_class(1, 2)); }, v);
    // And again through MPFR at 1024 bits.
    for (const auto& level : levels) {
      const mpz_class d(level["d"].get<std::string>());
      const mpz_class p(level["p"].get<std::string>());
      const Enclosure x = exp_at(sqrt_at(Enclosure::of(d, 1024), 1024), 1024);
      const auto bracket = integer_bracket(x, x * Enclosure::exact(2, 1024));
      v.check(bracket && bracket->lo <= p && p <= bracket->hi,
              "p = " + p.get_str() + " outside the 1024-bit bracket");
    }
  } else {
    v.check(false, "output is not a JSON object");
  }
  return {2, "construction regression, general variant (gamma=1, epsilon=1, horizon 3)", v.passed(),
          pairs + "in " + fixed(r.seconds) + " s, " + std::to_string(v.checks()) + " checks",
          v.failures()};
}

Outcome criterion_height_oracle() {
  Verdict v;
  int pairs = 0;
  double widest = 0;
  const auto sieve = oracle::eratosthenes(100);
  for (long p = 2; p < 100; ++p) {
    if (!sieve[p]) continue;
    for (unsigned long d : {2ul, 3ul, 5ul, 7ul}) {
      ++pairs;
      const Enclosure closed = radical_height(p, d);
      const Enclosure mahler = weil_height_from_minpoly(IntPolynomial::radical(p, d));
      const std::string where = "(p, d) = (" + std::to_string(p) + ", " + std::to_string(d) + ")";
      v.check(closed.overlaps(mahler), where + ": enclosures disjoint");
      v.check(closed.width_double() < 1e-10 && mahler.width_double() < 1e-10, where + ": width >= 1e-10");
      widest = std::max({widest, closed.width_double(), mahler.width_double()});
    }
  }
  v.check(mahler_measure(IntPolynomial::parse("x^2-2")).contains(mpq_class(2)), "M(x^2-2) misses 2");
  const Enclosure lehmer = mahler_measure(IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"));
  // Frozen from a 200-bit root-finding oracle.
  const mpq_class reference = parse_rational("1.1762808182599175065440703384740350506934");
  const mpq_class tolerance(1, 1000000000);
  v.check(lehmer.contains(reference), "Lehmer enclosure misses the oracle value");
  v.check(lehmer.width_double() < 1e-9, "Lehmer enclosure width >= 1e-9");
  v.check(mpfr_cmp_q(lehmer.lo().get(), mpq_class(reference - tolerance).get_mpq_t()) >= 0 &&
              mpfr_cmp_q(lehmer.hi().get(), mpq_class(reference + tolerance).get_mpq_t()) <= 0,
          "Lehmer enclosure not within 1e-9 of the oracle value");
  std::ostringstream widest_text;
  widest_text << widest;
  return {3, "height oracle agreement and Mahler regression", v.passed(),
          std::to_string(pairs) + " radical pairs overlap (widest " + widest_text.str() +
              "), M(x^2-2) contains 2, Lehmer M in [" + lehmer.lo_decimal(20) + ", " +
              lehmer.hi_decimal(20) + "]",
          v.failures()};
}

Outcome criterion_chain(Cli& cli) {
  Verdict v;
  int checked = 0;
  const std::vector<ConstructionParams> towers = {ConstructionParams::delta_variant(2, 5),
                                                  ConstructionParams::general(1, 1, 3)};
  for (const auto& tower : towers) {
    const auto levels = build_tower(tower);
    for (const char* gamma : {"0.25", "0.5", "1"}) {
      const auto params = ConstructionParams::general(parse_rational(gamma), tower.witness_epsilon(), 1);
      for (const auto& level : levels) {
        const LevelMetrics m = level_metrics(level, params);
        ++checked;
        // Both sides again from rational series bounds.
        const mpq_class d(level.d);
        const mpq_class g = parse_rational(gamma);
        const auto log_p = oracle::log_bounds(mpq_class(level.p), 192);
        const auto log_d = oracle::log_bounds(d, 192);
        const auto silverman = log_p / oracle::exact(2 * d) - log_d / oracle::exact(2 * (d - 1));
        const auto scaled = oracle::pow_bounds(d, g, 192) * silverman;
        const auto f_floor =
            ((log_p - log_d) * oracle::pow_bounds(d, g - 1, 192) - oracle::exact(1)) / oracle::exact(2);
        v.check(scaled.lo >= f_floor.hi && m.chain_holds(),
                "d = " + level.d.get_str() + ", gamma = " + gamma + ": chain fails");
      }
    }
  }
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"certify", "--gamma", "1", "--delta", "2", "--horizon", "5", "--format", "json"},
           {"certify", "--gamma", "1", "--epsilon", "1", "--horizon", "3", "--format", "json"}}) {
    const auto r = cli.run(args);
    const json j = parse_or_null(r.out);
    v.check(r.exit_code == 0 && j.is_object(), Cli::join(args) + " failed");
    if (!j.is_object()) continue;
    for (const auto& entry : j["levels"]) {
      v.check(entry["checks"]["chain_inequality"] == true,
              Cli::join(args) + ": report flags a chain failure");
    }
  }
  return {4, "chain inequality d^gamma * silverman_floor >= f_floor", v.passed(),
          std::to_string(checked) + " level/gamma combinations (gamma in {0.25, 0.5, 1}) plus report flags",
          v.failures()};
}

Outcome criterion_witness(Cli& cli) {
  Verdict v;
  auto params = ConstructionParams::delta_variant(2, 4);
  params.epsilon = parse_rational("0.9");
  const auto report = audit_report(params, parse_rational("0.5"));
  std::string b_text, a_text;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& m = report.levels[i].second;
    b_text += m.b.lo_decimal(6) + " ";
    a_text += m.a.lo_decimal(6) + " ";
    if (i == 0) continue;
    const auto& prev = report.levels[i - 1].second;
    v.check(m.b.certainly_below(prev.b), "b not strictly decreasing at level " + std::to_string(i + 1));
    v.check(prev.a.certainly_below(m.a), "a not strictly increasing at level " + std::to_string(i + 1));
  }
  // b_i against the series oracle: d^(gamma - epsilon - 1) log p.
  for (const auto& [level, m] : report.levels) {
    const auto b = oracle::pow_bounds(mpq_class(level.d), parse_rational("-0.9"), 160) *
                   oracle::log_bounds(mpq_class(level.p), 160);
    v.check(mpfr_cmp_q(m.b.lo().get(), b.hi.get_mpq_t()) <= 0 &&
                mpfr_cmp_q(m.b.hi().get(), b.lo.get_mpq_t()) >= 0,
            "b at level " + std::to_string(level.index) + " misses the oracle");
  }
  v.check(report.levels.size() == 4, "expected 4 levels");
  v.check(report.audit.b_decreasing_from == 1, "audit: b not decreasing from level 1");
  v.check(report.audit.a_monotone_from == 1, "audit: a not increasing from level 1");
  const auto search = witness_index(params, parse_rational("0.5"), 10);
  v.check(search.reached && search.index == 3, "witness_index(0.5) != 3");
  const auto r = cli.run({"witness", "--gamma", "1", "--delta", "2", "--epsilon", "0.9", "--eta", "0.5",
                          "--cap", "10", "--format", "json"});
  const json j = parse_or_null(r.out);
  v.check(r.exit_code == 0 && j.is_object() && j["index"] == 3, "CLI witness index != 3");
  return {5, "witness behavior (gamma=1, delta=2, epsilon=0.9)", v.passed(),
          "b = " + b_text + "strictly decreasing; a = " + a_text + "strictly increasing; witness index " +
              std::to_string(search.index),
          v.failures()};
}

Outcome criterion_small_gamma(Cli& cli) {
  Verdict v;
  const auto r = cli.run({"certify", "--gamma", "0.5", "--epsilon", "0.5", "--horizon", "8", "--format", "json"});
  v.check(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
  v.check(r.seconds < 120.0, "runtime " + fixed(r.seconds) + " s >= 120 s");
  const json j = parse_or_null(r.out);
  std::size_t p8_digits = 0;
  std::string methods;
  if (j.is_object() && j.contains("levels")) {
    const json& levels = j["levels"];
    v.check(levels.size() == 8, "expected 8 levels");
    for (const auto& entry : levels) {
      const json& level = entry["level"];
      const std::string where = "level " + std::to_string(level["index"].get<int>());
      for (const char* key : {"p_verdict", "d_verdict"}) {
        const std::string status = level[key]["status"].get<std::string>();
        v.check(status == "ProvablePrime" || status == "ProbablePrime", where + ": " + key + " " + status);
      }
      v.check(level.contains("primality"), where + ": primality method missing");
      methods += level["primality"].get<std::string>() + " ";
      const mpz_class d(level["d"].get<std::string>());
      const mpz_class p(level["p"].get<std::string>());
      const mpz_class lo(level["p_bracket"]["lo"].get<std::string>());
      const mpz_class hi(level["p_bracket"]["hi"].get<std::string>());
      v.check(lo <= p && p <= hi, where + ": p outside its bracket");
      // exp(d^(1 - gamma + epsilon/2)) = exp(d^(3/4)).
      const auto range = oracle::exp_power_bracket(d, mpq_class(3, 4));
      v.check(range.lo == lo && range.hi == hi, where + ": bracket differs from the series oracle");
      v.check(mpz_probab_prime_p(p.get_mpz_t(), 40) != 0, where + ": GMP rejects p");
      for (const char* check : {"identity_overlap", "chain_inequality", "floor_below_generator"}) {
        v.check(entry["checks"][check] == true, where + ": " + check + " false");
      }
    }
    if (!levels.empty()) p8_digits = levels.back()["level"]["p"].get<std::string>().size();
    v.check(p8_digits >= 24, "p_8 has only " + std::to_string(p8_digits) + " digits");
  } else {
    v.check(false, "output is not a JSON object");
  }
  return {6, "feasibility at small gamma (gamma=0.5, epsilon=0.5, horizon 8)", v.passed(),
          "completed in " + fixed(r.seconds) + " s, p_8 has " + std::to_string(p8_digits) +
              " digits, methods: " + methods,
          v.failures()};
}

Outcome criterion_soundness() {
  Verdict v;
  const auto elementary = testing::elementary_soundness_sweep(0xACCE97, 1000);
  const auto brackets = testing::bracket_probe_sweep(0xACCE98, 2000);
  v.check(elementary.checks == 1000 && elementary.violations == 0,
          std::to_string(elementary.violations) + " enclosure violations" +
              (elementary.failures.empty() ? "" : ": " + elementary.failures[0]));
  v.check(brackets.violations == 0,
          std::to_string(brackets.violations) + " bracket violations" +
              (brackets.failures.empty() ? "" : ": " + brackets.failures[0]));
  return {7, "soundness suite", v.passed(),
          std::to_string(elementary.checks) + " exp/log/pow checks against 4x-precision oracle, " +
              std::to_string(elementary.violations) + " violations; " + std::to_string(brackets.checks) +
              " bracket probes, " + std::to_string(brackets.violations) + " violations",
          v.failures()};
}

Outcome criterion_determinism(Cli& cli) {
  Verdict v;
  cli.run({"witness", "--gamma", "1", "--delta", "2", "--epsilon", "0.9", "--eta", "1e-9", "--cap", "4",
           "--format", "json"});
  cli.run({"certify", "--gamma", "1", "--delta", "2", "--horizon", "5", "--format", "csv"});
  cli.run({"height", "--p", "293", "--d", "17", "--format", "json"});
  cli.run({"measure", "--poly", "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "--format", "json"});
  const auto changed = cli.replay_mismatches();
  for (const auto& command : changed) v.check(false, "payload changed: " + command);
  v.check(cli.commands_run() > 0, "no commands recorded");
  return {8, "determinism of CLI payloads", v.passed(),
          std::to_string(cli.commands_run()) + " commands replayed, " + std::to_string(changed.size()) +
              " mismatches",
          v.failures()};
}

}  // namespace
}  // namespace heighttower::acceptance

int main(int argc, char** argv) {
  using namespace heighttower::acceptance;
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <heighttower-cli>\n";
    return 2;
  }
  Cli cli(argv[1]);
  std::vector<std::function<Outcome()>> criteria = {
      [&] { return criterion_delta_regression(cli); },
      [&] { return criterion_general_regression(cli); },
      [] { return criterion_height_oracle(); },
      [&] { return criterion_chain(cli); },
      [&] { return criterion_witness(cli); },
      [&] { return criterion_small_gamma(cli); },
      [] { return criterion_soundness(); },
      [&] { return criterion_determinism(cli); },
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion();
    } catch (const std::exception& e) {
      outcome = {0, "criterion raised", false, e.what(), ""};
    }
    failed += outcome.passed ? 0 : 1;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  criterion " << outcome.number
              << " [PRIMARY] " << outcome.title << ": " << outcome.summary << outcome.failures
              << std::endl;
  }
  std::cout << (failed == 0 ? "all 8 criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
