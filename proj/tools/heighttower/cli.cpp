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

#include "heighttower/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "heighttower/certify.hpp"
#include "heighttower/error.hpp"
#include "heighttower/heights.hpp"
#include "heighttower/polynomial.hpp"
#include "heighttower/report_json.hpp"
#include "heighttower/tower.hpp"

namespace heighttower::cli {
namespace {

constexpr int kDefaultWitnessCap = 16;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string decimal_text(const mpq_class& q) { return format_rational(q); }

mpz_class parse_integer(const std::string& text, const char* what) {
  mpz_class value;
  const bool digits = !text.empty() &&
                      std::all_of(text.begin() + (text[0] == '-' ? 1 : 0), text.end(),
                                  [](char c) { return c >= '0' && c <= '9'; }) &&
                      text != "-";
  if (!digits || value.set_str(text, 10) != 0) {
    throw DomainError(std::string(what) + " must be an integer, got '" + text + "'");
  }
  return value;
}

long parse_positive_long(const std::string& text, const char* what) {
  const mpz_class value = parse_integer(text, what);
  if (value < 1 || !value.fits_slong_p()) {
    throw DomainError(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return value.get_si();
}

std::string interval_text(const Enclosure& x) {
  return "[" + x.lo_decimal(kReportDigits) + ", " + x.hi_decimal(kReportDigits) + "]";
}

ConstructionParams construction_params(const CliConfig& config, int horizon) {
  ConstructionParams params;
  params.gamma = config.gamma.value_or(mpq_class(1));
  params.epsilon = config.epsilon;
  params.delta = config.delta;
  params.horizon = horizon;
  params.precision = config.precision;
  if (config.max_p_bits) params.max_p_bits = *config.max_p_bits;
  if (config.threads) params.search.threads = *config.threads;
  params.validate();
  return params;
}

// ---- construct -----------------------------------------------------------

void render_construct(const ConstructionParams& params,
                      const std::vector<TowerLevel>& levels, OutputFormat format,
                      std::ostream& out) {
  switch (format) {
    case OutputFormat::kJson: {
      Json j;
      j["schema_version"] = CertificateReport::kSchemaVersion;
      j["params"] = to_json(params);
      Json rows = Json::array();
      for (const auto& level : levels) rows.push_back(to_json(level));
      j["levels"] = std::move(rows);
      out << serialize(j);
      break;
    }
    case OutputFormat::kCsv:
      out << "index,d,p,p_bracket_lo,p_bracket_hi,log_p_lo,log_p_hi,abs_degree,primality\n";
      for (const auto& level : levels) {
        out << level.index << ',' << level.d.get_str() << ',' << level.p.get_str() << ','
            << level.p_bracket.lo.get_str() << ',' << level.p_bracket.hi.get_str() << ','
            << level.log_p.lo_decimal(kReportDigits) << ','
            << level.log_p.hi_decimal(kReportDigits) << ',' << level.abs_degree.get_str()
            << ',' << to_string(level.p_verdict.method) << '\n';
      }
      break;
    case OutputFormat::kText:
      for (const auto& level : levels) {
        out << "level " << level.index << ": d = " << level.d.get_str()
            << ", p = " << level.p.get_str() << " (" << to_string(level.p_verdict.status)
            << ", " << to_string(level.p_verdict.method) << ")\n"
            << "  bracket [" << level.p_bracket.lo.get_str() << ", "
            << level.p_bracket.hi.get_str() << "]\n"
            << "  log p in " << interval_text(level.log_p) << "\n"
            << "  [K_i:Q] = " << level.abs_degree.get_str() << "\n";
      }
      break;
  }
}

// ---- certify -------------------------------------------------------------

std::string onset_text(const std::optional<int>& onset) {
  return onset ? std::to_string(*onset) : std::string("none");
}

void render_certify(const CertificateReport& report, OutputFormat format,
                    std::ostream& out) {
  switch (format) {
    case OutputFormat::kJson:
      out << serialize(to_json(report));
      break;
    case OutputFormat::kCsv:
      out << "index,d,p,log_p_lo,log_p_hi,a_lo,a_hi,b_lo,b_hi,silverman_floor_lo,"
             "silverman_floor_hi,f_floor_lo,f_floor_hi\n";
      for (const auto& [level, m] : report.levels) {
        out << level.index << ',' << level.d.get_str() << ',' << level.p.get_str();
        for (const Enclosure* e : {&level.log_p, &m.a, &m.b, &m.silverman_floor, &m.f_floor}) {
          out << ',' << e->lo_decimal(kReportDigits) << ',' << e->hi_decimal(kReportDigits);
        }
        out << '\n';
      }
      break;
    case OutputFormat::kText:
      for (const auto& [level, m] : report.levels) {
        out << "level " << level.index << ": d = " << level.d.get_str()
            << ", p = " << level.p.get_str() << " (" << to_string(level.p_verdict.method)
            << ")\n"
            << "  a               " << interval_text(m.a) << "\n"
            << "  b               " << interval_text(m.b) << "\n"
            << "  silverman_floor " << interval_text(m.silverman_floor) << "\n"
            << "  f_floor         " << interval_text(m.f_floor) << "\n"
            << "  checks: identity " << (m.identity_overlap() ? "ok" : "FAILED")
            << ", chain " << (m.chain_holds() ? "ok" : "FAILED") << ", generator "
            << (m.floor_below_generator() ? "ok" : "FAILED") << "\n";
      }
      out << "a increasing from level " << onset_text(report.audit.a_monotone_from) << "\n"
          << "b decreasing from level " << onset_text(report.audit.b_decreasing_from) << "\n"
          << "indeterminate comparisons " << report.audit.indeterminate_comparisons << "\n"
          << "witness below eta = " << decimal_text(report.eta) << ": level "
          << onset_text(report.witness_index) << "\n"
          << "primality: " << report.primality_summary.provable_prime << " provable, "
          << report.primality_summary.probable_prime << " probable\n";
      break;
  }
}

// ---- witness -------------------------------------------------------------

void render_witness(const WitnessSearch& result, const mpq_class& eta, int cap,
                    OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kJson: {
      Json j;
      j["eta"] = decimal_text(eta);
      j["cap"] = cap;
      j["reached"] = result.reached;
      j["index"] = result.index;
      j["b"] = to_json(result.b);
      out << serialize(j);
      break;
    }
    case OutputFormat::kCsv:
      out << "reached,index,b_lo,b_hi\n"
          << (result.reached ? "true" : "false") << ',' << result.index << ','
          << result.b.lo_decimal(kReportDigits) << ',' << result.b.hi_decimal(kReportDigits)
          << '\n';
      break;
    case OutputFormat::kText:
      if (result.reached) {
        out << "witness index " << result.index << ": b in " << interval_text(result.b)
            << " < " << decimal_text(eta) << "\n";
      } else {
        out << "not reached within " << cap << " levels; smallest b at level "
            << result.index << ": " << interval_text(result.b) << "\n";
      }
      break;
  }
}

// ---- height / measure ----------------------------------------------------

void render_value(const std::map<std::string, std::string>& inputs, const char* name,
                  const Enclosure& value, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kJson: {
      Json j;
      for (const auto& [key, text] : inputs) j[key] = text;
      j[name] = to_json(value);
      out << serialize(j);
      break;
    }
    case OutputFormat::kCsv: {
      for (const auto& [key, text] : inputs) out << key << ',';
      out << name << "_lo," << name << "_hi\n";
      for (const auto& [key, text] : inputs) out << '"' << text << "\",";
      out << value.lo_decimal(kReportDigits) << ',' << value.hi_decimal(kReportDigits) << '\n';
      break;
    }
    case OutputFormat::kText:
      out << name << " in " << interval_text(value) << "\n";
      break;
  }
}

// ---- errors --------------------------------------------------------------

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::kDomain ? kExitDomain : kExitExhausted;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const Json& extra = Json::object()) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  for (const auto& [key, value] : extra.items()) j[key] = value;
  err << j.dump() << "\n";
}

void write_output(const CliConfig& config, const std::string& payload, std::ostream& out) {
  if (!config.output_path) {
    out << payload;
    out.flush();
    if (!out) throw IoError("failed to write standard output");
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *config.output_path + "' for writing");
  file << payload;
  file.close();
  if (!file) throw IoError("failed to write '" + *config.output_path + "'");
}

}  // namespace

void CliConfig::validate() const {
  precision.validate();
  const bool tower_command = command == Command::kConstruct ||
                             command == Command::kCertify || command == Command::kWitness;
  if (tower_command) {
    if (delta) {
      if (gamma && *gamma != 1) {
        throw DomainError("--delta requires --gamma 1 (or --gamma omitted)");
      }
    } else {
      if (!gamma) throw DomainError("--gamma is required unless --delta is given");
      if (!epsilon) throw DomainError("--epsilon is required unless --delta is given");
    }
    if ((command == Command::kConstruct || command == Command::kCertify) && !horizon) {
      throw DomainError("--horizon is required");
    }
    if (horizon && (*horizon < 1 || *horizon > ConstructionParams::kMaxHorizon)) {
      throw DomainError("--horizon must lie in [1, " +
                        std::to_string(ConstructionParams::kMaxHorizon) + "]");
    }
    if (level_cap && (*level_cap < 1 || *level_cap > ConstructionParams::kMaxHorizon)) {
      throw DomainError("--cap must lie in [1, " +
                        std::to_string(ConstructionParams::kMaxHorizon) + "]");
    }
    if (command == Command::kWitness && !eta) throw DomainError("--eta is required");
    if (eta && *eta <= 0) throw DomainError("--eta must be positive");
    construction_params(*this, horizon.value_or(1));
  }
  if (command == Command::kHeight) {
    const bool radical = p.has_value() || d.has_value();
    if (radical && poly) throw DomainError("give either --poly or --p/--d, not both");
    if (radical && !(p && d)) throw DomainError("--p and --d must be given together");
    if (!radical && !poly) throw DomainError("height needs --poly or --p/--d");
  }
  if (command == Command::kMeasure && !poly) throw DomainError("--poly is required");
}

std::optional<CliConfig> parse_arguments(
    const std::vector<std::string>& args, std::ostream& help_out,
    const std::function<std::optional<std::string>(const std::string&)>& env) {
  CLI::App app{"Certified construction of radical towers Q(p_i^(1/d_i)) that are "
               "gamma-Northcott but not (gamma-epsilon)-Bogomolov.",
               "heighttower"};
  app.require_subcommand(1);

  std::map<std::string, std::string> text;
  std::string format = "text";
  std::string output;
  long initial_bits = 0, max_bits = 0, max_p_bits = 0, threads = -1;
  double target_width = 0;

  auto rational = [&](CLI::App* sub, const std::string& flag, const std::string& help) {
    sub->add_option("--" + flag, text[flag], help);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", output, "Write the payload to this file instead of stdout");
    sub->add_option("--initial-bits", initial_bits, "Starting working precision")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-bits", max_bits,
                    "Precision ceiling (default 65536, or HEIGHTTOWER_MAX_BITS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--target-width", target_width, "Enclosure width target")
        ->check(CLI::PositiveNumber);
  };
  auto tower = [&](CLI::App* sub) {
    rational(sub, "gamma", "Degree exponent gamma in (0, 1]");
    rational(sub, "epsilon", "Bogomolov gap epsilon > 0");
    rational(sub, "delta", "Power variant: p in [d^delta, 2 d^delta], gamma = 1");
    sub->add_option("--max-p-bits", max_p_bits, "Largest admissible bit length of p")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "Prime-search threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    common(sub);
  };

  auto* construct = app.add_subcommand("construct", "Build the tower levels (d_i, p_i)");
  auto* certify = app.add_subcommand("certify", "Build the tower and certify every metric");
  auto* witness = app.add_subcommand("witness", "Find the first level with b_i < eta");
  auto* height = app.add_subcommand("height", "Weil height of a number");
  auto* measure = app.add_subcommand("measure", "Mahler measure of an integer polynomial");
  for (auto* sub : {construct, certify}) {
    tower(sub);
    sub->add_option("--horizon", text["horizon"], "Number of levels");
  }
  rational(certify, "eta", "Witness threshold recorded in the report (default 0.5)");
  tower(witness);
  rational(witness, "eta", "Threshold eta > 0");
  witness->add_option("--cap", text["cap"], "Largest level to build (default 16)");
  height->add_option("--poly", text["poly"], "Minimal polynomial, e.g. \"x^3-2\" or \"-2,0,0,1\"");
  height->add_option("--p", text["p"], "Radicand of p^(1/d)");
  height->add_option("--d", text["d"], "Root degree of p^(1/d)");
  common(height);
  measure->add_option("--poly", text["poly"], "Integer polynomial")->required();
  common(measure);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    help_out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw DomainError(e.what());
  }

  CliConfig config;
  const CLI::App* chosen = app.get_subcommands().front();
  const std::map<const CLI::App*, Command> commands = {
      {construct, Command::kConstruct}, {certify, Command::kCertify},
      {witness, Command::kWitness},     {height, Command::kHeight},
      {measure, Command::kMeasure}};
  config.command = commands.at(chosen);

  auto given = [&](const std::string& flag) {
    return chosen->get_option_no_throw("--" + flag) != nullptr &&
           chosen->get_option("--" + flag)->count() > 0;
  };
  for (const char* flag : {"gamma", "epsilon", "delta", "eta"}) {
    if (!given(flag)) continue;
    const mpq_class value = parse_rational(text[flag]);
    if (std::string(flag) == "gamma") config.gamma = value;
    if (std::string(flag) == "epsilon") config.epsilon = value;
    if (std::string(flag) == "delta") config.delta = value;
    if (std::string(flag) == "eta") config.eta = value;
  }
  if (given("horizon")) config.horizon = static_cast<int>(std::min<long>(
      parse_positive_long(text["horizon"], "--horizon"), ConstructionParams::kMaxHorizon + 1));
  if (given("cap")) config.level_cap = static_cast<int>(std::min<long>(
      parse_positive_long(text["cap"], "--cap"), ConstructionParams::kMaxHorizon + 1));
  if (given("poly")) config.poly = text["poly"];
  if (given("p")) config.p = parse_integer(text["p"], "--p");
  if (given("d")) config.d = parse_integer(text["d"], "--d");
  config.format = format == "json" ? OutputFormat::kJson
                  : format == "csv" ? OutputFormat::kCsv
                                    : OutputFormat::kText;
  if (given("output")) config.output_path = output;

  if (const auto from_env = env("HEIGHTTOWER_MAX_BITS")) {
    config.precision.max_bits = parse_positive_long(*from_env, "HEIGHTTOWER_MAX_BITS");
  }
  if (given("max-bits")) config.precision.max_bits = max_bits;
  if (given("initial-bits")) config.precision.initial_bits = initial_bits;
  if (given("target-width")) config.precision.target_width = target_width;
  if (given("max-p-bits")) config.max_p_bits = static_cast<unsigned long>(max_p_bits);
  if (given("threads")) config.threads = static_cast<unsigned>(threads);
  return config;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream payload;
  int code = kExitOk;
  switch (config.command) {
    case Command::kConstruct: {
      const auto params = construction_params(config, *config.horizon);
      render_construct(params, build_tower(params), config.format, payload);
      break;
    }
    case Command::kCertify: {
      const auto params = construction_params(config, *config.horizon);
      render_certify(audit_report(params, config.eta.value_or(mpq_class(1, 2))),
                     config.format, payload);
      break;
    }
    case Command::kWitness: {
      const int cap = config.level_cap.value_or(kDefaultWitnessCap);
      const auto params = construction_params(config, config.horizon.value_or(1));
      const auto result = witness_index(params, *config.eta, cap);
      render_witness(result, *config.eta, cap, config.format, payload);
      if (!result.reached) {
        write_output(config, payload.str(), out);
        report_error(err, "NotReached",
                     "no level up to the cap has b below eta",
                     {{"cap", cap}, {"best_index", result.index}});
        return kExitExhausted;
      }
      break;
    }
    case Command::kHeight: {
      if (config.poly) {
        const auto f = IntPolynomial::parse(*config.poly);
        render_value({{"poly", f.to_string()}}, "height",
                     weil_height_from_minpoly(f, config.precision), config.format, payload);
      } else {
        render_value({{"p", config.p->get_str()}, {"d", config.d->get_str()}}, "height",
                     radical_height(*config.p, *config.d, config.precision), config.format,
                     payload);
      }
      break;
    }
    case Command::kMeasure: {
      const auto f = IntPolynomial::parse(*config.poly);
      render_value({{"poly", f.to_string()}}, "mahler_measure",
                   mahler_measure(f, config.precision), config.format, payload);
      break;
    }
  }
  write_output(config, payload.str(), out);
  return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const std::function<std::optional<std::string>(const std::string&)>& env) {
  try {
    const auto config = parse_arguments(args, out, env);
    if (!config) return kExitOk;
    config->validate();
    return run(*config, out, err);
  } catch (const IntervalExhausted& e) {
    Json extra = {{"bracket", {{"lo", e.bracket_lo()}, {"hi", e.bracket_hi()}}}};
    if (e.level()) extra["level"] = *e.level();
    report_error(err, std::string(to_string(e.kind())), e.what(), extra);
    return kExitExhausted;
  } catch (const Error& e) {
    Json extra = Json::object();
    if (e.level()) extra["level"] = *e.level();
    report_error(err, std::string(to_string(e.kind())), e.what(), extra);
    return exit_code_for(e.kind());
  } catch (const IoError& e) {
    report_error(err, "IOError", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return kExitDomain;
  }
}

}  // namespace heighttower::cli
