// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "magdirac/bundle.hpp"
#include "magdirac/io.hpp"

namespace magdirac {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Thrown with every validation problem found, not just the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// "log:a..b:n", "lin:a..b:n" or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);
/// Comma-separated rationals ("1,9/4", decimals allowed).
std::vector<Rational> parse_rational_list(const std::string& csv);
std::vector<double> parse_double_list(const std::string& csv);

/// Reads the bundle config; an empty object yields the defaults m=1, ε=1/4, χ(k)=k.
BundleConfig bundle_config_from_json(const Json& j);

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string subcommand;
  Json params;  ///< validated, typed values; rationals as "p/q"
  std::string output;  ///< empty means stdout
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;

  std::vector<Rational> rationals(const std::string& key) const;
  std::vector<double> doubles(const std::string& key) const;
};

/// Validates raw string options for a subcommand. Keys are option names
/// without leading dashes; flags carry the value "true".
RunConfig parse_config(const std::string& subcommand, const std::map<std::string, std::string>& raw);

/// Option names accepted by a subcommand, with a one-line description each.
std::vector<std::pair<std::string, std::string>> subcommand_options(const std::string& subcommand);
const std::vector<std::string>& subcommands();

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  Json measured;
};

struct Report {
  RunConfig config;
  std::vector<std::pair<std::string, Table>> tables;  ///< the first is the primary table
  std::vector<CheckResult> checks;
  Json extra;  ///< additional JSON payload (JSON output only)

  bool all_passed() const;
};

/// Shortest round-trip decimal.
std::string format_double(double x);

/// Writes the report and returns the exit code: 0 iff every check passed.
int emit_report(const Report& r);

}  // namespace magdirac
