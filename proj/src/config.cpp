// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/config.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

namespace magdirac {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    // Allow "p/q" for float-valued options.
    try {
      return parse_rational(s).get_d();
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("not a number: '" + s + "'");
    }
  }
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::invalid_argument(join(errors, "; ")), errors_(std::move(errors)) {}

std::vector<double> parse_grid(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    auto parts = split(spec.substr(colon + 1), ':');
    auto dots = parts.empty() ? std::string::npos : parts[0].find("..");
    if ((kind != "log" && kind != "lin") || parts.size() != 2 || dots == std::string::npos)
      throw std::invalid_argument("grid spec must look like log:a..b:n or lin:a..b:n, got '" + spec + "'");
    double a = parse_double(parts[0].substr(0, dots)), b = parse_double(parts[0].substr(dots + 2));
    long n = parse_long(parts[1]);
    if (n < 1) throw std::invalid_argument("grid size must be positive in '" + spec + "'");
    if (kind == "log" && (!(a > 0) || !(b > 0))) throw std::invalid_argument("log grid endpoints must be positive in '" + spec + "'");
    std::vector<double> g(n);
    for (long i = 0; i < n; ++i) {
      double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      g[i] = kind == "log" ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
    }
    if (n > 1) g.back() = b;
    return g;
  }
  return parse_double_list(spec);
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  for (const auto& s : split(csv, ',')) out.push_back(parse_rational(s));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  for (const auto& s : split(csv, ',')) out.push_back(parse_double(s));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

BundleConfig bundle_config_from_json(const Json& j) {
  BundleConfig cfg;
  std::vector<std::string> errs;
  if (!j.is_object()) throw ConfigError({"bundle config must be a JSON object"});
  auto number = [&](const Json& v) { return v.is_string() ? parse_rational(v.get<std::string>()).get_d() : v.get<double>(); };
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "m") cfg.m = v.get<int>();
      else if (key == "epsilon") cfg.epsilon = number(v);
      else if (key == "chi") cfg.chi = v.get<std::vector<long long>>();
      else if (key == "kodaira_kmin") cfg.kodaira_kmin = v.get<long long>();
      else if (key == "type2_mu_min") cfg.type2_mu_min = number(v);
      else if (key == "cohomology")
        for (const auto& [k, dims] : v.items()) cfg.cohomology[std::stoll(k)] = dims.get<std::vector<long long>>();
      else if (key == "laplace_data")
        for (const auto& e : v) {
          auto& list = cfg.laplace_data[{e.at("k").get<long long>(), e.at("p").get<int>()}];
          for (const auto& x : e.at("entries")) list.push_back({number(x.at("mu")), x.at("multiplicity").get<long long>()});
        }
      else errs.push_back("bundle config: unknown key '" + key + "'");
    } catch (const std::exception& ex) {
      errs.push_back("bundle config: bad value for '" + key + "': " + ex.what());
    }
  }
  if (j.contains("m") && !j.contains("chi") && cfg.m != 1) errs.push_back("bundle config: 'chi' is required when m != 1");
  if (errs.empty()) {
    try {
      cfg.validate();
    } catch (const std::invalid_argument& ex) {
      for (const auto& e : split(ex.what(), ';')) errs.push_back("bundle config: " + std::string(e.substr(e.find_first_not_of(' '))));
    }
  }
  if (!errs.empty()) throw ConfigError(errs);
  return cfg;
}

namespace {

enum class Kind { integer, real, rationals, reals, grid, string, path, flag };

struct OptionSpec {
  std::string name;
  Kind kind;
  bool required;
  std::string fallback;  ///< default value, empty for none
  std::string help;
  /// Range check on the typed value; returns an error message or "".
  std::function<std::string(const Json&)> check = nullptr;
};

std::string positive(const Json& v) {
  if (v.is_array()) {
    for (const auto& x : v)
      if (!((x.is_string() ? parse_rational(x.get<std::string>()).get_d() : x.get<double>()) > 0)) return "entries must be positive";
    return "";
  }
  return v.get<double>() > 0 ? "" : "must be positive";
}
std::string nonnegative(const Json& v) { return v.get<double>() >= 0 ? "" : "must be non-negative"; }
auto int_range(long lo, long hi) {
  return [lo, hi](const Json& v) {
    long x = v.get<long>();
    return x >= lo && x <= hi ? std::string() : "must lie in " + std::to_string(lo) + ".." + std::to_string(hi);
  };
}

const std::map<std::string, std::vector<OptionSpec>>& schemas() {
  static const std::map<std::string, std::vector<OptionSpec>> s = {
      {"landau",
       {{"m", Kind::integer, true, "", "half dimension m", int_range(1, 6)},
        {"mu", Kind::rationals, true, "", "comma-separated positive rationals mu_j", positive},
        {"h", Kind::real, true, "", "semiclassical parameter h", positive},
        {"lambda-max", Kind::real, true, "", "spectral window |lambda| <= lambda-max", positive},
        {"oracle-cutoff", Kind::integer, false, "", "cross-check against a truncated-basis diagonalization", int_range(2, 64)}}},
      {"heat-trace",
       {{"m", Kind::integer, true, "", "half dimension m", int_range(1, 6)},
        {"lambda", Kind::reals, true, "", "comma-separated positive lambda_j", positive},
        {"t-grid", Kind::grid, true, "", "heat times (grid spec)", positive},
        {"tail-tol", Kind::real, false, "1e-13", "certified tail tolerance for the lattice sum", positive}}},
      {"u0",
       {{"nu", Kind::real, true, "", "nu", positive},
        {"mu", Kind::reals, true, "", "comma-separated positive mu_j", positive},
        {"phi", Kind::string, false, "gaussian:t=1", "test function: gaussian:t=T[,p=c0;c1;...] or bump:R=R"},
        {"lambda-cap", Kind::real, true, "", "largest Landau level Lambda summed", nonnegative}}},
      {"bnf",
       {{"input", Kind::path, true, "", "model symbol JSON"},
        {"N", Kind::integer, true, "", "target weight", int_range(1, 64)},
        {"verify", Kind::flag, false, "false", "recompute the per-weight defect profile"}}},
      {"koszul",
       {{"input", Kind::path, true, "", "context JSON with a chain element under \"u\""},
        {"op", Kind::string, false, "hodge", "hodge, laplacian or a differential name (w_x0, i_x, wt_d, ...)"},
        {"weight", Kind::integer, false, "", "target weight for hodge (default: min weight of u)", int_range(0, 64)}}},
      {"bundle",
       {{"config", Kind::path, false, "", "bundle config JSON (defaults when omitted)"},
        {"h-grid", Kind::grid, false, "", "h samples (grid spec)", positive},
        {"k-range", Kind::string, false, "", "resonant samples 1/h = k + eps - m/2 for k in a..b[:n]"},
        {"c", Kind::real, true, "", "window half-width in units of h", nonnegative},
        {"eta-window", Kind::real, false, "6", "collect eigenvalues with |lambda| <= eta-window*sqrt(h) for the eta sums", positive}}},
  };
  return s;
}

const std::vector<OptionSpec> common_options = {
    {"out", Kind::string, false, "", "output path (stdout when omitted)"},
    {"format", Kind::string, false, "", "csv or json (default from the output extension, else csv)"},
    {"seed", Kind::integer, false, "0", "seed for randomized checks", int_range(0, 2147483647)},
};

Json typed_value(Kind kind, const std::string& s) {
  switch (kind) {
    case Kind::integer: return parse_long(s);
    case Kind::real: return parse_double(s);
    case Kind::rationals: {
      Json a = Json::array();
      for (const auto& q : parse_rational_list(s)) a.push_back(format_rational(q));
      return a;
    }
    case Kind::reals: return parse_double_list(s);
    case Kind::grid: return parse_grid(s);
    case Kind::path:
      if (!std::filesystem::exists(s)) throw std::invalid_argument("no such file: '" + s + "'");
      return s;
    case Kind::flag:
      if (s != "true" && s != "false") throw std::invalid_argument("flag takes no value");
      return s == "true";
    case Kind::string: return s;
  }
  return s;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : schemas()) out.push_back(k);
    return out;
  }();
  return v;
}

std::vector<std::pair<std::string, std::string>> subcommand_options(const std::string& subcommand) {
  auto it = schemas().find(subcommand);
  if (it == schemas().end()) throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& o : it->second) out.emplace_back(o.name, o.help);
  for (const auto& o : common_options) out.emplace_back(o.name, o.help);
  return out;
}

std::vector<Rational> RunConfig::rationals(const std::string& key) const {
  std::vector<Rational> out;
  for (const auto& v : params.at(key)) out.push_back(parse_rational(v.get<std::string>()));
  return out;
}

std::vector<double> RunConfig::doubles(const std::string& key) const { return params.at(key).get<std::vector<double>>(); }

RunConfig parse_config(const std::string& subcommand, const std::map<std::string, std::string>& raw) {
  auto it = schemas().find(subcommand);
  if (it == schemas().end())
    throw ConfigError({"unknown subcommand '" + subcommand + "' (expected one of " + join(subcommands(), ", ") + ")"});
  std::vector<OptionSpec> specs = it->second;
  specs.insert(specs.end(), common_options.begin(), common_options.end());

  RunConfig rc;
  rc.subcommand = subcommand;
  rc.params = Json::object();
  std::vector<std::string> errs;
  for (const auto& [key, _] : raw)
    if (std::none_of(specs.begin(), specs.end(), [&](const OptionSpec& o) { return o.name == key; }))
      errs.push_back("--" + key + ": unknown option for '" + subcommand + "'");
  for (const auto& o : specs) {
    auto r = raw.find(o.name);
    std::string value = r != raw.end() ? r->second : o.fallback;
    if (value.empty()) {
      if (o.required) errs.push_back("--" + o.name + ": required");
      continue;
    }
    try {
      Json v = typed_value(o.kind, value);
      if (o.check)
        if (std::string e = o.check(v); !e.empty()) {
          errs.push_back("--" + o.name + ": " + e);
          continue;
        }
      rc.params[o.name] = v;
    } catch (const std::exception& ex) {
      errs.push_back("--" + o.name + ": " + ex.what());
    }
  }

  // Cross-field checks.
  auto has = [&](const char* k) { return rc.params.contains(k); };
  if ((subcommand == "landau" && has("m") && has("mu") && rc.params["mu"].size() != rc.params["m"].get<std::size_t>()) ||
      (subcommand == "heat-trace" && has("m") && has("lambda") && rc.params["lambda"].size() != rc.params["m"].get<std::size_t>()))
    errs.push_back("--" + std::string(subcommand == "landau" ? "mu" : "lambda") + ": must have exactly m entries");
  if (subcommand == "bundle" && !has("h-grid") && !has("k-range") && raw.count("h-grid") == 0 && raw.count("k-range") == 0)
    errs.push_back("--h-grid or --k-range: one is required");
  if (subcommand == "bundle" && has("config")) {
    try {
      std::ifstream f(rc.params["config"].get<std::string>());
      Json j = Json::parse(f);
      bundle_config_from_json(j);
    } catch (const ConfigError& ex) {
      errs.insert(errs.end(), ex.errors().begin(), ex.errors().end());
    } catch (const std::exception& ex) {
      errs.push_back("--config: " + std::string(ex.what()));
    }
  }

  if (has("out")) rc.output = rc.params["out"].get<std::string>();
  if (has("format")) {
    std::string f = rc.params["format"].get<std::string>();
    if (f == "csv") rc.format = OutputFormat::csv;
    else if (f == "json") rc.format = OutputFormat::json;
    else errs.push_back("--format: must be csv or json");
  } else if (rc.output.size() >= 5 && rc.output.substr(rc.output.size() - 5) == ".json") {
    rc.format = OutputFormat::json;
  }
  if (has("seed")) rc.seed = rc.params["seed"].get<std::uint64_t>();
  if (!errs.empty()) throw ConfigError(errs);
  return rc;
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_csv(std::ostream& os, const Report& r, const std::string& name, const Table& t) {
  os << "# schema_version=" << kSchemaVersion << " tool=magdirac " << kToolVersion << " subcommand=" << r.config.subcommand
     << " table=" << name << "\n";
  os << join(t.columns, ",") << "\n";
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(csv_cell(v));
    os << join(cells, ",") << "\n";
  }
}

Json table_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
      // JSON has no inf or NaN; those are written as strings.
      o[t.columns[i]] = row[i].is_number_float() && !std::isfinite(row[i].get<double>()) ? Json(format_double(row[i].get<double>())) : row[i];
    rows.push_back(o);
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

Json checks_json(const Report& r) {
  Json a = Json::array();
  for (const auto& c : r.checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}});
  return a;
}

}  // namespace

int emit_report(const Report& r) {
  const RunConfig& rc = r.config;
  auto now = std::chrono::system_clock::now();
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  auto open = [](const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw std::runtime_error("cannot open output file '" + path + "'");
    return f;
  };
  if (rc.format == OutputFormat::json) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["metadata"] = {{"tool", "magdirac"}, {"version", kToolVersion}, {"subcommand", rc.subcommand},
                       {"config", rc.params}, {"generated_unix", secs}};
    Json tables = Json::object();
    for (const auto& [name, t] : r.tables) tables[name] = table_json(t);
    doc["tables"] = tables;
    doc["checks"] = checks_json(r);
    if (!r.extra.is_null())
      for (const auto& [k, v] : r.extra.items()) doc[k] = v;
    doc["all_passed"] = r.all_passed();
    if (rc.output.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      auto f = open(rc.output);
      *f << doc.dump(2) << "\n";
    }
  } else {
    Table checks{{"check", "passed", "measured"}, {}};
    for (const auto& c : r.checks) checks.rows.push_back({c.name, c.passed ? "pass" : "fail", c.measured.dump()});
    std::vector<std::pair<std::string, Table>> all = r.tables;
    if (!r.checks.empty()) all.emplace_back("checks", checks);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (rc.output.empty()) {
        write_csv(std::cout, r, all[i].first, all[i].second);
        continue;
      }
      std::filesystem::path p(rc.output);
      if (i > 0) p.replace_filename(p.stem().string() + "." + all[i].first + p.extension().string());
      auto f = open(p.string());
      write_csv(*f, r, all[i].first, all[i].second);
    }
  }
  if (!r.all_passed()) {
    Json failed = Json::array();
    for (const auto& c : r.checks)
      if (!c.passed) failed.push_back({{"name", c.name}, {"measured", c.measured}});
    std::cerr << Json{{"failed_checks", failed}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace magdirac
