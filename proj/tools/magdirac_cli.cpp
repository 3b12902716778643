// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "magdirac/bnf.hpp"
#include "magdirac/bundle.hpp"
#include "magdirac/config.hpp"
#include "magdirac/io.hpp"
#include "magdirac/koszul.hpp"
#include "magdirac/landau.hpp"
#include "magdirac/trace.hpp"

using namespace magdirac;

namespace {

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return Json::parse(f);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

Report run_landau(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  auto mu = rc.rationals("mu");
  double h = rc.params["h"].get<double>();
  Table t{{"eigenvalue", "multiplicity", "tau", "sign"}, {}};
  for (const auto& l : landau_levels(mu, h, rc.params["lambda-max"].get<double>()))
    t.rows.push_back({l.eigenvalue, l.multiplicity, join_ints(l.tau), static_cast<int>(l.sign)});
  r.tables.emplace_back("spectrum", t);
  if (rc.params.contains("oracle-cutoff")) {
    OracleReport o = landau_oracle(mu, h, rc.params["oracle-cutoff"].get<int>());
    Table ot{{"value", "total_dim", "reliable_dim"}, {}};
    for (const auto& c : o.clusters) ot.rows.push_back({c.value, c.total_dim, c.reliable_dim});
    r.tables.emplace_back("oracle", ot);
    r.checks.push_back({"oracle_agrees", o.pass,
                        {{"max_deviation", o.max_deviation}, {"mismatches", o.mismatches}, {"kernel_dim", o.kernel_dim}}});
  }
  return r;
}

Report run_heat_trace(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  double tol = rc.params["tail-tol"].get<double>();
  Table t{{"t", "mehler", "lattice_sum", "tail_bound", "lattice_cap", "rel_diff"}, {}};
  double worst = 0;
  for (double tt : rc.doubles("t-grid")) {
    HeatParams p{rc.doubles("lambda"), tt};
    double m = mehler_trace(p);
    LatticeSum s = landau_trace_sum(p, tol * m);
    double rel = std::abs(s.value - m) / m;
    worst = std::max(worst, rel);
    t.rows.push_back({tt, m, s.value, s.tail_bound, s.lattice_cap, rel});
  }
  r.tables.emplace_back("heat_trace", t);
  r.checks.push_back({"lattice_matches_mehler", worst <= 1e-10, {{"max_rel_diff", worst}}});
  return r;
}

/// gaussian:t=T[,p=c0;c1;...] or bump:R=R
TestFunction parse_phi(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ',');) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  if (kind == "gaussian") {
    std::vector<double> p{1.0};
    if (kv.count("p")) {
      std::string s = kv["p"];
      std::replace(s.begin(), s.end(), ';', ',');
      p = parse_double_list(s);
    }
    return TestFunction::poly_gaussian(p, kv.count("t") ? std::stod(kv["t"]) : 1.0);
  }
  if (kind == "bump") return TestFunction::bump(kv.count("R") ? std::stod(kv["R"]) : 1.0);
  throw std::invalid_argument("unknown test function '" + kind + "'");
}

Report run_u0(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  std::string spec = rc.params["phi"].get<std::string>();
  TestFunction phi = [&] {
    try {
      return parse_phi(spec);
    } catch (const std::exception& e) {
      throw ConfigError({std::string("--phi: ") + e.what()});
    }
  }();
  double nu = rc.params["nu"].get<double>();
  auto mu = rc.doubles("mu");
  U0Result u = u0_evaluate(phi, nu, mu, rc.params["lambda-cap"].get<double>());
  r.tables.emplace_back("u0", Table{{"value", "tail_bound", "levels"}, {{u.value, u.tail_bound, u.levels}}});
  // For φ = e^{−ts²} the sum is √π times the Mehler trace at λ_j = νμ_j.
  if (spec.rfind("gaussian", 0) == 0 && spec.find("p=") == std::string::npos) {
    HeatParams hp{{}, phi.envelope->second};
    for (double x : mu) hp.lambda.push_back(nu * x);
    double ratio = u.value / mehler_trace(hp);
    double tol = 1e-10 + u.tail_bound / mehler_trace(hp);
    r.checks.push_back({"ratio_to_mehler_is_sqrt_pi", std::abs(ratio - std::sqrt(std::numbers::pi)) <= tol, {{"ratio", ratio}}});
  }
  return r;
}

Report run_bnf(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  ModelSymbol d1 = model_from_json(read_json(rc.params["input"].get<std::string>()));
  int N = rc.params["N"].get<int>();
  std::vector<std::string> errs;
  if (d1.ctx.caps.weight_cap < N + 2)
    errs.push_back("N=" + std::to_string(N) + " needs Nw >= " + std::to_string(N + 2) + " in the input (found " +
                   std::to_string(d1.ctx.caps.weight_cap) + ")");
  try {
    d1.validate();
  } catch (const std::invalid_argument& e) {
    errs.push_back(e.what());
  }
  if (!errs.empty()) throw ConfigError(errs);
  NormalFormResult nf = birkhoff_normal_form(d1, N);
  r.tables.emplace_back("summary", Table{{"achieved_weight", "steps", "min_weight_a"}, {{nf.achieved_weight, nf.steps, nf.min_weight_a}}});
  r.extra = Json{{"f", to_json(nf.f)}, {"a", to_json(nf.a, d1.ctx.caps)}, {"omega", to_json(nf.omega, d1.ctx.caps)}};
  if (rc.params.value("verify", false)) {
    auto profile = verify_normal_form(d1, nf);
    Table t{{"weight", "max_abs_defect"}, {}};
    double worst = 0;
    for (int w = 0; w <= d1.ctx.caps.weight_cap; ++w) {
      double v = profile.count(w) ? profile.at(w) : 0.0;
      t.rows.push_back({w, v});
      if (w <= N) worst = std::max(worst, v);
    }
    r.tables.emplace_back("defect_profile", t);
    r.checks.push_back({"defect_vanishes_through_N", worst == 0, {{"max_abs_defect", worst}}});
  }
  return r;
}

Report run_koszul(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  Json in = read_json(rc.params["input"].get<std::string>());
  ModelSymbol model = model_from_json(in);
  const KoszulContext& ctx = model.ctx;
  Json uj = in;
  uj["terms"] = in.at("u");
  ChainElement u = chain_from_json(uj).truncated(ctx.caps);
  std::string op = rc.params["op"].get<std::string>();
  if (op == "hodge") {
    int w = rc.params.contains("weight") ? rc.params["weight"].get<int>() : (u.is_zero() ? 0 : u.min_weight());
    HodgeResult h = hodge_decompose(u, w, ctx);
    bool exact = hodge_recompose(h, ctx) == u;
    r.tables.emplace_back("hodge", Table{{"weight", "harmonic_terms", "b_terms", "g_terms", "residual_terms", "recomposes"},
                                         {{w, h.harmonic.terms().size(), h.b.terms().size(), h.g.terms().size(),
                                           h.residual.terms().size(), exact}}});
    r.extra = Json{{"harmonic", to_json(h.harmonic, ctx.caps)}, {"b", to_json(h.b, ctx.caps)},
                   {"g", to_json(h.g, ctx.caps)}, {"residual", to_json(h.residual, ctx.caps)}};
    r.checks.push_back({"hodge_recomposes", exact, {{"weight", w}}});
  } else {
    ChainElement out = op == "laplacian" ? twisted_laplacian0(u, ctx) : apply_differential(parse_differential(op), u, ctx);
    out = out.truncated(ctx.caps);
    r.tables.emplace_back("result", Table{{"op", "terms", "max_abs"}, {{op, out.terms().size(), out.max_abs()}}});
    r.extra = Json{{"result", to_json(out, ctx.caps)}};
  }
  // Randomized nilpotency property on the flat context: i_x i_x = 0 and w_x w_x = 0.
  std::mt19937_64 rng(rc.seed);
  std::uniform_int_distribution<int> coef(-5, 5), var(0, 2 * (2 * ctx.m() + 1) - 1), wedge(0, (1 << (2 * ctx.m() + 1)) - 1);
  ChainElement e(ctx.m());
  for (int k = 0; k < 8; ++k) e.add(static_cast<Wedge>(wedge(rng)), Poly::variable(var(rng), QComplex(coef(rng))));
  bool nil = apply_differential(Differential::i_x, apply_differential(Differential::i_x, e, ctx), ctx).is_zero() &&
             apply_differential(Differential::w_x, apply_differential(Differential::w_x, e, ctx), ctx).is_zero();
  r.checks.push_back({"random_nilpotency", nil, {{"seed", rc.seed}}});
  return r;
}

std::vector<double> resonant_hs(const BundleConfig& cfg, const std::string& spec) {
  auto dots = spec.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("--k-range must look like a..b[:n]");
  auto colon = spec.find(':', dots);
  long a = std::stol(spec.substr(0, dots));
  long b = std::stol(spec.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
  if (a < 1 || b < a) throw std::invalid_argument("--k-range needs 1 <= a <= b");
  std::vector<long> ks;
  if (colon == std::string::npos) {
    for (long k = a; k <= b; ++k) ks.push_back(k);
  } else {
    long n = std::stol(spec.substr(colon + 1));
    for (double x : parse_grid("log:" + std::to_string(a) + ".." + std::to_string(b) + ":" + std::to_string(n))) {
      long k = std::lround(x);
      if (ks.empty() || ks.back() != k) ks.push_back(k);
    }
  }
  std::vector<double> hs;
  for (long k : ks) hs.push_back(1 / (k + cfg.epsilon - cfg.m / 2.0));
  return hs;
}

Report run_bundle(const RunConfig& rc) {
  Report r{rc, {}, {}, {}};
  BundleConfig cfg = rc.params.contains("config") ? bundle_config_from_json(read_json(rc.params["config"].get<std::string>()))
                                                  : BundleConfig{};
  std::vector<double> hs = rc.params.contains("h-grid") ? rc.doubles("h-grid") : resonant_hs(cfg, rc.params["k-range"].get<std::string>());
  double c = rc.params["c"].get<double>();
  double window = rc.params["eta-window"].get<double>();
  std::vector<SpectralSample> samples;
  Table t{{"h", "N", "k_h", "eta_erfc", "eta_jump"}, {}};
  for (double h : hs) {
    samples.push_back(weyl_count_and_kernel(cfg, h, c, window));
    const auto& s = samples.back();
    t.rows.push_back({s.h, s.N, s.k_h, s.eta_erfc, s.eta_jump});
  }
  r.tables.emplace_back("samples", t);
  Table fit{{"stat", "slope", "stderr", "samples"}, {}};
  for (auto [name, stat] : {std::pair{"N", BundleStat::N}, std::pair{"k_h", BundleStat::k_h}, std::pair{"eta_jump", BundleStat::eta_jump}}) {
    try {
      ScalingFit f = scaling_exponent_fit(samples, stat);
      fit.rows.push_back({name, f.slope, f.stderr_, f.samples});
    } catch (const std::exception& ex) {
      std::cerr << "fit for " << name << " skipped: " << ex.what() << "\n";
    }
  }
  if (!fit.rows.empty()) r.tables.emplace_back("fit", fit);
  return r;
}

std::string describe(const std::string& name) {
  static const std::map<std::string, std::string> d = {
      {"landau", "exact model Landau spectrum, optionally checked by diagonalization"},
      {"heat-trace", "Mehler heat trace against the certified Landau lattice sum"},
      {"u0", "leading trace coefficient u0 on a test function"},
      {"bnf", "Birkhoff normal form of a model symbol"},
      {"koszul", "Koszul differentials, Laplacian and Hodge decomposition of a chain"},
      {"bundle", "circle-bundle Weyl counts, kernels, eta sums and scaling fits"},
  };
  return d.at(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magdirac: magnetic Dirac operator spectra, normal forms and trace experiments"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->set_help_flag("--help", "Print this help message and exit");
    subs[name] = sub;
    for (const auto& [opt, help] : subcommand_options(name)) {
      if (opt == "verify") {
        sub->add_flag_callback("--" + opt, [&raw, name, opt = opt] { raw[name][opt] = "true"; }, help);
      } else {
        sub->add_option_function<std::string>("--" + opt, [&raw, name, opt = opt](const std::string& v) { raw[name][opt] = v; }, help);
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse problem is a configuration error.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) name = n;
  try {
    RunConfig rc = parse_config(name, raw[name]);
    Report r = name == "landau"       ? run_landau(rc)
               : name == "heat-trace" ? run_heat_trace(rc)
               : name == "u0"         ? run_u0(rc)
               : name == "bnf"        ? run_bnf(rc)
               : name == "koszul"     ? run_koszul(rc)
                                      : run_bundle(rc);
    return emit_report(r);
  } catch (const ConfigError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
