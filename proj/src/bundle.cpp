// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magdirac {

long long BundleConfig::chi_at(long long k) const {
  long long v = 0;
  for (std::size_t i = chi.size(); i-- > 0;) v = v * k + chi[i];
  return v;
}

void BundleConfig::validate() const {
  std::string errs;
  auto fail = [&](const std::string& e) { errs += (errs.empty() ? "" : "; ") + e; };
  if (m < 1) fail("m must be at least 1");
  if (!(epsilon > 0)) fail("epsilon must be positive");
  if (chi.empty()) fail("chi must be nonempty");
  else if (static_cast<int>(chi.size()) - 1 != m || chi.back() == 0) fail("chi must have degree m");
  if (type2_mu_min && !(*type2_mu_min > 0)) fail("type2_mu_min must be positive");
  if (type2_mu_min && !(epsilon < 0.5 * *type2_mu_min * *type2_mu_min)) fail("epsilon must lie below the Type-2 gap bound mu_min^2/2");
  if (errs.empty())
    for (long long k = kodaira_kmin; k < kodaira_kmin + 1000; ++k)
      if (chi_at(k) <= 0) {
        fail("chi(k) must be positive for k >= kodaira_kmin (fails at k=" + std::to_string(k) + ")");
        break;
      }
  for (const auto& [k, dims] : cohomology)
    for (long long d : dims)
      if (d < 0) fail("cohomology dimensions must be non-negative (k=" + std::to_string(k) + ")");
  for (const auto& [kp, entries] : laplace_data)
    for (const auto& e : entries)
      if (!(e.mu > 0) || e.multiplicity <= 0) fail("laplace_data entries need mu > 0 and multiplicity > 0");
  if (!errs.empty()) throw std::invalid_argument(errs);
}

namespace {

/// dim H^p for p = 0..m.
std::vector<long long> cohomology_at(const BundleConfig& cfg, long long k) {
  if (k >= cfg.kodaira_kmin) {
    std::vector<long long> d(cfg.m + 1, 0);
    d[0] = cfg.chi_at(k);
    return d;
  }
  auto it = cfg.cohomology.find(k);
  if (it == cfg.cohomology.end())
    throw std::domain_error("k=" + std::to_string(k) + " lies below kodaira_kmin and no cohomology data is configured");
  return it->second;
}

/// Tolerance on k + ε − m/2 − 1/h below which a level counts as kernel.
constexpr double kKernelTol = 1e-9;

double type1_value(const BundleConfig& cfg, double h, long long k, int p) {
  double x = static_cast<double>(k) + (cfg.epsilon - cfg.m / 2.0) - 1 / h;
  if (std::abs(x) < kKernelTol) return 0.0;
  double v = h * x;
  return p % 2 ? -v : v;
}

void sort_merge(std::vector<SpectralLine>& v) {
  std::sort(v.begin(), v.end(), [](const SpectralLine& a, const SpectralLine& b) { return a.value < b.value; });
  std::vector<SpectralLine> out;
  for (const auto& l : v) {
    if (l.multiplicity == 0) continue;
    if (!out.empty() && out.back().value == l.value) out.back().multiplicity += l.multiplicity;
    else out.push_back(l);
  }
  v = std::move(out);
}

/// Eigenvalues with |λ| ≤ bound.
std::vector<SpectralLine> collect(const BundleConfig& cfg, double h, double bound) {
  const double centre = 1 / h - cfg.epsilon + cfg.m / 2.0;
  const double half = bound / h;
  auto lo = static_cast<long long>(std::ceil(centre - half - 1e-12));
  auto hi = static_cast<long long>(std::floor(centre + half + 1e-12));
  std::vector<SpectralLine> out;
  for (long long k = lo; k <= hi; ++k) {
    auto dims = cohomology_at(cfg, k);
    for (int p = 0; p < static_cast<int>(dims.size()); ++p) {
      double v = type1_value(cfg, h, k, p);
      if (std::abs(v) <= bound * (1 + 1e-12)) out.push_back({v, dims[p]});
    }
  }
  for (const auto& [kp, entries] : cfg.laplace_data)
    for (const auto& e : entries) {
      auto [a, b] = type2_eigenvalue_pair(cfg, h, kp.first, kp.second, e.mu);
      if (std::abs(a) <= bound) out.push_back({a, e.multiplicity});
      if (std::abs(b) <= bound) out.push_back({b, e.multiplicity});
    }
  sort_merge(out);
  return out;
}

double eta_at(const BundleConfig& cfg, double h, double window) {
  return eta_erfc_sum(collect(cfg, h, window * std::sqrt(h)), h);
}

}  // namespace

std::vector<SpectralLine> type1_spectrum(const BundleConfig& cfg, double h, long long k_min, long long k_max) {
  if (!(h > 0)) throw std::invalid_argument("h must be positive");
  if (k_max < k_min) throw std::invalid_argument("empty k range");
  std::vector<SpectralLine> out;
  for (long long k = k_min; k <= k_max; ++k) {
    auto dims = cohomology_at(cfg, k);
    for (int p = 0; p < static_cast<int>(dims.size()); ++p)
      if (dims[p] != 0) out.push_back({type1_value(cfg, h, k, p), dims[p]});
  }
  sort_merge(out);
  return out;
}

std::pair<double, double> type2_eigenvalue_pair(const BundleConfig& cfg, double h, long long k, int p, double mu) {
  if (!(h > 0)) throw std::invalid_argument("h must be positive");
  const double eps = cfg.epsilon;
  double x = 2.0 * k + eps * (2 * p - cfg.m) - 2 / h + 1;
  double r = std::sqrt(x * x + 4 * mu * mu * eps);
  double base = p % 2 ? eps : -eps;  // (−1)^{p+1} ε
  return {h * (base + r) / 2, h * (base - r) / 2};
}

std::optional<double> type2_gap_constant(const BundleConfig& cfg) {
  if (!cfg.type2_mu_min) return std::nullopt;
  return (2 * *cfg.type2_mu_min * std::sqrt(cfg.epsilon) - cfg.epsilon) / 2;
}

SpectralSample weyl_count_and_kernel(const BundleConfig& cfg, double h, double c, double window) {
  cfg.validate();
  if (!(h > 0)) throw std::invalid_argument("h must be positive");
  if (!(c >= 0)) throw std::invalid_argument("c must be non-negative");
  if (auto gap = type2_gap_constant(cfg); gap && c >= *gap && cfg.laplace_data.empty())
    throw std::domain_error("c is too large for Type-2 exclusion and no laplace_data is configured");
  SpectralSample s;
  s.h = h;
  s.window = window;
  s.eigenvalues = collect(cfg, h, std::max(window * std::sqrt(h), c * h));
  for (const auto& l : s.eigenvalues) {
    if (std::abs(l.value) <= c * h * (1 + 1e-12)) s.N += l.multiplicity;
  }
  const double kres = 1 / h - cfg.epsilon + cfg.m / 2.0;
  const long long kk = std::llround(kres);
  if (std::abs(kres - kk) < kKernelTol) {
    for (long long d : cohomology_at(cfg, kk)) s.k_h += d;
  }
  s.eta_erfc = eta_erfc_sum(s.eigenvalues, h);
  // Crossing the resonance flips the sign of the kernel eigenvalues.
  const double delta = 1e-6;
  s.eta_jump = eta_at(cfg, 1 / (1 / h - delta), window) - eta_at(cfg, 1 / (1 / h + delta), window);
  return s;
}

double eta_erfc_sum(const std::vector<SpectralLine>& eigenvalues, double h) {
  if (!(h > 0)) throw std::invalid_argument("h must be positive");
  const double r = std::sqrt(h);
  double acc = 0;
  for (const auto& l : eigenvalues) {
    if (l.value == 0) continue;
    double e = std::erfc(std::abs(l.value) / r);
    acc += static_cast<double>(l.multiplicity) * (l.value > 0 ? e : -e);
  }
  return acc;
}

BundleStat parse_bundle_stat(const std::string& s) {
  if (s == "N") return BundleStat::N;
  if (s == "k_h") return BundleStat::k_h;
  if (s == "eta_jump") return BundleStat::eta_jump;
  throw std::invalid_argument("unknown statistic '" + s + "' (expected N, k_h or eta_jump)");
}

ScalingFit scaling_exponent_fit(const std::vector<SpectralSample>& samples, BundleStat stat) {
  const std::size_t n = samples.size();
  if (n < 10) throw std::invalid_argument("scaling fit needs at least 10 samples");
  std::vector<double> x(n), y(n);
  double hmin = samples[0].h, hmax = samples[0].h;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    double v = stat == BundleStat::N ? static_cast<double>(s.N) : stat == BundleStat::k_h ? static_cast<double>(s.k_h) : s.eta_jump;
    if (!(v > 0)) throw std::domain_error("nonpositive statistic in log fit at h=" + std::to_string(s.h));
    x[i] = std::log(1 / s.h);
    y[i] = std::log(v);
    hmin = std::min(hmin, s.h);
    hmax = std::max(hmax, s.h);
  }
  if (hmax < 10 * hmin * (1 - 1e-9)) throw std::invalid_argument("samples must span at least one decade in h");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  ScalingFit f;
  f.samples = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ssr += r * r;
  }
  f.stderr_ = std::sqrt(ssr / (n - 2) / sxx);
  return f;
}

}  // namespace magdirac
