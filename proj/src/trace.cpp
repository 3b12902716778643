// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/trace.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace magdirac {

namespace {

void check_params(const HeatParams& p) {
  if (p.lambda.empty()) throw std::invalid_argument("lambda must be nonempty");
  if (!(p.t > 0)) throw std::invalid_argument("heat time t must be positive");
  for (double l : p.lambda)
    if (!(l > 0)) throw std::invalid_argument("lambda entries must be positive");
}

double prefactor(const HeatParams& p) {
  double c = std::pow(4 * std::numbers::pi, -static_cast<double>(p.lambda.size())) / std::sqrt(p.t);
  for (double l : p.lambda) c *= l;
  return c;
}

/// Neumaier compensated accumulator.
struct Accumulator {
  double sum = 0, comp = 0;
  void add(double x) {
    double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double mehler_trace(const HeatParams& p) {
  check_params(p);
  double v = std::pow(4 * std::numbers::pi, -static_cast<double>(p.lambda.size())) / std::sqrt(p.t);
  for (double l : p.lambda) v *= l / std::tanh(p.t * l);
  return v;
}

LatticeSum landau_trace_sum(const HeatParams& p, double tail_tol, int max_cap) {
  check_params(p);
  const std::size_t m = p.lambda.size();
  const double pre = prefactor(p);
  // Outside the box τ_j ≤ T the sum is Π(S_j + r_j) − Π S_j with S_j the partial
  // sums and r_j = 2q^{T+1}/(1 − q) the geometric remainders.
  auto tail_at = [&](int T) {
    double full = 1, part = 1;
    for (double l : p.lambda) {
      double q = std::exp(-2 * p.t * l);
      double r = 2 * std::pow(q, T + 1) / (1 - q);
      double S = 1 + 2 * q * (1 - std::pow(q, T)) / (1 - q);
      full *= S + r;
      part *= S;
    }
    return pre * (full - part);
  };
  int T = 0;
  while (tail_at(T) > tail_tol) {
    T = T == 0 ? 1 : 2 * T;
    if (T > max_cap) throw std::runtime_error("landau_trace_sum: tail bound unachievable at the lattice cap");
  }
  for (int lo = T / 2; lo < T;) {
    int mid = (lo + T) / 2;
    if (tail_at(mid) <= tail_tol) T = mid; else lo = mid + 1;
  }
  Accumulator acc;
  std::vector<int> tau(m, 0);
  while (true) {
    double e = 0;
    int z = 0;
    for (std::size_t j = 0; j < m; ++j) {
      e += tau[j] * p.lambda[j];
      z += tau[j] != 0;
    }
    acc.add(std::ldexp(std::exp(-2 * p.t * e), z));
    std::size_t j = 0;
    while (j < m && ++tau[j] > T) tau[j++] = 0;
    if (j == m) break;
  }
  return {pre * acc.value(), tail_at(T), T};
}

TestFunction TestFunction::poly_gaussian(std::vector<double> coeffs, double t) {
  if (!(t > 0)) throw std::invalid_argument("gaussian parameter t must be positive");
  TestFunction f;
  f.name = "poly_gaussian";
  f.max_order = 64;
  f.eval = [coeffs, t](double s, int order) {
    // (P e^{−ts²})′ = (P′ − 2tsP) e^{−ts²}
    std::vector<double> P = coeffs;
    for (int k = 0; k < order; ++k) {
      std::vector<double> Q(P.size() + 1, 0.0);
      for (std::size_t i = 1; i < P.size(); ++i) Q[i - 1] += i * P[i];
      for (std::size_t i = 0; i < P.size(); ++i) Q[i + 1] -= 2 * t * P[i];
      P = std::move(Q);
    }
    const double g = std::exp(-t * s * s);
    if (g == 0) return 0.0;
    double v = 0;
    for (std::size_t i = P.size(); i-- > 0;) v = v * s + P[i];
    return v * g;
  };
  double C = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    C += std::abs(coeffs[k]) * (k == 0 ? 1.0 : std::pow(k / (t * std::numbers::e), k / 2.0));
  f.envelope = std::make_pair(C, t);
  return f;
}

TestFunction TestFunction::bump(double R) {
  if (!(R > 0)) throw std::invalid_argument("bump radius must be positive");
  TestFunction f;
  f.name = "bump";
  f.max_order = 0;
  f.support_radius = R;
  f.eval = [R](double s, int order) {
    if (order != 0) throw std::invalid_argument("bump test function only supplies order 0");
    double x = s / R;
    return std::abs(x) < 1 ? std::exp(-1 / (1 - x * x)) : 0.0;
  };
  return f;
}

namespace {

double integrate_half_line(const std::function<double(double)>& g, double upper) {
  double err = 0;
  if (std::isfinite(upper)) {
    if (upper <= 0) return 0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(g, 0.0, upper, 1e-14, &err);
  }
  boost::math::quadrature::exp_sinh<double> es;
  double v = es.integrate(g, 1e-14, &err);
  if (!std::isfinite(v)) throw std::runtime_error("quadrature did not converge");
  return v;
}

}  // namespace

double elementary_distribution_eval(const ElementaryDistribution& d, const TestFunction& phi) {
  if (d.a < 0 || d.c < 0) throw std::invalid_argument("a and c must be non-negative");
  if (!(d.Lambda > 0) || !(d.nu > 0)) throw std::invalid_argument("Lambda and nu must be positive");
  if (d.a > phi.max_order) throw std::invalid_argument("test function lacks derivatives of order " + std::to_string(d.a));
  const double A = 2 * d.nu * d.Lambda;
  // With s = ±√(v² + A): |s| s^b (s²−A)^{c−½} ds = ±^b (v²+A)^{b/2} v^{2c} dv.
  auto g = [&](double v) {
    double s = std::sqrt(v * v + A);
    double sb = (d.b % 2 == 0) ? 1.0 : -1.0;
    double f = phi.eval(s, d.a) + sb * phi.eval(-s, d.a);
    // Far out φ underflows before the weight overflows; avoid 0·∞.
    if (f == 0) return 0.0;
    return std::pow(s, d.b) * std::pow(v, 2 * d.c) * f;
  };
  double upper = std::isfinite(phi.support_radius)
                     ? (phi.support_radius * phi.support_radius > A ? std::sqrt(phi.support_radius * phi.support_radius - A) : 0.0)
                     : std::numeric_limits<double>::infinity();
  double v = integrate_half_line(g, upper);
  return d.a % 2 ? -v : v;
}

U0Result u0_evaluate(const TestFunction& phi, double nu, const std::vector<double>& mu, double Lambda_cap) {
  if (mu.empty() || !(nu > 0)) throw std::invalid_argument("nu must be positive and mu nonempty");
  for (double u : mu)
    if (!(u > 0)) throw std::invalid_argument("mu entries must be positive");
  if (!(Lambda_cap >= 0)) throw std::invalid_argument("Lambda_cap must be non-negative");
  const std::size_t m = mu.size();
  double c00 = std::pow(nu / (4 * std::numbers::pi), static_cast<double>(m));
  for (double u : mu) c00 *= u;

  // Degeneracies Σ_{μ·τ = Λ} 2^{Z_τ}, grouped by Λ up to rounding.
  std::map<double, long> levels;
  std::vector<int> tau(m, 0);
  std::function<void(std::size_t, double, int)> rec = [&](std::size_t j, double acc, int z) {
    if (j == m) {
      if (acc > 0) {
        auto it = levels.lower_bound(acc * (1 - 1e-12));
        if (it != levels.end() && it->first <= acc * (1 + 1e-12))
          it->second += 1L << z;
        else
          levels.emplace(acc, 1L << z);
      }
      return;
    }
    for (int k = 0; acc + k * mu[j] <= Lambda_cap * (1 + 1e-12); ++k) rec(j + 1, acc + k * mu[j], z + (k != 0));
  };
  rec(0, 0.0, 0);

  U0Result r;
  double integral = integrate_half_line([&](double s) { return phi.eval(s, 0) + phi.eval(-s, 0); }, phi.support_radius);
  Accumulator acc;
  acc.add(c00 * integral);
  for (const auto& [Lam, deg] : levels) acc.add(c00 * deg * elementary_distribution_eval({0, 0, 0, Lam, nu}, phi));
  r.value = acc.value();
  r.levels = static_cast<int>(levels.size());
  if (phi.envelope) {
    // |v_Λ(φ)| ≤ C√(2π/t) e^{−tνΛ}; split e^{−tνΛ} ≤ e^{−tν cap/2} e^{−tνΛ/2} above the cap.
    auto [C, t] = *phi.envelope;
    double bound = c00 * C * std::sqrt(2 * std::numbers::pi / t) * std::exp(-t * nu * Lambda_cap / 2);
    for (double u : mu) bound /= std::tanh(t * nu * u / 4);
    r.tail_bound = bound;
  } else if (std::isfinite(phi.support_radius)) {
    r.tail_bound = phi.support_radius * phi.support_radius <= 2 * nu * Lambda_cap ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace magdirac
