// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace magdirac {

struct HeatParams {
  std::vector<double> lambda;  ///< λ_j = μ_j ν_p
  double t = 1;
};

/// (4π)^{−m} t^{−1/2} Π λ_j / tanh(tλ_j).
double mehler_trace(const HeatParams& p);

struct LatticeSum {
  double value = 0;
  double tail_bound = 0;
  int lattice_cap = 0;  ///< per-coordinate bound on τ_j
};

/// (4π)^{−m} t^{−1/2} Πλ_j Σ_τ 2^{Z_τ} e^{−2t τ·λ} with a certified tail ≤ tail_tol.
LatticeSum landau_trace_sum(const HeatParams& p, double tail_tol, int max_cap = 100000);

/// A test function with closed-form derivatives.
struct TestFunction {
  std::string name;
  std::function<double(double s, int order)> eval;
  int max_order = 0;
  /// |φ(s)| ≤ C e^{−t s²/2} when known.
  std::optional<std::pair<double, double>> envelope;
  double support_radius = std::numeric_limits<double>::infinity();

  /// P(s) e^{−t s²} with P given by ascending coefficients.
  static TestFunction poly_gaussian(std::vector<double> coeffs, double t);
  /// exp(−1/(1 − (s/R)²)) on |s| < R; only order 0 is available.
  static TestFunction bump(double R);
};

struct ElementaryDistribution {
  int a = 0;
  int b = 0;
  int c = 0;
  double Lambda = 1;
  double nu = 1;
};

/// v_{a,b,c,Λ}(φ) = (−1)^a ∫ |s| s^b (s²−2νΛ)^{c−½} H(s²−2νΛ) φ^{(a)}(s) ds.
double elementary_distribution_eval(const ElementaryDistribution& d, const TestFunction& phi);

struct U0Result {
  double value = 0;
  double tail_bound = std::numeric_limits<double>::infinity();
  int levels = 0;  ///< distinct Λ values summed
};

/// c₀₀ ∫φ + Σ_{Λ ≤ cap} c₀₀ (Σ_{μ·τ=Λ} 2^{Z_τ}) v_{0,0,0,Λ}(φ), c₀₀ = ν^m Πμ_j / (4π)^m.
U0Result u0_evaluate(const TestFunction& phi, double nu, const std::vector<double>& mu, double Lambda_cap);

}  // namespace magdirac
