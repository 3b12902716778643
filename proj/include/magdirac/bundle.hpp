// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace magdirac {

/// A (μ, e) pair: eigenvalue ½μ² of the ∂̄-Laplacian with multiplicity e.
struct LaplaceEntry {
  double mu = 0;
  long long multiplicity = 0;
};

struct BundleConfig {
  int m = 1;
  double epsilon = 0.25;
  std::vector<long long> chi{0, 1};  ///< ascending coefficients of χ(k)
  long long kodaira_kmin = 1;
  /// Lower bound for μ over Spec⁺; enables the Type-2 gap check.
  std::optional<double> type2_mu_min;
  /// dim H^p for k below the Kodaira threshold, indexed by p.
  std::map<long long, std::vector<long long>> cohomology;
  /// (k, p) → Type-2 data.
  std::map<std::pair<long long, int>, std::vector<LaplaceEntry>> laplace_data;

  long long chi_at(long long k) const;
  /// Throws std::invalid_argument listing every violated invariant.
  void validate() const;
};

struct SpectralLine {
  double value = 0;
  long long multiplicity = 0;
};

/// Type-1 eigenvalues (−1)^p h(k + ε − m/2 − 1/h) with multiplicity dim H^p.
std::vector<SpectralLine> type1_spectrum(const BundleConfig& cfg, double h, long long k_min, long long k_max);

/// Both roots h[((−1)^{p+1}ε ± √((2k + ε(2p−m) − 2/h + 1)² + 4μ²ε))/2], larger first.
std::pair<double, double> type2_eigenvalue_pair(const BundleConfig& cfg, double h, long long k, int p, double mu);

/// Half-width c below which no Type-2 eigenvalue enters |λ| ≤ ch.
std::optional<double> type2_gap_constant(const BundleConfig& cfg);

struct SpectralSample {
  double h = 0;
  std::vector<SpectralLine> eigenvalues;  ///< sorted, |λ| ≤ window·√h
  long long N = 0;                        ///< count with |λ| ≤ ch
  long long k_h = 0;                      ///< kernel dimension
  double eta_erfc = 0;
  double eta_jump = 0;  ///< η just below minus just above this 1/h
  double window = 0;    ///< eigenvalues were collected for |λ|/√h ≤ window
};

SpectralSample weyl_count_and_kernel(const BundleConfig& cfg, double h, double c, double window = 9.0);

/// Σ mult · sign(λ) erfc(|λ|/√h), sign(0) = 0.
double eta_erfc_sum(const std::vector<SpectralLine>& eigenvalues, double h);

enum class BundleStat { N, k_h, eta_jump };
BundleStat parse_bundle_stat(const std::string& s);

struct ScalingFit {
  double slope = 0;
  double stderr_ = 0;
  double intercept = 0;
  int samples = 0;
};

/// OLS of log stat against log(1/h).
ScalingFit scaling_exponent_fit(const std::vector<SpectralSample>& samples, BundleStat stat);

}  // namespace magdirac
