// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "magdirac/exact.hpp"

namespace magdirac {

/// Hermite label τ together with a spinor occupation k ∈ {0,1}^m.
struct HermiteIndex {
  std::vector<int> tau;
  std::vector<int> k;
};

enum class LevelSign { minus = -1, zero = 0, plus = 1 };

struct LandauLevel {
  std::vector<int> tau;
  LevelSign sign = LevelSign::zero;
  Rational mu_dot_tau;  ///< Λ = μ·τ
  double eigenvalue = 0;
  long multiplicity = 1;
};

/// 2^{Z_τ − 1}, or 1 for τ = 0.
long level_multiplicity(const std::vector<int>& tau);
/// Σ_{μ·τ = Λ} 2^{Z_τ} over all τ ≥ 0; this counts both signs.
long landau_degeneracy(const std::vector<Rational>& mu, const Rational& Lambda);

/// All levels with |λ| ≤ λ_max, sorted by eigenvalue.
std::vector<LandauLevel> landau_levels(const std::vector<Rational>& mu, double h, double lambda_max);

/// Basis ψ_{σ} ⊗ w_k with |σ| ≤ cutoff, σ-major and spinor index minor.
struct TruncatedBasis {
  int m = 1;
  int cutoff = 0;
  std::vector<std::vector<int>> sigma;

  std::size_t spin_dim() const { return std::size_t{1} << m; }
  std::size_t size() const { return sigma.size() * spin_dim(); }
  /// Position of (σ, k); npos if σ is outside the truncation.
  std::size_t index(const std::vector<int>& sig, std::size_t spin) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

TruncatedBasis truncated_basis(int m, int cutoff);

/// Upper bound on the truncated dimension; MAGDIRAC_MAX_BASIS overrides it.
std::size_t max_basis_size();

Eigen::MatrixXcd model_dirac_matrix(const std::vector<double>& mu, double h, const TruncatedBasis& basis);

/// λ_{τ,k} = h Σ (2τ_j + 1 + (−1)^{k_j−1}) μ_j / 2.
Rational dsq_eigenvalue(const HermiteIndex& idx, const std::vector<Rational>& mu, const Rational& h);

/// Basis of E_τ^± expressed in the given truncation; columns are orthonormal.
Eigen::MatrixXcd eigenspace_basis(const std::vector<int>& tau, int sign, const std::vector<double>& mu, double h,
                                  const TruncatedBasis& basis);

/// One eigenvalue cluster of the truncated matrix.
struct OracleCluster {
  double value = 0;
  long total_dim = 0;
  long reliable_dim = 0;  ///< dimension inside the span of shells |σ + k| ≤ cutoff − 2
};

struct OracleReport {
  std::vector<OracleCluster> clusters;
  double max_deviation = 0;
  long mismatches = 0;
  long kernel_dim = 0;
  bool pass = false;
};

/// Diagonalizes the truncated matrix and checks it against landau_levels.
OracleReport landau_oracle(const std::vector<Rational>& mu, double h, int cutoff, double tol = 1e-8);

std::vector<double> to_doubles(const std::vector<Rational>& v);

}  // namespace magdirac
