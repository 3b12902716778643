// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/landau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "magdirac/clifford.hpp"

namespace magdirac {

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> r;
  for (const auto& q : v) r.push_back(q.get_d());
  return r;
}

long level_multiplicity(const std::vector<int>& tau) {
  int z = static_cast<int>(std::count_if(tau.begin(), tau.end(), [](int t) { return t != 0; }));
  return z == 0 ? 1 : 1L << (z - 1);
}

namespace {

void check_mu(const std::vector<Rational>& mu) {
  if (mu.empty()) throw std::invalid_argument("mu must be nonempty");
  for (const auto& q : mu)
    if (sgn(q) <= 0) throw std::invalid_argument("mu entries must be positive");
}

// Enumerates τ ≥ 0 with μ·τ ≤ cap.
void for_each_tau(const std::vector<Rational>& mu, const Rational& cap,
                  const std::function<void(const std::vector<int>&, const Rational&)>& fn) {
  std::vector<int> tau(mu.size(), 0);
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t j, Rational acc) {
    if (j == mu.size()) {
      fn(tau, acc);
      return;
    }
    for (tau[j] = 0; acc + tau[j] * mu[j] <= cap; ++tau[j]) rec(j + 1, acc + tau[j] * mu[j]);
    tau[j] = 0;
  };
  rec(0, Rational(0));
}

}  // namespace

long landau_degeneracy(const std::vector<Rational>& mu, const Rational& Lambda) {
  check_mu(mu);
  if (sgn(Lambda) == 0) return 1;
  long n = 0;
  for_each_tau(mu, Lambda, [&](const std::vector<int>& tau, const Rational& v) {
    if (v == Lambda) n += 2 * level_multiplicity(tau);
  });
  return n;
}

std::vector<LandauLevel> landau_levels(const std::vector<Rational>& mu, double h, double lambda_max) {
  check_mu(mu);
  if (!(h > 0) || !(lambda_max > 0)) throw std::invalid_argument("h and lambda_max must be positive");
  // μ·τ·h ≤ λ_max², with a little slack so boundary levels are not lost to rounding.
  Rational cap(lambda_max * lambda_max / h * (1 + 1e-12));
  std::vector<LandauLevel> out;
  for_each_tau(mu, cap, [&](const std::vector<int>& tau, const Rational& v) {
    double lam = std::sqrt(v.get_d() * h);
    if (lam > lambda_max * (1 + 1e-12)) return;
    if (sgn(v) == 0) {
      out.push_back({tau, LevelSign::zero, v, 0.0, 1});
      return;
    }
    long mult = level_multiplicity(tau);
    out.push_back({tau, LevelSign::plus, v, lam, mult});
    out.push_back({tau, LevelSign::minus, v, -lam, mult});
  });
  std::stable_sort(out.begin(), out.end(), [](const LandauLevel& a, const LandauLevel& b) {
    if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
    return a.tau < b.tau;
  });
  return out;
}

std::size_t max_basis_size() {
  if (const char* s = std::getenv("MAGDIRAC_MAX_BASIS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 20000;
}

TruncatedBasis truncated_basis(int m, int cutoff) {
  if (m < 1 || m > kMaxExactCliffordM) throw std::invalid_argument("m out of range");
  if (cutoff < 0) throw std::invalid_argument("degree cutoff must be non-negative");
  TruncatedBasis b;
  b.m = m;
  b.cutoff = cutoff;
  std::vector<int> sig(m, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m) {
      b.sigma.push_back(sig);
      return;
    }
    for (sig[j] = 0; sig[j] <= left; ++sig[j]) rec(j + 1, left - sig[j]);
    sig[j] = 0;
  };
  rec(0, cutoff);
  std::sort(b.sigma.begin(), b.sigma.end());
  if (b.size() > max_basis_size())
    throw std::length_error("truncated basis of size " + std::to_string(b.size()) + " exceeds the cap " +
                            std::to_string(max_basis_size()) + " (set MAGDIRAC_MAX_BASIS)");
  return b;
}

std::size_t TruncatedBasis::index(const std::vector<int>& sig, std::size_t spin) const {
  auto it = std::lower_bound(sigma.begin(), sigma.end(), sig);
  if (it == sigma.end() || *it != sig) return npos;
  return static_cast<std::size_t>(it - sigma.begin()) * spin_dim() + spin;
}

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& c) {
  Eigen::MatrixXcd r(c.dim(), c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) r(i, j) = c(i, j).to_complex();
  return r;
}

}  // namespace

Eigen::MatrixXcd model_dirac_matrix(const std::vector<double>& mu, double h, const TruncatedBasis& basis) {
  const int m = basis.m;
  if (static_cast<int>(mu.size()) != m) throw std::invalid_argument("mu has wrong length");
  auto gam = build_gamma(m);
  const std::size_t s = basis.spin_dim();
  const std::complex<double> I(0, 1);
  // D = Σ_j (μ_j/2)^{1/2} [γ_{2j} (A_j − A_j*)/2 + iγ_{2j−1} (A_j + A_j*)/2]
  std::vector<Eigen::MatrixXcd> lower(m), raise(m);
  for (int j = 1; j <= m; ++j) {
    Eigen::MatrixXcd g2 = to_eigen(gam[2 * j]), g1 = to_eigen(gam[2 * j - 1]);
    double c = std::sqrt(mu[j - 1] / 2) / 2;
    lower[j - 1] = c * (g2 + I * g1);
    raise[j - 1] = c * (-g2 + I * g1);
  }
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& sig : basis.sigma) {
    const std::size_t col0 = basis.index(sig, 0);
    for (int j = 0; j < m; ++j) {
      auto nb = sig;
      if (sig[j] > 0) {
        nb[j] = sig[j] - 1;
        double amp = std::sqrt(2 * h * sig[j]);
        std::size_t row0 = basis.index(nb, 0);
        D.block(row0, col0, s, s) += amp * lower[j];
      }
      nb[j] = sig[j] + 1;
      if (std::size_t row0 = basis.index(nb, 0); row0 != TruncatedBasis::npos) {
        double amp = std::sqrt(2 * h * (sig[j] + 1));
        D.block(row0, col0, s, s) += amp * raise[j];
      }
    }
  }
  return D;
}

Rational dsq_eigenvalue(const HermiteIndex& idx, const std::vector<Rational>& mu, const Rational& h) {
  if (idx.tau.size() != mu.size() || idx.k.size() != mu.size()) throw std::invalid_argument("index length mismatch");
  Rational s = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (idx.tau[j] < 0) throw std::invalid_argument("tau must be non-negative");
    s += (2 * idx.tau[j] + 1 + (idx.k[j] ? 1 : -1)) * mu[j] / 2;
  }
  return h * s;
}

Eigen::MatrixXcd eigenspace_basis(const std::vector<int>& tau, int sign, const std::vector<double>& mu, double h,
                                  const TruncatedBasis& basis) {
  const int m = basis.m;
  if (static_cast<int>(tau.size()) != m) throw std::invalid_argument("tau has wrong length");
  if (std::all_of(tau.begin(), tau.end(), [](int t) { return t == 0; }))
    throw std::invalid_argument("eigenspace_basis needs tau != 0");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  auto gam = build_gamma(m);
  const std::size_t s = basis.spin_dim();
  // c((w_r − w̄_r)/√2) = i Σ r_j γ_{2j−1} with r_j = √(τ_j μ_j h).
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(s, s);
  double r2 = 0;
  std::uint32_t support = 0;
  for (int j = 1; j <= m; ++j) {
    double r = std::sqrt(tau[j - 1] * mu[j - 1] * h);
    r2 += r * r;
    if (tau[j - 1]) support |= 1u << (j - 1);
    T += std::complex<double>(0, r) * to_eigen(gam[2 * j - 1]);
  }
  const double rn = std::sqrt(r2);
  std::vector<Eigen::VectorXcd> cols;
  for (std::size_t spin = 0; spin < s; ++spin) {
    auto k = spinor_occupation(spin, m);
    std::uint32_t mask = 0;
    for (int j = 0; j < m; ++j)
      if (k[j]) mask |= 1u << j;
    if ((mask & ~support) || __builtin_popcount(mask) % 2) continue;
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(s);
    x(spin) = 1;
    Eigen::VectorXcd v = x + (sign / rn) * (T * x);
    // Unitary transplant w_b ↦ ψ_{τ−b} ⊗ w_b.
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(basis.size());
    for (std::size_t q = 0; q < s; ++q) {
      if (std::abs(v(q)) == 0) continue;
      auto b = spinor_occupation(q, m);
      std::vector<int> sig(m);
      for (int j = 0; j < m; ++j) sig[j] = tau[j] - b[j];
      std::size_t pos = basis.index(sig, q);
      if (pos == TruncatedBasis::npos) throw std::invalid_argument("eigenspace lies outside the truncation");
      full(pos) = v(q);
    }
    cols.push_back(full.normalized());
  }
  Eigen::MatrixXcd out(basis.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = cols[c];
  return out;
}

OracleReport landau_oracle(const std::vector<Rational>& mu, double h, int cutoff, double tol) {
  check_mu(mu);
  const int m = static_cast<int>(mu.size());
  auto basis = truncated_basis(m, cutoff);
  auto D = model_dirac_matrix(to_doubles(mu), h, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D);
  const auto& ev = es.eigenvalues();
  const auto& V = es.eigenvectors();
  const std::size_t s = basis.spin_dim();

  std::vector<Eigen::Index> unreliable;
  for (std::size_t a = 0; a < basis.sigma.size(); ++a)
    for (std::size_t q = 0; q < s; ++q) {
      auto k = spinor_occupation(q, m);
      int level = 0;
      for (int j = 0; j < m; ++j) level += basis.sigma[a][j] + k[j];
      if (level > cutoff - 2) unreliable.push_back(static_cast<Eigen::Index>(a * s + q));
    }

  OracleReport rep;
  const Eigen::Index n = ev.size();
  for (Eigen::Index i = 0; i < n;) {
    Eigen::Index j = i + 1;
    while (j < n && ev(j) - ev(j - 1) < 1e-7) ++j;
    Eigen::MatrixXcd block(static_cast<Eigen::Index>(unreliable.size()), j - i);
    for (std::size_t r = 0; r < unreliable.size(); ++r) block.row(static_cast<Eigen::Index>(r)) = V.block(unreliable[r], i, 1, j - i);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
    long rank = 0;
    for (Eigen::Index t = 0; t < svd.singularValues().size(); ++t)
      if (svd.singularValues()(t) > 1e-6) ++rank;
    rep.clusters.push_back({ev.segment(i, j - i).mean(), static_cast<long>(j - i), static_cast<long>(j - i) - rank});
    i = j;
  }

  // Expected reliable spectrum: levels with |τ| ≤ cutoff − 2, aggregated by value.
  std::map<std::pair<int, Rational>, long> expected;
  std::vector<int> tau(m, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m) {
      Rational v = 0;
      for (int t = 0; t < m; ++t) v += tau[t] * mu[t];
      if (sgn(v) == 0) {
        expected[{0, v}] += 1;
      } else {
        expected[{1, v}] += level_multiplicity(tau);
        expected[{-1, v}] += level_multiplicity(tau);
      }
      return;
    }
    for (tau[j] = 0; tau[j] <= left; ++tau[j]) rec(j + 1, left - tau[j]);
    tau[j] = 0;
  };
  if (cutoff >= 2) rec(0, cutoff - 2);

  std::vector<bool> used(rep.clusters.size(), false);
  for (const auto& [key, mult] : expected) {
    double val = key.first * std::sqrt(key.second.get_d() * h);
    std::size_t best = 0;
    double dist = 1e300;
    for (std::size_t c = 0; c < rep.clusters.size(); ++c)
      if (std::abs(rep.clusters[c].value - val) < dist) {
        dist = std::abs(rep.clusters[c].value - val);
        best = c;
      }
    rep.max_deviation = std::max(rep.max_deviation, dist);
    if (dist > tol || rep.clusters[best].reliable_dim != mult) ++rep.mismatches;
    used[best] = true;
    if (key.first == 0) rep.kernel_dim = rep.clusters[best].reliable_dim;
  }
  for (std::size_t c = 0; c < rep.clusters.size(); ++c)
    if (!used[c] && rep.clusters[c].reliable_dim > 0) ++rep.mismatches;
  rep.pass = rep.mismatches == 0 && rep.kernel_dim == 1;
  return rep;
}

}  // namespace magdirac
