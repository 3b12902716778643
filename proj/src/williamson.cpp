// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "magdirac/weyl.hpp"

namespace magdirac {

WilliamsonResult williamson_diagonalize(const Eigen::MatrixXd& Q, const std::vector<double>& mu, double tol) {
  const int m = static_cast<int>(mu.size());
  const int n = 2 * m + 1;
  if (m < 1 || Q.rows() != n || Q.cols() != n) throw std::invalid_argument("Q must be (2m+1)x(2m+1)");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pd(Q);
  if (pd.eigenvalues().minCoeff() <= 0) throw std::invalid_argument("Q is not positive definite");
  for (double u : mu)
    if (!(u > 0)) throw std::invalid_argument("mu entries must be positive");

  // Split variables into y = (x′, ξ′) and ξ₀ (index m in the input ordering).
  std::vector<int> ypos;
  for (int i = 0; i < n; ++i)
    if (i != m) ypos.push_back(i);
  Eigen::MatrixXd A(2 * m, 2 * m);
  Eigen::VectorXd c(2 * m);
  for (int i = 0; i < 2 * m; ++i) {
    c(i) = Q(ypos[i], m);
    for (int j = 0; j < 2 * m; ++j) A(i, j) = Q(ypos[i], ypos[j]);
  }
  Eigen::VectorXd shift = A.ldlt().solve(c);
  const double schur = Q(m, m) - c.dot(shift);
  if (std::abs(schur - 1) > tol)
    throw std::domain_error("suitability violated: reduced xi0 coefficient is " + std::to_string(schur) + ", not 1");

  // Williamson on A: S = A^{-1/2} O D̂^{1/2} with Oᵀ (A^{-1/2} J A^{-1/2}) O canonical.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(A);
  Eigen::MatrixXd Ainvh = ea.operatorInverseSqrt();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  J.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  J.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd N = Ainvh * J * Ainvh;
  Eigen::MatrixXcd iN = std::complex<double>(0, 1) * N.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> en(iN);
  // Positive eigenvalues κ_j of iN pair with symplectic eigenvalues d_j = 1/κ_j.
  std::vector<int> pos;
  for (int i = 0; i < 2 * m; ++i)
    if (en.eigenvalues()(i) > 0) pos.push_back(i);
  if (static_cast<int>(pos.size()) != m) throw std::runtime_error("williamson: unexpected spectrum");
  std::vector<double> d(m);
  Eigen::MatrixXd O(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd u = en.eigenvectors().col(pos[j]);
    O.col(j) = std::sqrt(2.0) * u.real();
    O.col(j + m) = std::sqrt(2.0) * u.imag();
    d[j] = 1 / en.eigenvalues()(pos[j]);
  }
  // Match symplectic eigenvalues to μ by rank and check proportionality.
  std::vector<int> od(m), om(m);
  std::iota(od.begin(), od.end(), 0);
  std::iota(om.begin(), om.end(), 0);
  std::sort(od.begin(), od.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::sort(om.begin(), om.end(), [&](int a, int b) { return mu[a] < mu[b]; });
  const double two_nu = d[od[0]] / mu[om[0]];
  Eigen::MatrixXd Ord(2 * m, 2 * m);
  std::vector<double> dd(m);
  for (int r = 0; r < m; ++r) {
    double ratio = d[od[r]] / mu[om[r]];
    if (std::abs(ratio - two_nu) > tol * std::max(1.0, two_nu))
      throw std::domain_error("suitability violated: symplectic eigenvalues are not proportional to mu");
    Ord.col(om[r]) = O.col(od[r]);
    Ord.col(om[r] + m) = O.col(od[r] + m);
    dd[om[r]] = d[od[r]];
  }
  Eigen::VectorXd Dh(2 * m);
  for (int j = 0; j < m; ++j) Dh(j) = Dh(j + m) = std::sqrt(dd[j]);
  Eigen::MatrixXd S = Ainvh * Ord * Dh.asDiagonal();

  // Remove the residual U(m) freedom so model inputs return Λ = 0: rotate each
  // (x_j, ξ_j) plane to maximize the trace of S there, then use the polar factor
  // within blocks of equal symplectic eigenvalue.
  for (int j = 0; j < m; ++j) {
    double th = std::atan2(S(j, j + m) - S(j + m, j), S(j, j) + S(j + m, j + m));
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(2 * m, 2 * m);
    R(j, j) = R(j + m, j + m) = std::cos(th);
    R(j, j + m) = -std::sin(th);
    R(j + m, j) = std::sin(th);
    S = S * R;
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd U = svd.matrixU() * svd.matrixV().transpose();  // S = P U
    Eigen::MatrixXd Dhat = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int j = 0; j < m; ++j) Dhat(j, j) = Dhat(j + m, j + m) = dd[j];
    if ((U * Dhat - Dhat * U).cwiseAbs().maxCoeff() < 1e-10) S = S * U.transpose();
  }

  // Assemble M on (x′, ξ₀, ξ′): y = S y′ − A^{-1} c ξ₀, ξ₀ fixed.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < 2 * m; ++i) {
    for (int j = 0; j < 2 * m; ++j) M(ypos[i], ypos[j]) = S(i, j);
    M(ypos[i], m) = -shift(i);
  }
  M(m, m) = 1;

  WilliamsonResult res;
  res.M = M;
  res.two_nu_bar = two_nu;
  res.symplectic_eigenvalues = dd;
  res.Lambda = M.log();
  Eigen::MatrixXd E = res.Lambda.exp();
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  target(m, m) = 1;
  for (int j = 0; j < m; ++j) target(j, j) = target(j + m + 1, j + m + 1) = two_nu * mu[j];
  res.residual = (E.transpose() * Q * E - target).cwiseAbs().maxCoeff();
  if (res.residual > 1e-8) throw std::runtime_error("williamson: reconstruction failed, residual " + std::to_string(res.residual));
  return res;
}

}  // namespace magdirac
