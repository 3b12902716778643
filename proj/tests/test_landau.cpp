// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "magdirac/landau.hpp"
#include "oracles.hpp"

using namespace magdirac;

namespace {

std::map<double, long> tally(const std::vector<LandauLevel>& levels) {
  std::map<double, long> out;
  for (const auto& l : levels) out[l.eigenvalue] += l.multiplicity;
  return out;
}

}  // namespace

TEST_CASE("m = 1 levels up to 2") {
  auto t = tally(landau_levels({Rational(1)}, 1.0, 2.0));
  REQUIRE(t.size() == 9);
  CHECK(t.at(0.0) == 1);
  for (int tau = 1; tau <= 4; ++tau) {
    CHECK(t.at(std::sqrt(tau)) == 1);
    CHECK(t.at(-std::sqrt(tau)) == 1);
  }
}

TEST_CASE("m = 1 levels with h = 1/4") {
  auto levels = landau_levels({Rational(1)}, 0.25, 1.0);
  std::vector<double> pos;
  for (const auto& l : levels)
    if (l.eigenvalue > 0) pos.push_back(l.eigenvalue);
  REQUIRE(pos.size() == 4);
  for (int tau = 1; tau <= 4; ++tau) CHECK(pos[tau - 1] == doctest::Approx(std::sqrt(tau / 4.0)).epsilon(1e-15));
}

TEST_CASE("level multiplicities") {
  CHECK(level_multiplicity({0, 0}) == 1);
  CHECK(level_multiplicity({3, 0}) == 1);
  CHECK(level_multiplicity({1, 1}) == 2);
  CHECK(level_multiplicity({1, 2, 5}) == 4);
  // τ = (1,1) and (2,0), (0,2) share Λ = 2 when μ = (1,1): 2·(2 + 1 + 1).
  CHECK(landau_degeneracy({Rational(1), Rational(1)}, Rational(2)) == 8);
  CHECK(landau_degeneracy({Rational(1), Rational(9, 4)}, Rational(0)) == 1);
}

TEST_CASE("squared eigenvalue formula") {
  CHECK(dsq_eigenvalue({{0}, {0}}, {Rational(7)}, Rational(3)) == Rational(0));
  CHECK(dsq_eigenvalue({{0}, {1}}, {Rational(1)}, Rational(1)) == Rational(1));
  CHECK(dsq_eigenvalue({{1, 1}, {0, 0}}, {Rational(1), Rational(1)}, Rational(1)) == Rational(2));
}

TEST_CASE("truncated matrix at cutoff 0 annihilates the ground state") {
  auto basis = truncated_basis(1, 0);
  REQUIRE(basis.size() == 2);
  auto D = model_dirac_matrix({1.0}, 1.0, basis);
  CHECK(D.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigenspaces are eigenvectors of the truncated matrix") {
  struct Case {
    std::vector<int> tau;
    std::vector<double> mu;
    long dim;
  };
  for (const auto& c : {Case{{1}, {1.0}, 1}, Case{{3}, {1.0}, 1}, Case{{1, 1}, {1.0, 1.0}, 2}, Case{{2, 1}, {1.0, 2.25}, 2}}) {
    auto basis = truncated_basis(static_cast<int>(c.tau.size()), 6);
    auto D = model_dirac_matrix(c.mu, 1.0, basis);
    double lam = 0;
    for (std::size_t j = 0; j < c.tau.size(); ++j) lam += c.tau[j] * c.mu[j];
    for (int sign : {1, -1}) {
      auto E = eigenspace_basis(c.tau, sign, c.mu, 1.0, basis);
      CHECK(E.cols() == c.dim);
      double res = (D * E - sign * std::sqrt(lam) * E).cwiseAbs().maxCoeff();
      CHECK(res < 1e-10);
      double orth = (E.adjoint() * E - Eigen::MatrixXcd::Identity(E.cols(), E.cols())).cwiseAbs().maxCoeff();
      CHECK(orth < 1e-12);
    }
  }
}

TEST_CASE("diagonalization oracle, m = 1 cutoff 20") {
  CHECK(oracle::landau_mismatch({1.0}, 1.0, 20) < 1e-8);
  auto rep = landau_oracle({Rational(1)}, 1.0, 20);
  CHECK(rep.pass);
  CHECK(rep.kernel_dim == 1);
  CHECK(rep.max_deviation < 1e-8);
}

TEST_CASE("diagonalization oracle, m = 2 with mu = (1, 9/4)") {
  CHECK(oracle::landau_mismatch({1.0, 2.25}, 1.0, 12) < 1e-8);
  auto rep = landau_oracle({Rational(1), Rational(9, 4)}, 1.0, 12);
  CHECK(rep.pass);
  // τ = (1,0), (2,0) and (0,1) give the three smallest positive levels.
  std::vector<double> pos;
  for (const auto& c : rep.clusters)
    if (c.reliable_dim > 0 && c.value > 1e-6) pos.push_back(c.value);
  REQUIRE(pos.size() >= 3);
  CHECK(pos[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pos[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(pos[2] == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS(landau_levels({Rational(-1)}, 1.0, 1.0));
  CHECK_THROWS(landau_levels({Rational(1)}, 0.0, 1.0));
  CHECK_THROWS(eigenspace_basis({0}, 1, {1.0}, 1.0, truncated_basis(1, 3)));
}
