// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "magdirac/trace.hpp"
#include "oracles.hpp"

using namespace magdirac;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Mehler trace values") {
  CHECK(mehler_trace({{1.0}, 1.0}) == doctest::Approx(0.104488028).epsilon(1e-8));
  CHECK(mehler_trace({{1.0, 1.0}, 1.0}) == doctest::Approx(0.0109177480).epsilon(1e-8));
  CHECK(mehler_trace({{1.0, 1.5}, 0.7}) == doctest::Approx(oracle::mehler_closed_form({1.0, 1.5}, 0.7)).epsilon(1e-14));
  // λ/tanh(tλ) → 1/t as t → 0.
  const double t = 1e-3;
  CHECK(std::abs(mehler_trace({{1.0}, t}) * 4 * kPi * std::pow(t, 1.5) - 1) < 1e-3);
  CHECK_THROWS(mehler_trace({{1.0}, 0.0}));
  CHECK_THROWS(mehler_trace({{}, 1.0}));
}

TEST_CASE("Landau lattice sum reproduces the Mehler trace") {
  const std::vector<std::vector<double>> lambdas{{1.0}, {1.0, 1.5}, {1.0, 1.5, 2.0}};
  for (const auto& lam : lambdas)
    for (double t : {0.1, 0.5, 1.0, 2.5, 5.0}) {
      auto s = landau_trace_sum({lam, t}, 1e-12);
      CHECK(s.tail_bound <= 1e-12);
      CHECK(std::abs(s.value - oracle::mehler_closed_form(lam, t)) <= 1e-10 + s.tail_bound);
    }
}

TEST_CASE("lattice sum at t = 5 needs only tau <= 3") {
  auto s = landau_trace_sum({{1.0}, 5.0}, 1e-12);
  CHECK(s.lattice_cap <= 3);
  CHECK(std::abs(s.value - mehler_trace({{1.0}, 5.0})) < 1e-12);
}

TEST_CASE("large t leaves only the zero level") {
  const double t = 40;
  auto s = landau_trace_sum({{1.0, 1.5}, t}, 1e-30);
  const double tau0 = std::pow(4 * kPi, -2.0) / std::sqrt(t) * 1.5;
  CHECK(s.value == doctest::Approx(tau0).epsilon(1e-15));
}

TEST_CASE("unachievable tail tolerance is an error") {
  CHECK_THROWS(landau_trace_sum({{1.0}, 0.01}, 1e-12, 10));
}

TEST_CASE("elementary distributions against a Gaussian") {
  for (double t : {0.5, 1.0, 3.0}) {
    auto phi = TestFunction::poly_gaussian({1.0}, t);
    for (double nuL : {0.25, 1.0, 2.0}) {
      // ∫₀^∞ u^{−1/2} e^{−t(u+2νΛ)} du = √(π/t) e^{−2tνΛ}.
      double v = elementary_distribution_eval({0, 0, 0, nuL, 1.0}, phi);
      CHECK(v == doctest::Approx(std::sqrt(kPi / t) * std::exp(-2 * t * nuL)).epsilon(1e-10));
      // a = 1, b = 1: e^{−tκ}√π (t^{−1/2} + 2κ t^{1/2}) with κ = 2νΛ.
      const double kappa = 2 * nuL;
      double v11 = elementary_distribution_eval({1, 1, 0, nuL, 1.0}, phi);
      CHECK(v11 == doctest::Approx(std::exp(-t * kappa) * std::sqrt(kPi) * (1 / std::sqrt(t) + 2 * kappa * std::sqrt(t))).epsilon(1e-10));
    }
  }
}

TEST_CASE("elementary distribution with c = 1 against quadrature") {
  auto phi = TestFunction::poly_gaussian({1.0}, 1.0);
  double v = elementary_distribution_eval({0, 0, 1, 1.0, 0.5}, phi);
  // 2∫₁^∞ s(s²−1)^{1/2} e^{−s²} ds with s = cosh y.
  double brute = 2 * oracle::simpson(
                         [](double y) {
                           double c = std::cosh(y), s = std::sinh(y);
                           return c * s * s * std::exp(-c * c);
                         },
                         0.0, 4.0, 4000);
  CHECK(v == doctest::Approx(brute).epsilon(1e-10));
  CHECK(v == doctest::Approx(std::exp(-1.0) * std::sqrt(kPi) / 2).epsilon(1e-10));
}

TEST_CASE("odd test functions give zero") {
  auto odd = TestFunction::poly_gaussian({0.0, 1.0, 0.0, -0.3}, 0.8);
  CHECK(std::abs(elementary_distribution_eval({0, 2, 1, 1.5, 1.0}, odd)) < 1e-12);
  auto u = u0_evaluate(odd, 1.0, {1.0, 1.5}, 60);
  CHECK(std::abs(u.value) < 1e-12);
}

TEST_CASE("u0 of a Gaussian is a t-independent multiple of the Mehler trace") {
  const double nu = 0.8;
  const std::vector<double> mu{1.0, 1.5};
  std::vector<double> lam;
  for (double u : mu) lam.push_back(u * nu);
  for (double t : {0.2, 1.0, 5.0}) {
    auto u = u0_evaluate(TestFunction::poly_gaussian({1.0}, t), nu, mu, 400);
    CHECK(u.tail_bound < 1e-10);
    CHECK(u.value / mehler_trace({lam, t}) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-9));
  }
}

TEST_CASE("u0 of a bump below the first threshold") {
  const double nu = 1.0, R = 1.2;
  auto bump = TestFunction::bump(R);
  auto u = u0_evaluate(bump, nu, {1.0}, 4);
  double integral = oracle::simpson([&](double s) { return bump.eval(s, 0); }, -R, R, 20000);
  CHECK(u.value == doctest::Approx(nu / (4 * kPi) * integral).epsilon(1e-9));
  CHECK(u.tail_bound == 0.0);
}

TEST_CASE("u0 reports no tail bound without an envelope") {
  TestFunction slow{"lorentzian", [](double s, int) { return 1 / (1 + s * s * s * s); }, 0, std::nullopt};
  auto u = u0_evaluate(slow, 1.0, {1.0}, 4);
  CHECK(std::isinf(u.tail_bound));
  CHECK_THROWS(u0_evaluate(slow, 0.0, {1.0}, 4));
}
