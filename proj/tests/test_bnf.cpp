// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "magdirac/bnf.hpp"
#include "magdirac/clifford.hpp"
#include "symbols.hpp"

using namespace magdirac;
using namespace magdirac::testing;

namespace {

Poly var(int v) { return Poly::variable(v); }

/// Largest defect coefficient at weights ≤ N.
double defect_through(const std::map<int, double>& profile, int N) {
  double worst = 0;
  for (const auto& [w, v] : profile)
    if (w <= N) worst = std::max(worst, v);
  return worst;
}

ModelSymbol model(const Caps& caps, const Poly& rho, const ChainElement& remainder) {
  return ModelSymbol{KoszulContext::make(caps, std::vector<Rational>(caps.m, Rational(1)), rho), remainder,
                     GradedSymbol(caps, std::size_t{1} << caps.m)};
}

void check_harmonic_and_xi0_free(const ChainElement& omega, const KoszulContext& ctx) {
  const Layout L{ctx.m()};
  CHECK(twisted_laplacian0(omega, ctx).is_zero());
  CHECK(omega.derivative(L.xi(0)).is_zero());
}

}  // namespace

TEST_CASE("H1 for m = 1") {
  Caps caps = Caps::make(1, 4, 1);
  Layout L{1};
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  auto H1 = assemble_H1(ctx);
  GradedSymbol expect(caps, 2);
  const auto gammas = build_gamma(1);
  auto sigma = [&](int j) { return gammas[j] * QComplex::I(); };
  expect += GradedSymbol::tensor(var(L.xi(0)), sigma(0), caps);
  expect += GradedSymbol::tensor(var(L.x(1)), sigma(1), caps);
  expect += GradedSymbol::tensor(var(L.xi(1)), sigma(2), caps);
  CHECK(H1 == expect);
  CHECK(H1.is_self_adjoint());
}

TEST_CASE("model without remainder is already normal") {
  Caps caps = Caps::make(1, 6, 1);
  auto d1 = model(caps, Poly::constant(1), ChainElement(1));
  auto r = birkhoff_normal_form(d1, 4);
  CHECK(r.f.is_zero());
  CHECK(r.a.is_zero());
  CHECK(r.omega.is_zero());
  CHECK(r.achieved_weight == 4);
  CHECK(defect_through(verify_normal_form(d1, r), 100) == 0.0);
}

TEST_CASE("harmonic remainder passes through unchanged") {
  Caps caps = Caps::make(1, 6, 1);
  Layout L{1};
  ChainElement u = ChainElement::form(1, 1u, var(L.x(1)) * var(L.x(1)) + var(L.xi(1)) * var(L.xi(1)));
  auto d1 = model(caps, Poly::constant(1), u);
  auto r = birkhoff_normal_form(d1, 4);
  CHECK(r.omega == u);
  CHECK(r.f.is_zero());
  CHECK(r.a.is_zero());
  CHECK(defect_through(verify_normal_form(d1, r), 4) == 0.0);
}

TEST_CASE("x1^2 e1 is normalized through weight 5") {
  Caps caps = Caps::make(1, 7, 1);
  Layout L{1};
  ChainElement u = ChainElement::form(1, 1u << 1, var(L.x(1)) * var(L.x(1)));
  auto d1 = model(caps, Poly::constant(1), u);
  auto r = birkhoff_normal_form(d1, 5);
  CHECK(r.achieved_weight == 5);
  auto profile = verify_normal_form(d1, r);
  CHECK(defect_through(profile, 5) == 0.0);
  for (const auto& [w, v] : profile)
    if (v > 0) CHECK(w >= 6);
  check_harmonic_and_xi0_free(r.omega, d1.ctx);

  SUBCASE("a corrupted omega shows a defect at exactly its weight") {
    NormalFormResult bad = r;
    bad.omega.add(1u << 1, var(L.x(1)) * var(L.x(1)) * var(L.xi(1)));
    auto p = verify_normal_form(d1, bad);
    REQUIRE(p.count(3));
    CHECK(p.at(3) > 0.0);
    for (const auto& [w, v] : p)
      if (w != 3 && w <= 5) CHECK(v == 0.0);
  }
}

TEST_CASE("scalar conjugation changes H1 by the reflected twisted differential") {
  std::mt19937 rng(41);
  const Layout L{1};
  for (const Poly& rho : {Poly::constant(1), Poly::constant(1) + var(L.x(0)) * QComplex(Rational(1, 4))}) {
    Caps caps = Caps::make(1, 6, 2);
    auto ctx = KoszulContext::make(caps, {Rational(1)}, rho);
    auto rctx = ctx.reflected();
    for (int trial = 0; trial < 5; ++trial) {
      Poly f;
      const Poly raw = random_homogeneous(caps, 3, 3, rng);
      for (const auto& [k, c] : raw.terms())
        if (k.h() == 0) f.add(k, QComplex(c.re));
      auto H1 = assemble_H1(ctx);
      auto conj = exp_conjugate(sym(f, caps), ConjugationMode::scalar_over_h, H1);
      ChainElement f0 = ChainElement::form(1, 0u, f);
      ChainElement Df = apply_differential(Differential::wt_d, f0.reflected_x0(), rctx).reflected_x0();
      auto diff = conj - H1 + quantize_chain(Df.truncated(caps), caps);
      for (const auto& [k, c] : diff.terms()) CHECK(weight(k, 1) >= 3);
    }
  }
}

TEST_CASE("random remainders reach the target weight") {
  std::mt19937 rng(43);
  const Layout L{1};
  for (int trial = 0; trial < 3; ++trial) {
    Caps caps = Caps::make(1, 6, 1);
    Poly rho = trial == 2 ? Poly::constant(1) + var(L.x(0)) * QComplex(Rational(1, 3)) : Poly::constant(1);
    auto d1 = model(caps, rho, random_remainder(caps, 2, rng, 4));
    auto r = birkhoff_normal_form(d1, 4);
    CHECK(r.achieved_weight == 4);
    CHECK(defect_through(verify_normal_form(d1, r), 4) == 0.0);
    check_harmonic_and_xi0_free(r.omega, d1.ctx);
  }
}

TEST_CASE("xi0-dependent remainders need generators below O_3") {
  Caps caps = Caps::make(1, 6, 1);
  Layout L{1};
  ChainElement u = ChainElement::form(1, 1u, var(L.xi(0)) * var(L.xi(0)));
  auto d1 = model(caps, Poly::constant(1), u);
  auto r = birkhoff_normal_form(d1, 4);
  CHECK(defect_through(verify_normal_form(d1, r), 4) == 0.0);
  check_harmonic_and_xi0_free(r.omega, d1.ctx);
  REQUIRE_FALSE(r.f.is_zero());
  CHECK(r.f.min_weight() == 2);
}

TEST_CASE("m = 2 remainder at weight 3") {
  std::mt19937 rng(47);
  Caps caps = Caps::make(2, 5, 1);
  auto d1 = model(caps, Poly::constant(1), random_remainder(caps, 2, rng, 3));
  auto r = birkhoff_normal_form(d1, 3);
  CHECK(defect_through(verify_normal_form(d1, r), 3) == 0.0);
  check_harmonic_and_xi0_free(r.omega, d1.ctx);
}

TEST_CASE("invalid models are rejected") {
  Caps caps = Caps::make(1, 6, 1);
  Layout L{1};
  auto low = model(caps, Poly::constant(1), ChainElement::form(1, 1u, var(L.x(1))));
  CHECK_THROWS(birkhoff_normal_form(low, 3));
  auto complex = model(caps, Poly::constant(1), ChainElement::form(1, 1u, var(L.x(1)) * var(L.x(1)) * QComplex::I()));
  CHECK_THROWS(birkhoff_normal_form(complex, 3));
  auto two_form = model(caps, Poly::constant(1), ChainElement::form(1, 3u, var(L.x(1)) * var(L.x(1))));
  CHECK_THROWS(birkhoff_normal_form(two_form, 3));
  auto ok = model(caps, Poly::constant(1), ChainElement(1));
  CHECK_THROWS(birkhoff_normal_form(ok, 0));
  CHECK_THROWS(birkhoff_normal_form(ok, 5));
}
