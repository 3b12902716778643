// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "magdirac/koszul.hpp"
#include "symbols.hpp"

using namespace magdirac;
using namespace magdirac::testing;

namespace {

Poly var(int v) { return Poly::variable(v); }

}  // namespace

TEST_CASE("differential examples") {
  Caps caps = Caps::make(1, 6, 4);
  Layout L{1};
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  auto x1 = ChainElement::form(1, 0, var(L.x(1)));
  CHECK(apply_differential(Differential::wt_d0, x1, ctx) == ChainElement::form(1, wedge_of({2}), Poly::constant(1)));
  CHECK(apply_differential(Differential::i_x0, ChainElement::form(1, 0, Poly::constant(1)), ctx).is_zero());
  auto xi0x0 = ChainElement::form(1, 0, var(L.xi(0)) * var(L.x(0)));
  CHECK(apply_differential(Differential::wt_d, xi0x0, ctx) == ChainElement::form(1, wedge_of({0}), var(L.xi(0)) * QComplex(-1)));
}

TEST_CASE("Laplacian examples") {
  Caps caps = Caps::make(1, 6, 4);
  Layout L{1};
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  auto f = [&](const Poly& p) { return ChainElement::form(1, 0, p); };
  CHECK(twisted_laplacian0(f(var(L.x(1))), ctx) == f(var(L.xi(1))));
  CHECK(twisted_laplacian0(f(var(L.x(1)) * var(L.x(1)) + var(L.xi(1)) * var(L.xi(1))), ctx).is_zero());
  Poly z = var(L.x(1)) + var(L.xi(1)) * QComplex::I();
  CHECK(twisted_laplacian0(f(z), ctx) == f(z * QComplex(Rational(0), Rational(-1))));
}

TEST_CASE("pure differentials square to zero for constant rho") {
  std::mt19937 rng(41);
  const Differential wedges[] = {Differential::w_x0, Differential::w_d0, Differential::wt_d0,
                                 Differential::w_x, Differential::w_d, Differential::wt_d};
  const Differential contractions[] = {Differential::i_x0, Differential::i_d0, Differential::it_d0,
                                       Differential::i_x, Differential::i_d, Differential::it_d};
  for (int m = 1; m <= 2; ++m) {
    Caps caps = Caps::make(m, 5, 3);
    std::vector<Rational> s{Rational(1), Rational(3, 2)};
    s.resize(m);
    for (const Poly& rho : {Poly::constant(1), Poly::constant(QComplex(Rational(3, 2)))}) {
      auto ctx = KoszulContext::make(caps, s, rho);
      for (int trial = 0; trial < 10; ++trial) {
        auto e = random_chain(caps, 4, rng);
        for (auto d : wedges) CHECK(apply_differential(d, apply_differential(d, e, ctx), ctx).is_zero());
        for (auto d : contractions) CHECK(apply_differential(d, apply_differential(d, e, ctx), ctx).is_zero());
      }
    }
  }
}

TEST_CASE("with non-constant rho only the twisted derivative differentials fail to square to zero") {
  std::mt19937 rng(43);
  Caps caps = Caps::make(1, 5, 3);
  Layout L{1};
  Poly rho = Poly::constant(1) + var(L.x(0)) * QComplex(Rational(1, 4));
  auto ctx = KoszulContext::make(caps, {Rational(1)}, rho);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = random_chain(caps, 4, rng);
    for (auto d : {Differential::w_x, Differential::w_d, Differential::i_x, Differential::i_d})
      CHECK(apply_differential(d, apply_differential(d, e, ctx), ctx).is_zero());
    // w̃_∂² = −ρ′ e₀∧w̃_∂⁰.
    auto sq = apply_differential(Differential::wt_d, apply_differential(Differential::wt_d, e, ctx), ctx);
    auto w0 = apply_differential(Differential::wt_d0, e, ctx);
    ChainElement expect(1);
    for (const auto& [w, p] : w0.terms()) {
      Wedge nw;
      int sign;
      if (wedge_left(0, w, nw, sign)) expect.add(nw, p * QComplex(Rational(-sign, 4)));
    }
    CHECK(sq == expect);
  }
}

TEST_CASE("three expressions for the twisted Laplacian agree exhaustively") {
  for (int m = 1; m <= 2; ++m) {
    Caps caps = Caps::make(m, 4, 2);
    std::vector<Rational> s{Rational(2), Rational(3, 2)};
    s.resize(m);
    auto ctx = KoszulContext::flat(caps, s);
    long checked = 0;
    for (const auto& k : weighted_monomials(m, 4))
      for (Wedge w = 0; w < (Wedge{1} << (2 * m + 1)); ++w) {
        if (wedge_degree(w) > 3) continue;
        auto e = mono_form(m, w, k);
        auto rot = twisted_laplacian0(e, ctx);
        auto wi = apply_differential(Differential::wt_d0, apply_differential(Differential::i_x0, e, ctx), ctx) +
                  apply_differential(Differential::i_x0, apply_differential(Differential::wt_d0, e, ctx), ctx);
        auto xw = apply_differential(Differential::w_x0, apply_differential(Differential::it_d0, e, ctx), ctx) +
                  apply_differential(Differential::it_d0, apply_differential(Differential::w_x0, e, ctx), ctx);
        ChainElement gens(m);
        for (int j = 1; j <= m; ++j) gens += rotation_generator(e, j) * QComplex(ctx.mu(j));
        CHECK(rot == wi);
        // With ĩ_∂⁰ = Σ s_j(∂_{x_j} i_{e_{2j}} − ∂_{ξ_j} i_{e_{2j−1}}) the anticommutator carries a plus sign.
        CHECK(rot == xw);
        CHECK(rot == gens);
        ++checked;
      }
    CHECK(checked > 0);
  }
}

TEST_CASE("twisted Laplacian has imaginary spectrum i mu . n") {
  // Matrix of Δ̃⁰ on 0-forms and 1-forms with coefficients of degree ≤ 2, m = 1, μ = 1.
  Caps caps = Caps::make(1, 3, 0);
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  std::vector<std::pair<Wedge, Monomial>> basis;
  for (const auto& k : weighted_monomials(1, 2))
    if (k.e[0] == 0)
      for (Wedge w : {Wedge{0}, wedge_of({1}), wedge_of({2})}) basis.push_back({w, k});
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    auto img = twisted_laplacian0(mono_form(1, basis[c].first, basis[c].second), ctx);
    for (const auto& [w, p] : img.terms())
      for (const auto& [k, coef] : p.terms()) {
        Eigen::Index r = 0;
        while (r < n && !(basis[r].first == w && basis[r].second == k)) ++r;
        REQUIRE(r < n);
        A(r, c) = coef.to_complex();
      }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto ev = es.eigenvalues()(i);
    CHECK(std::abs(ev.real()) < 1e-9);
    CHECK(std::abs(ev.imag() - std::round(ev.imag())) < 1e-9);
  }
}

TEST_CASE("untwisted compositions on constants") {
  Caps caps = Caps::make(1, 4, 2);
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  auto one = ChainElement::form(1, 0, Poly::constant(1));
  CHECK(untwisted_laplacian_xd(one, ctx) == one * QComplex(2));
  CHECK(untwisted_laplacian_dx(one, ctx).is_zero());
}

TEST_CASE("Hodge decomposition examples") {
  Caps caps = Caps::make(1, 4, 2);
  Layout L{1};
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  auto u = ChainElement::form(1, wedge_of({1}), var(L.x(1)));
  auto r = hodge_decompose(u, 4, ctx);
  auto half = QComplex(Rational(1, 2));
  auto expect = (ChainElement::form(1, wedge_of({1}), var(L.x(1))) + ChainElement::form(1, wedge_of({2}), var(L.xi(1)))) * half;
  CHECK(r.harmonic == expect);
  CHECK(hodge_recompose(r, ctx) == u);

  auto radial = ChainElement::form(1, wedge_of({0}), var(L.x(1)) * var(L.x(1)) + var(L.xi(1)) * var(L.xi(1)));
  auto rr = hodge_decompose(radial, 4, ctx);
  CHECK(rr.harmonic == radial);
  CHECK(rr.b.is_zero());
  CHECK(rr.g.is_zero());
  CHECK(rr.residual.is_zero());

  auto zero = hodge_decompose(ChainElement(1), 4, ctx);
  CHECK(zero.harmonic.is_zero());
  CHECK(zero.b.is_zero());
  CHECK(zero.residual.is_zero());
}

TEST_CASE("Hodge decomposition on random inputs") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 2;
    Caps caps = Caps::make(m, 3 + trial % 3, 2);
    Layout L{m};
    std::vector<Rational> s{Rational(1), Rational(3, 2)};
    s.resize(m);
    Poly rho = trial % 4 < 2 ? Poly::constant(1) : Poly::constant(1) + var(L.x(0)) * QComplex(Rational(1, 4));
    auto ctx = KoszulContext::make(caps, s, rho);
    auto u = random_chain(caps, 3, rng);
    auto r = hodge_decompose(u, caps.weight_cap, ctx);
    CHECK(r.residual.is_zero());
    CHECK(hodge_recompose(r, ctx) == u.truncated(caps));
    CHECK(twisted_laplacian0(r.harmonic, ctx).is_zero());
    CHECK(r.harmonic.derivative(L.xi(0)).is_zero());
  }
}

TEST_CASE("Hodge residual collects weights above the target") {
  Caps caps = Caps::make(1, 5, 2);
  Layout L{1};
  auto ctx = KoszulContext::flat(caps, {Rational(1)});
  Poly high = var(L.x(1)) * var(L.x(1)) * var(L.x(1)) * var(L.xi(1));
  auto u = ChainElement::form(1, wedge_of({1}), var(L.x(1)) + high);
  auto r = hodge_decompose(u, 2, ctx);
  CHECK(r.residual == ChainElement::form(1, wedge_of({1}), high));
  CHECK(hodge_recompose(r, ctx) == u);
}

TEST_CASE("quantize and dequantize chains") {
  std::mt19937 rng(53);
  Caps caps = Caps::make(2, 4, 2);
  for (int trial = 0; trial < 5; ++trial) {
    auto e = random_chain(caps, 4, rng);
    ChainElement odd(2), even(2);
    for (const auto& [w, p] : e.terms()) (wedge_degree(w) % 2 ? odd : even).add(w, p);
    CHECK(dequantize_symbol(quantize_chain(odd, caps), Parity::odd) == odd);
    CHECK(dequantize_symbol(quantize_chain(even, caps), Parity::even) == even);
  }
}
