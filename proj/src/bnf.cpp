// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/bnf.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace magdirac {

Caps generator_caps(const Caps& caps) {
  Caps g = caps;
  g.total_cap += 1;
  return g;
}

GradedSymbol assemble_H1(const KoszulContext& ctx) {
  if (ctx.caps.weight_cap < 2) throw std::invalid_argument("assemble_H1: weight cap must be at least 2");
  const int m = ctx.m();
  const Layout L{m};
  ChainElement x(m);
  x.add(1u, Poly::variable(L.xi(0)));
  for (int j = 1; j <= m; ++j) {
    x.add(1u << (2 * j - 1), Poly::variable(L.x(j), QComplex(ctx.s[j - 1])) * ctx.rho);
    x.add(1u << (2 * j), Poly::variable(L.xi(j), QComplex(ctx.s[j - 1])) * ctx.rho);
  }
  // c₀(e_j) = iγ_j = σ_j
  return quantize_chain(x.truncated(ctx.caps), ctx.caps);
}

GradedSymbol ModelSymbol::symbol() const {
  GradedSymbol s = assemble_H1(ctx);
  s += quantize_chain(remainder.truncated(ctx.caps), ctx.caps);
  if (!tail.is_zero()) s += tail.with_caps(ctx.caps);
  return s;
}

void ModelSymbol::validate() const {
  if (remainder.m() != ctx.m()) throw std::invalid_argument("remainder has the wrong m");
  for (const auto& [w, p] : remainder.terms())
    if (wedge_degree(w) != 1) throw std::invalid_argument("remainder must be a W-valued 1-form");
  if (!remainder.is_real()) throw std::invalid_argument("remainder must have real coefficients");
  if (!remainder.is_zero() && remainder.min_weight() < 2) throw std::invalid_argument("remainder must lie in O_2");
  if (!tail.is_zero()) {
    if (tail.m() != ctx.m() || tail.dim() != (std::size_t{1} << ctx.m()))
      throw std::invalid_argument("tail has the wrong matrix size");
    if (!tail.is_self_adjoint()) throw std::invalid_argument("tail must be self-adjoint");
    for (const auto& [k, c] : tail.terms())
      if (k.h() == 0) throw std::invalid_argument("tail terms must carry a factor of h");
  }
}

GradedSymbol conjugate_model(const ModelSymbol& d1, const GradedSymbol& f, const ChainElement& a) {
  GradedSymbol t = d1.symbol();
  if (!f.is_zero()) t = exp_conjugate(f, ConjugationMode::scalar_over_h, t);
  if (!a.is_zero()) t = exp_conjugate(quantize_chain(a.truncated(d1.ctx.caps), d1.ctx.caps), ConjugationMode::matrix, t);
  return t;
}

namespace {

GradedSymbol defect_of(const ModelSymbol& d1, const GradedSymbol& conj, const ChainElement& omega) {
  const Caps& caps = d1.ctx.caps;
  return conj - assemble_H1(d1.ctx) - quantize_chain(omega.truncated(caps), caps);
}

ChainElement apply(Differential d, const ChainElement& e, const KoszulContext& c) { return apply_differential(d, e, c); }

}  // namespace

NormalFormResult birkhoff_normal_form(const ModelSymbol& d1, int N) {
  d1.validate();
  const KoszulContext& ctx = d1.ctx;
  const Caps& caps = ctx.caps;
  const int m = ctx.m();
  if (N < 1) throw std::invalid_argument("target weight N must be at least 1");
  if (caps.weight_cap < N + 2) throw std::invalid_argument("weight cap must be at least N+2");
  const KoszulContext rctx = ctx.reflected();
  const Caps gcaps = generator_caps(caps);

  NormalFormResult res{GradedSymbol(gcaps, 1), ChainElement(m), ChainElement(m), 0, 0, 0};
  // D̃ = ∂₀e₀ + ρw̃⁰ = R w̃_∂ R with R: x₀ ↦ −x₀, and ρ∘R in the reflected context.
  auto Dt = [&](const ChainElement& e) { return apply(Differential::wt_d, e.reflected_x0(), rctx).reflected_x0(); };
  auto I = [&](const ChainElement& e) { return apply(Differential::i_x, e, ctx); };

  for (int W = 2; W <= N; ++W) {
    // Second-order conjugation terms of a weight-(W−1) generator can land back at
    // weight W with one more power of x₀; the transverse cap bounds the repeats.
    const int max_iter = 4 * (caps.total_cap + 2) * (caps.total_cap + 2);
    GradedSymbol previous;
    for (int iter = 0;; ++iter) {
      GradedSymbol conj = conjugate_model(d1, res.f, res.a);
      if (!conj.is_self_adjoint()) throw std::logic_error("conjugated symbol lost self-adjointness");
      GradedSymbol DW = defect_of(d1, conj, res.omega).weight_part(W);
      if (DW.is_zero()) break;
      if (iter > max_iter || (iter > 0 && DW == previous))
        throw std::logic_error("normal form step failed to clear weight " + std::to_string(W));
      previous = DW;
      ++res.steps;
      ChainElement u = dequantize_symbol(DW, Parity::odd);
      if (!u.is_real()) throw std::logic_error("defect dequantized to a non-real form");
      ChainElement u0 = u.h_free_part();
      if (!u0.is_zero()) {
        // h⁰ step: −c₀(D̃F) + 2c₀(IA) cancels the non-harmonic part.
        HodgeResult hr = hodge_decompose(u0.reflected_x0(), W, rctx);
        ChainElement y = hr.b.reflected_x0();
        ChainElement g1 = y.degree_part(1);
        if (!(y - g1).is_zero()) throw std::domain_error("h-free defect of form degree > 1 is not supported");
        Poly F = I(g1).coefficient(0u);
        res.f += GradedSymbol::scalar(F, gcaps);
        res.a += (Dt(y) * QComplex(Rational(-1, 2))).truncated(caps);
        res.omega += hr.harmonic.reflected_x0();
      } else {
        // h step with u = h u₁: A = (−1)^k I g_{2k+1} + ((−1)^k/2) h D̃ b_{2k−1}.
        ChainElement u1 = u.divided_by_h();
        HodgeResult hr = hodge_decompose(u1.reflected_x0(), W - 2, rctx);
        ChainElement y = hr.b.reflected_x0();
        ChainElement A(m);
        for (int deg = 1; deg <= 2 * m + 1; deg += 2) {
          ChainElement yd = y.degree_part(deg);
          if (yd.is_zero()) continue;
          int kg = (deg - 1) / 2, kb = (deg + 1) / 2;
          A += I(yd) * QComplex(kg % 2 ? -1 : 1);
          A += Dt(yd).times_h() * QComplex(Rational(kb % 2 ? -1 : 1, 2));
        }
        res.a += A.truncated(caps);
        res.omega += hr.harmonic.reflected_x0().times_h().truncated(caps);
      }
    }
    res.achieved_weight = W;
  }
  res.min_weight_a = res.a.is_zero() ? 0 : res.a.min_weight();
  if (N == 1) res.achieved_weight = 1;
  return res;
}

std::map<int, double> verify_normal_form(const ModelSymbol& d1, const NormalFormResult& r) {
  GradedSymbol conj = conjugate_model(d1, r.f, r.a);
  return defect_of(d1, conj, r.omega).weight_profile();
}

}  // namespace magdirac
