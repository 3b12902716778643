// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/koszul.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace magdirac {

ChainElement ChainElement::form(int m, Wedge w, const Poly& p) {
  ChainElement e(m);
  e.add(w, p);
  return e;
}

Poly ChainElement::coefficient(Wedge w) const {
  auto it = t_.find(w);
  return it == t_.end() ? Poly{} : it->second;
}

void ChainElement::add(Wedge w, const Poly& p) {
  if (p.is_zero()) return;
  if (w >> (2 * m_ + 1)) throw std::invalid_argument("wedge index exceeds 2m");
  auto [it, fresh] = t_.try_emplace(w, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) t_.erase(it);
  }
}

ChainElement& ChainElement::operator+=(const ChainElement& o) {
  for (const auto& [w, p] : o.t_) add(w, p);
  return *this;
}

ChainElement& ChainElement::operator-=(const ChainElement& o) {
  for (const auto& [w, p] : o.t_) add(w, -p);
  return *this;
}

ChainElement& ChainElement::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [w, p] : t_) p *= c;
  return *this;
}

namespace {

template <class F>
ChainElement map_coeffs(const ChainElement& e, F f) {
  ChainElement r(e.m());
  for (const auto& [w, p] : e.terms()) r.add(w, f(p));
  return r;
}

}  // namespace

ChainElement ChainElement::truncated(const Caps& caps) const {
  return map_coeffs(*this, [&](const Poly& p) { return p.truncated(caps); });
}
ChainElement ChainElement::reflected_x0() const {
  return map_coeffs(*this, [](const Poly& p) { return p.reflected_x0(); });
}
ChainElement ChainElement::weight_part(int w) const {
  return map_coeffs(*this, [&](const Poly& p) { return p.weight_part(w, m_); });
}
ChainElement ChainElement::divided_by_h() const {
  return map_coeffs(*this, [](const Poly& p) { return p.divided_by_h(); });
}
ChainElement ChainElement::times_h() const {
  return map_coeffs(*this, [](const Poly& p) { return p.times_h(); });
}
ChainElement ChainElement::derivative(int var) const {
  return map_coeffs(*this, [&](const Poly& p) { return p.derivative(var); });
}
ChainElement ChainElement::times(const Poly& q) const {
  return map_coeffs(*this, [&](const Poly& p) { return p * q; });
}

ChainElement ChainElement::h_free_part() const {
  return map_coeffs(*this, [](const Poly& p) {
    Poly r;
    for (const auto& [k, c] : p.terms())
      if (k.h() == 0) r.add(k, c);
    return r;
  });
}

ChainElement ChainElement::h_part() const { return *this - h_free_part(); }

ChainElement ChainElement::degree_part(int k) const {
  ChainElement r(m_);
  for (const auto& [w, p] : t_)
    if (wedge_degree(w) == k) r.add(w, p);
  return r;
}

int ChainElement::min_weight() const {
  int w = std::numeric_limits<int>::max();
  for (const auto& [wd, p] : t_) w = std::min(w, p.min_weight(m_));
  return w;
}

int ChainElement::max_weight() const {
  int w = -1;
  for (const auto& [wd, p] : t_) w = std::max(w, p.max_weight(m_));
  return w;
}

bool ChainElement::is_real() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

double ChainElement::max_abs() const {
  double r = 0;
  for (const auto& [w, p] : t_) r = std::max(r, p.max_abs());
  return r;
}

KoszulContext KoszulContext::make(const Caps& caps, std::vector<Rational> s, Poly rho) {
  if (static_cast<int>(s.size()) != caps.m) throw std::invalid_argument("need one s_j per j = 1..m");
  for (const auto& q : s)
    if (sgn(q) <= 0) throw std::invalid_argument("s_j must be positive");
  for (const auto& [k, c] : rho.terms())
    if (weight(k, caps.m) != 0) throw std::invalid_argument("rho must depend on transverse variables only");
  if (rho.coefficient(Monomial{}).is_zero()) throw std::invalid_argument("rho(0) must be nonzero");
  return {caps, std::move(s), rho.truncated(caps)};
}

KoszulContext KoszulContext::flat(const Caps& caps, std::vector<Rational> s) {
  return make(caps, std::move(s), Poly::constant(QComplex(1)));
}

KoszulContext KoszulContext::reflected() const { return {caps, s, rho.reflected_x0()}; }

namespace {

enum class CoefOp { mul, diff };
enum class FormOp { wedge, contract };

struct Piece {
  CoefOp cop;
  int var;
  FormOp fop;
  int idx;
  QComplex c;
};

ChainElement apply_pieces(const ChainElement& e, const std::vector<Piece>& pieces) {
  ChainElement r(e.m());
  for (const auto& [w, p] : e.terms())
    for (const auto& pc : pieces) {
      Wedge nw;
      int sign;
      bool ok = pc.fop == FormOp::wedge ? wedge_left(pc.idx, w, nw, sign) : contract_left(pc.idx, w, nw, sign);
      if (!ok) continue;
      Poly q = pc.cop == CoefOp::mul ? p.times_variable(pc.var) : p.derivative(pc.var);
      r.add(nw, q * (pc.c * QComplex(sign)));
    }
  return r;
}

std::vector<Piece> flat_pieces(Differential d, const KoszulContext& ctx) {
  const Layout L{ctx.m()};
  std::vector<Piece> ps;
  for (int j = 1; j <= ctx.m(); ++j) {
    QComplex s(ctx.s[j - 1]);
    switch (d) {
      case Differential::w_x0:
        ps.push_back({CoefOp::mul, L.x(j), FormOp::wedge, 2 * j - 1, s});
        ps.push_back({CoefOp::mul, L.xi(j), FormOp::wedge, 2 * j, s});
        break;
      case Differential::i_x0:
        ps.push_back({CoefOp::mul, L.x(j), FormOp::contract, 2 * j - 1, s});
        ps.push_back({CoefOp::mul, L.xi(j), FormOp::contract, 2 * j, s});
        break;
      case Differential::w_d0:
        ps.push_back({CoefOp::diff, L.x(j), FormOp::wedge, 2 * j - 1, s});
        ps.push_back({CoefOp::diff, L.xi(j), FormOp::wedge, 2 * j, s});
        break;
      case Differential::i_d0:
        ps.push_back({CoefOp::diff, L.x(j), FormOp::contract, 2 * j - 1, s});
        ps.push_back({CoefOp::diff, L.xi(j), FormOp::contract, 2 * j, s});
        break;
      case Differential::wt_d0:
        ps.push_back({CoefOp::diff, L.x(j), FormOp::wedge, 2 * j, s});
        ps.push_back({CoefOp::diff, L.xi(j), FormOp::wedge, 2 * j - 1, -s});
        break;
      case Differential::it_d0:
        ps.push_back({CoefOp::diff, L.x(j), FormOp::contract, 2 * j, s});
        ps.push_back({CoefOp::diff, L.xi(j), FormOp::contract, 2 * j - 1, -s});
        break;
      default:
        throw std::logic_error("not a flat differential");
    }
  }
  return ps;
}

}  // namespace

Differential parse_differential(const std::string& name) {
  static const std::pair<const char*, Differential> table[] = {
      {"w_x0", Differential::w_x0}, {"i_x0", Differential::i_x0}, {"w_d0", Differential::w_d0},
      {"i_d0", Differential::i_d0}, {"wt_d0", Differential::wt_d0}, {"it_d0", Differential::it_d0},
      {"w_x", Differential::w_x},   {"i_x", Differential::i_x},   {"w_d", Differential::w_d},
      {"i_d", Differential::i_d},   {"wt_d", Differential::wt_d}, {"it_d", Differential::it_d}};
  for (const auto& [n, d] : table)
    if (name == n) return d;
  throw std::invalid_argument("unknown differential '" + name + "'");
}

std::string differential_name(Differential d) {
  static const char* names[] = {"w_x0", "i_x0", "w_d0", "i_d0", "wt_d0", "it_d0",
                                "w_x",  "i_x",  "w_d",  "i_d",  "wt_d",  "it_d"};
  return names[static_cast<int>(d)];
}

bool is_wedge_type(Differential d) {
  switch (d) {
    case Differential::w_x0: case Differential::w_d0: case Differential::wt_d0:
    case Differential::w_x: case Differential::w_d: case Differential::wt_d:
      return true;
    default:
      return false;
  }
}

ChainElement apply_differential(Differential d, const ChainElement& e, const KoszulContext& ctx) {
  if (e.m() != ctx.m()) throw std::invalid_argument("chain element and context disagree on m");
  const Layout L{ctx.m()};
  const int x0 = L.x(0), xi0 = L.xi(0);
  auto twisted = [&](Differential flat, Piece zero) {
    ChainElement r = apply_pieces(e, {zero});
    r += apply_pieces(e, flat_pieces(flat, ctx)).times(ctx.rho);
    return r;
  };
  switch (d) {
    case Differential::w_x: return twisted(Differential::w_x0, {CoefOp::mul, xi0, FormOp::wedge, 0, QComplex(1)});
    case Differential::i_x: return twisted(Differential::i_x0, {CoefOp::mul, xi0, FormOp::contract, 0, QComplex(1)});
    case Differential::w_d: return twisted(Differential::w_d0, {CoefOp::diff, xi0, FormOp::wedge, 0, QComplex(1)});
    case Differential::i_d: return twisted(Differential::i_d0, {CoefOp::diff, xi0, FormOp::contract, 0, QComplex(1)});
    case Differential::wt_d: return twisted(Differential::wt_d0, {CoefOp::diff, x0, FormOp::wedge, 0, QComplex(-1)});
    case Differential::it_d: return twisted(Differential::it_d0, {CoefOp::diff, x0, FormOp::contract, 0, QComplex(-1)});
    default: return apply_pieces(e, flat_pieces(d, ctx));
  }
}

ChainElement rotation_generator(const ChainElement& e, int j) {
  const Layout L{e.m()};
  std::vector<Piece> none;
  ChainElement r(e.m());
  for (const auto& [w, p] : e.terms()) {
    r.add(w, p.derivative(L.x(j)).times_variable(L.xi(j)) - p.derivative(L.xi(j)).times_variable(L.x(j)));
    Wedge a, b;
    int sa, sb;
    // e_{2j} ι_{2j−1} − e_{2j−1} ι_{2j}
    if (contract_left(2 * j - 1, w, a, sa) && wedge_left(2 * j, a, b, sb)) r.add(b, p * QComplex(sa * sb));
    if (contract_left(2 * j, w, a, sa) && wedge_left(2 * j - 1, a, b, sb)) r.add(b, p * QComplex(-sa * sb));
  }
  return r;
}

ChainElement twisted_laplacian0(const ChainElement& e, const KoszulContext& ctx) {
  ChainElement r(e.m());
  for (int j = 1; j <= ctx.m(); ++j) r += rotation_generator(e, j) * QComplex(ctx.mu(j));
  return r;
}

ChainElement untwisted_laplacian_xd(const ChainElement& e, const KoszulContext& ctx) {
  return apply_differential(Differential::w_x0, apply_differential(Differential::i_d0, e, ctx), ctx) +
         apply_differential(Differential::i_d0, apply_differential(Differential::w_x0, e, ctx), ctx);
}

ChainElement untwisted_laplacian_dx(const ChainElement& e, const KoszulContext& ctx) {
  return apply_differential(Differential::w_d0, apply_differential(Differential::i_x0, e, ctx), ctx) +
         apply_differential(Differential::i_x0, apply_differential(Differential::w_d0, e, ctx), ctx);
}

namespace {

// Largest |eigenvalue| of D_j on e: degree in (x_j, ξ_j) plus the count of e_{2j−1}, e_{2j}.
int rotation_bound(const ChainElement& e, int j) {
  const Layout L{e.m()};
  int d = 0;
  for (const auto& [w, p] : e.terms()) {
    int f = ((w >> (2 * j - 1)) & 1u) + ((w >> (2 * j)) & 1u);
    for (const auto& [k, c] : p.terms()) d = std::max(d, f + k.e[L.x(j)] + k.e[L.xi(j)]);
  }
  return d;
}

// Splits e into eigencomponents of D_j with eigenvalue iν via Lagrange projectors.
std::map<int, ChainElement> split_rotation(const ChainElement& e, int j) {
  std::map<int, ChainElement> out;
  if (e.is_zero()) return out;
  const int d = rotation_bound(e, j);
  std::vector<ChainElement> krylov{e};
  for (int k = 1; k <= 2 * d; ++k) krylov.push_back(rotation_generator(krylov.back(), j));
  for (int nu = -d; nu <= d; ++nu) {
    // L_ν(z) = Π_{ν' ≠ ν} (z − iν') / (iν − iν')
    std::vector<QComplex> poly{QComplex(1)};
    QComplex denom(1);
    for (int mu = -d; mu <= d; ++mu) {
      if (mu == nu) continue;
      QComplex root(Rational(0), Rational(mu));
      std::vector<QComplex> next(poly.size() + 1);
      for (std::size_t t = 0; t < poly.size(); ++t) {
        next[t + 1] += poly[t];
        next[t] -= poly[t] * root;
      }
      poly = std::move(next);
      denom *= QComplex(Rational(0), Rational(nu - mu));
    }
    ChainElement comp(e.m());
    for (std::size_t t = 0; t < poly.size(); ++t)
      if (!poly[t].is_zero()) comp += krylov[t] * (poly[t] / denom);
    if (!comp.is_zero()) out.emplace(nu, std::move(comp));
  }
  return out;
}

// ξ₀^{-1} ∫₀^{x₀}: every term must carry at least one ξ₀.
ChainElement xi0_integrate(const ChainElement& e) {
  const Layout L{e.m()};
  ChainElement r(e.m());
  for (const auto& [w, p] : e.terms()) {
    Poly q;
    for (const auto& [k, c] : p.terms()) {
      if (k.e[L.xi(0)] == 0) throw std::logic_error("xi0_integrate on a xi0-free term");
      Monomial n = k;
      --n.e[L.xi(0)];
      ++n.e[L.x(0)];
      q.add(n, c / QComplex(long(n.e[L.x(0)])));
    }
    r.add(w, q);
  }
  return r;
}

}  // namespace

HodgeResult hodge_decompose(const ChainElement& u, int target_weight, const KoszulContext& ctx) {
  if (u.m() != ctx.m()) throw std::invalid_argument("chain element and context disagree on m");
  if (ctx.rho.coefficient(Monomial{}).is_zero()) throw std::domain_error("rho(0) = 0");
  const int m = ctx.m();
  const Caps& caps = ctx.caps;
  const Layout L{m};
  HodgeResult res{ChainElement(m), ChainElement(m), ChainElement(m), ChainElement(m)};
  ChainElement v(m);
  const ChainElement ut = u.truncated(caps);
  for (const auto& [w, p] : ut.terms())
    for (const auto& [k, c] : p.terms()) {
      Poly mono;
      mono.add(k, c);
      if (weight(k, m) <= target_weight)
        v.add(w, mono);
      else
        res.residual.add(w, mono);
    }
  if (v.is_zero()) return res;

  const Poly drho = ctx.rho.derivative(L.x(0));
  const Poly rho2_inv = series_op(multiply(ctx.rho, ctx.rho, caps), SeriesOp::invert, caps);
  // K = ξ₀∂₀ + ρ′ e₀∧ i_x⁰, so that Δ̃ = ρ²Δ̃⁰ − K.
  auto T = [&](const ChainElement& y) {
    ChainElement r(m);
    const ChainElement iy = apply_differential(Differential::i_x0, y, ctx);
    for (const auto& [w, p] : iy.terms()) {
      Wedge nw;
      int s;
      if (wedge_left(0, w, nw, s)) r.add(nw, p * drho * QComplex(s));
    }
    return r.truncated(caps);
  };
  auto K = [&](const ChainElement& y) {
    return (y.derivative(L.x(0)).times(Poly::variable(L.xi(0))) + T(y)).truncated(caps);
  };

  // Joint eigen-split in lexicographic order of (ν_1, …, ν_m).
  std::map<std::vector<int>, ChainElement> parts{{{}, v}};
  for (int j = 1; j <= m; ++j) {
    std::map<std::vector<int>, ChainElement> next;
    for (const auto& [key, comp] : parts)
      for (auto& [nu, sub] : split_rotation(comp, j)) {
        auto k2 = key;
        k2.push_back(nu);
        next.emplace(std::move(k2), std::move(sub));
      }
    parts = std::move(next);
  }

  ChainElement y_total(m);
  for (const auto& [key, comp] : parts) {
    Rational lam_im = 0;
    for (int j = 1; j <= m; ++j) lam_im += ctx.mu(j) * key[j - 1];
    if (sgn(lam_im) != 0) {
      // Volterra: y = (ρ²λ)^{-1}(v + K y), finite because K raises the weight.
      const QComplex inv_lam = QComplex(1) / QComplex(Rational(0), lam_im);
      ChainElement y(m);
      for (int it = 0;; ++it) {
        ChainElement next = (comp + K(y)).times(rho2_inv).truncated(caps) * inv_lam;
        if (next == y) break;
        y = std::move(next);
        if (it > caps.weight_cap + 4) throw std::logic_error("hodge_decompose: Volterra series did not terminate");
      }
      y_total += y;
      continue;
    }
    // Kernel of Δ̃⁰: strip ξ₀ powers with ω₀ = (−TP)^j ω, ω₁ = −P Σ_{l<j} (−TP)^l ω.
    std::map<int, ChainElement> by_power;
    for (const auto& [w, p] : comp.terms())
      for (const auto& [k, c] : p.terms()) {
        Poly mono;
        mono.add(k, c);
        auto [it, fresh] = by_power.try_emplace(k.e[L.xi(0)], ChainElement(m));
        it->second.add(w, mono);
      }
    for (const auto& [jpow, omega] : by_power) {
      if (jpow == 0) {
        res.harmonic += omega;
        continue;
      }
      ChainElement psi = omega, acc(m);
      for (int l = 0; l < jpow; ++l) {
        acc += psi;
        psi = T(xi0_integrate(psi)) * QComplex(-1);
      }
      res.harmonic += psi;
      y_total -= xi0_integrate(acc).truncated(caps);
    }
  }
  res.b = y_total;
  res.g = y_total;
  return res;
}

ChainElement hodge_recompose(const HodgeResult& r, const KoszulContext& ctx) {
  ChainElement out = r.harmonic + r.residual;
  out += apply_differential(Differential::i_x, apply_differential(Differential::wt_d, r.b, ctx), ctx);
  out += apply_differential(Differential::wt_d, apply_differential(Differential::i_x, r.g, ctx), ctx);
  return out.truncated(ctx.caps);
}

GradedSymbol quantize_chain(const ChainElement& e, const Caps& caps) {
  const std::size_t dim = std::size_t{1} << e.m();
  GradedSymbol s(caps, dim);
  for (const auto& [w, p] : e.terms()) {
    Multivector mv;
    mv.m = e.m();
    mv.add(w, QComplex(1));
    CMatrix c = clifford_quantize(mv, Quantization::normalized);
    for (const auto& [k, coef] : p.terms()) s.add(k, c * coef);
  }
  return s;
}

ChainElement dequantize_symbol(const GradedSymbol& s, Parity parity) {
  int m = s.m();
  ChainElement out(m);
  for (const auto& [k, M] : s.terms()) {
    Multivector mv = clifford_dequantize_normalized(M, parity);
    for (const auto& [w, c] : mv.terms) {
      Poly p;
      p.add(k, c);
      out.add(w, p);
    }
  }
  return out;
}

}  // namespace magdirac
