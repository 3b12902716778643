// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "magdirac/clifford.hpp"
#include "magdirac/phase_space.hpp"
#include "magdirac/weyl.hpp"

namespace magdirac {

/// Λ W-valued polynomial: wedge set over {e_0, …, e_{2m}} → coefficient.
class ChainElement {
 public:
  using Map = std::map<Wedge, Poly>;

  ChainElement() = default;
  explicit ChainElement(int m) : m_(m) {}
  static ChainElement form(int m, Wedge w, const Poly& p);

  int m() const { return m_; }
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Poly coefficient(Wedge w) const;

  void add(Wedge w, const Poly& p);
  ChainElement& operator+=(const ChainElement& o);
  ChainElement& operator-=(const ChainElement& o);
  ChainElement& operator*=(const QComplex& c);
  friend ChainElement operator+(ChainElement a, const ChainElement& b) { return a += b; }
  friend ChainElement operator-(ChainElement a, const ChainElement& b) { return a -= b; }
  friend ChainElement operator*(ChainElement a, const QComplex& c) { return a *= c; }
  friend ChainElement operator*(const QComplex& c, ChainElement a) { return a *= c; }
  friend bool operator==(const ChainElement& a, const ChainElement& b) { return a.m_ == b.m_ && a.t_ == b.t_; }

  ChainElement truncated(const Caps& caps) const;
  ChainElement reflected_x0() const;
  ChainElement weight_part(int w) const;
  ChainElement degree_part(int k) const;
  ChainElement h_free_part() const;
  ChainElement h_part() const;
  ChainElement divided_by_h() const;
  ChainElement times_h() const;
  ChainElement derivative(int var) const;
  /// Multiplies every coefficient by a scalar polynomial.
  ChainElement times(const Poly& p) const;
  int min_weight() const;
  int max_weight() const;
  bool is_real() const;
  double max_abs() const;

 private:
  int m_ = 1;
  Map t_;
};

/// Shared data of the Koszul operators: caps, s_j = μ_j^{1/2} and ρ = (2ν̄)^{1/2}.
struct KoszulContext {
  Caps caps;
  std::vector<Rational> s;
  Poly rho;

  static KoszulContext make(const Caps& caps, std::vector<Rational> s, Poly rho);
  static KoszulContext flat(const Caps& caps, std::vector<Rational> s);
  int m() const { return caps.m; }
  Rational mu(int j) const { return s[j - 1] * s[j - 1]; }
  /// Same data with ρ replaced by ρ ∘ (x₀ ↦ −x₀).
  KoszulContext reflected() const;
};

enum class Differential {
  w_x0, i_x0, w_d0, i_d0, wt_d0, it_d0,
  w_x, i_x, w_d, i_d, wt_d, it_d
};

Differential parse_differential(const std::string& name);
std::string differential_name(Differential d);
bool is_wedge_type(Differential d);

/// Applies the named operator exactly, without truncating.
ChainElement apply_differential(Differential d, const ChainElement& e, const KoszulContext& ctx);

/// Σ μ_j [ξ_j ∂x_j − x_j ∂ξ_j + e_{2j} ι_{2j−1} − e_{2j−1} ι_{2j}].
ChainElement twisted_laplacian0(const ChainElement& e, const KoszulContext& ctx);
/// The per-pair rotation generator D_j (so that Δ̃⁰ = Σ μ_j D_j).
ChainElement rotation_generator(const ChainElement& e, int j);

/// The two untwisted compositions w_x⁰ i_∂⁰ + i_∂⁰ w_x⁰ and w_∂⁰ i_x⁰ + i_x⁰ w_∂⁰.
ChainElement untwisted_laplacian_xd(const ChainElement& e, const KoszulContext& ctx);
ChainElement untwisted_laplacian_dx(const ChainElement& e, const KoszulContext& ctx);

struct HodgeResult {
  ChainElement harmonic;
  ChainElement b;
  ChainElement g;
  ChainElement residual;
};

/// u = harmonic + i_x w̃_∂ b + w̃_∂ i_x g + residual, exact within ctx.caps.
HodgeResult hodge_decompose(const ChainElement& u, int target_weight, const KoszulContext& ctx);

/// harmonic + i_x w̃_∂ b + w̃_∂ i_x g + residual, truncated to the caps.
ChainElement hodge_recompose(const HodgeResult& r, const KoszulContext& ctx);

/// c₀ applied termwise: Σ p_w(z) ⊗ c₀(e_w).
GradedSymbol quantize_chain(const ChainElement& e, const Caps& caps);
/// Inverse of quantize_chain on odd or even forms.
ChainElement dequantize_symbol(const GradedSymbol& s, Parity parity);

}  // namespace magdirac
