// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

#include "magdirac/koszul.hpp"
#include "magdirac/weyl.hpp"

namespace magdirac {

/// ξ₀σ₀ + ρ Σ s_j (x_j σ_{2j−1} + ξ_j σ_{2j}) with σ_j = iγ_j.
GradedSymbol assemble_H1(const KoszulContext& ctx);

/// d₁ = H₁ + c₀(remainder) + tail.
struct ModelSymbol {
  KoszulContext ctx;
  ChainElement remainder;  ///< real W-valued 1-form, minimal weight ≥ 2
  GradedSymbol tail;       ///< self-adjoint, every term carries h

  GradedSymbol symbol() const;
  void validate() const;
};

struct NormalFormResult {
  GradedSymbol f;        ///< scalar generator
  ChainElement a;        ///< even-form generator
  ChainElement omega;    ///< twisted-harmonic, ξ₀-free odd form
  int achieved_weight = 0;
  int min_weight_a = 0;  ///< smallest weight occurring in a (0 when a = 0)
  long steps = 0;
};

/// e^{ic₀(a)} e^{(i/h)f} d₁ e^{−(i/h)f} e^{−ic₀(a)}.
GradedSymbol conjugate_model(const ModelSymbol& d1, const GradedSymbol& f, const ChainElement& a);

NormalFormResult birkhoff_normal_form(const ModelSymbol& d1, int N);

/// weight → max |coefficient| of conj − (H₁ + c₀(ω)).
std::map<int, double> verify_normal_form(const ModelSymbol& d1, const NormalFormResult& r);

/// Caps for f: one more step of total degree than the symbol caps.
Caps generator_caps(const Caps& caps);

}  // namespace magdirac
