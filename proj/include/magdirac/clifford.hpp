// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "magdirac/exact.hpp"

namespace magdirac {

/// Wedge index set as a bitmask: bit i stands for e_i, i = 0..2m.
using Wedge = std::uint32_t;

inline int wedge_degree(Wedge w) { return __builtin_popcount(w); }
Wedge wedge_of(const std::vector<int>& idx);
std::vector<int> wedge_indices(Wedge w);

/// Sign and result of e_i ∧ w, or nothing when e_i is already present.
bool wedge_left(int i, Wedge w, Wedge& out, int& sign);
/// Sign and result of the interior product ι_{e_i} w.
bool contract_left(int i, Wedge w, Wedge& out, int& sign);

/// Element of the complexified exterior algebra of W = R^{2m+1}.
struct Multivector {
  int m = 1;
  std::map<Wedge, QComplex> terms;

  void add(Wedge w, const QComplex& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.m == b.m && a.terms == b.terms;
  }
};

constexpr int kMaxExactCliffordM = 6;

/// γ_0, …, γ_{2m} on the spinor basis w_k, k ∈ {0,1}^m in lexicographic order.
std::vector<CMatrix> build_gamma(int m);

/// Index of w_k in the spinor basis; k[j-1] is the occupation of w_j.
std::size_t spinor_index(const std::vector<int>& k);
std::vector<int> spinor_occupation(std::size_t idx, int m);

enum class Quantization { raw, normalized };

/// c(a) or, with Quantization::normalized, c₀(a) = Σ_k i^{k(k+1)/2} c(a_k).
CMatrix clifford_quantize(const Multivector& a, Quantization q = Quantization::raw);

enum class Parity { even, odd };

/// The unique a of the given parity with c(a) = M.
Multivector clifford_dequantize(const CMatrix& M, Parity parity);
/// Inverse of c₀ on the given parity.
Multivector clifford_dequantize_normalized(const CMatrix& M, Parity parity);

/// Eigenvectors v = x ± √r2 · y of c((w_r − w̄_r)/√2) on Λ*V_r, eigenvalue ±√r2.
struct InvolutionEigenbasis {
  int m = 1;
  Rational r2;
  std::vector<std::vector<QComplex>> x;
  std::vector<std::vector<QComplex>> y;

  std::vector<std::complex<double>> vector(std::size_t i, int sign) const;
};

InvolutionEigenbasis involution_eigenvectors(const std::vector<Rational>& r);

/// c((w_r − w̄_r)/√2) = i Σ r_j γ_{2j−1}.
CMatrix direction_operator(const std::vector<Rational>& r);

/// ½ Σ μ_j γ_{2j−1} γ_{2j}.
CMatrix curvature_operator(const std::vector<Rational>& mu);

/// The scalar s with c(e_0 ∧ … ∧ e_{2m}) = s·I.
QComplex volume_element_sign(int m);

}  // namespace magdirac
