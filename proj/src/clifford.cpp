// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/clifford.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace magdirac {

Wedge wedge_of(const std::vector<int>& idx) {
  Wedge w = 0;
  for (int i : idx) {
    if (i < 0 || i > 30 || (w >> i & 1u)) throw std::invalid_argument("bad wedge index set");
    w |= 1u << i;
  }
  return w;
}

std::vector<int> wedge_indices(Wedge w) {
  std::vector<int> r;
  for (int i = 0; w >> i; ++i)
    if (w >> i & 1u) r.push_back(i);
  return r;
}

bool wedge_left(int i, Wedge w, Wedge& out, int& sign) {
  if (w >> i & 1u) return false;
  sign = (__builtin_popcount(w & ((1u << i) - 1)) & 1) ? -1 : 1;
  out = w | (1u << i);
  return true;
}

bool contract_left(int i, Wedge w, Wedge& out, int& sign) {
  if (!(w >> i & 1u)) return false;
  sign = (__builtin_popcount(w & ((1u << i) - 1)) & 1) ? -1 : 1;
  out = w & ~(1u << i);
  return true;
}

void Multivector::add(Wedge w, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

std::size_t spinor_index(const std::vector<int>& k) {
  std::size_t idx = 0;
  for (int b : k) idx = idx * 2 + (b ? 1 : 0);
  return idx;
}

std::vector<int> spinor_occupation(std::size_t idx, int m) {
  std::vector<int> k(m);
  for (int j = m - 1; j >= 0; --j, idx >>= 1) k[j] = static_cast<int>(idx & 1);
  return k;
}

namespace {

void check_m(int m) {
  if (m < 1 || m > kMaxExactCliffordM)
    throw std::out_of_range("m must lie in 1.." + std::to_string(kMaxExactCliffordM) + ", got " + std::to_string(m));
}

// Spinor occupations double as a bitmask with w_j at bit j-1.
std::uint32_t occ_mask(std::size_t idx, int m) {
  std::uint32_t mask = 0;
  for (int j = 1; j <= m; ++j)
    if (idx >> (m - j) & 1u) mask |= 1u << (j - 1);
  return mask;
}

std::size_t mask_index(std::uint32_t mask, int m) {
  std::size_t idx = 0;
  for (int j = 1; j <= m; ++j) idx = idx * 2 + (mask >> (j - 1) & 1u);
  return idx;
}

}  // namespace

std::vector<CMatrix> build_gamma(int m) {
  check_m(m);
  const std::size_t n = std::size_t{1} << m;
  std::vector<CMatrix> g(2 * m + 1, CMatrix(n));
  const QComplex I = QComplex::I();
  for (std::size_t col = 0; col < n; ++col) {
    std::uint32_t mask = occ_mask(col, m);
    g[0](col, col) = (__builtin_popcount(mask) % 2 == 0) ? I : -I;
    for (int j = 1; j <= m; ++j) {
      int below = __builtin_popcount(mask & ((1u << (j - 1)) - 1));
      QComplex s(below % 2 ? -1 : 1);
      if (mask >> (j - 1) & 1u) {
        // ι_{w̄_j}: c(e_{2j}) gets −ι, c(e_{2j−1}) gets −iι.
        std::size_t row = mask_index(mask & ~(1u << (j - 1)), m);
        g[2 * j](row, col) += -s;
        g[2 * j - 1](row, col) += -I * s;
      } else {
        std::size_t row = mask_index(mask | (1u << (j - 1)), m);
        g[2 * j](row, col) += s;
        g[2 * j - 1](row, col) += -I * s;
      }
    }
  }
  return g;
}

CMatrix clifford_quantize(const Multivector& a, Quantization q) {
  auto g = build_gamma(a.m);
  const std::size_t n = std::size_t{1} << a.m;
  CMatrix out(n);
  for (const auto& [w, c] : a.terms) {
    if (w >> (2 * a.m + 1)) throw std::invalid_argument("multivector index exceeds 2m");
    CMatrix p = CMatrix::identity(n);
    for (int i : wedge_indices(w)) p = p * g[i];
    int k = wedge_degree(w);
    QComplex coef = q == Quantization::normalized ? c * ipow(k * (k + 1) / 2) : c;
    out += p * coef;
  }
  return out;
}

Multivector clifford_dequantize(const CMatrix& M, Parity parity) {
  int m = 0;
  while ((std::size_t{1} << m) < M.dim()) ++m;
  if ((std::size_t{1} << m) != M.dim()) throw std::invalid_argument("matrix size is not a power of two");
  check_m(m);
  auto g = build_gamma(m);
  const std::size_t n = M.dim();
  Multivector a;
  a.m = m;
  // Same-parity products of distinct gammas are trace-orthogonal with norm 2^m.
  const Rational inv_n(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
  for (Wedge w = 0; w < (1u << (2 * m + 1)); ++w) {
    if ((wedge_degree(w) % 2 == 0) != (parity == Parity::even)) continue;
    CMatrix p = CMatrix::identity(n);
    for (int i : wedge_indices(w)) p = p * g[i];
    QComplex t;
    CMatrix pa = p.adjoint();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (!pa(i, k).is_zero() && !M(k, i).is_zero()) t += pa(i, k) * M(k, i);
    a.add(w, t * QComplex(inv_n));
  }
  if (clifford_quantize(a) != M) throw std::runtime_error("clifford_dequantize: change of basis failed");
  return a;
}

Multivector clifford_dequantize_normalized(const CMatrix& M, Parity parity) {
  Multivector raw = clifford_dequantize(M, parity), out;
  out.m = raw.m;
  for (const auto& [w, c] : raw.terms) {
    int k = wedge_degree(w);
    out.add(w, c / ipow(k * (k + 1) / 2));
  }
  return out;
}

CMatrix direction_operator(const std::vector<Rational>& r) {
  const int m = static_cast<int>(r.size());
  auto g = build_gamma(m);
  CMatrix t(std::size_t{1} << m);
  for (int j = 1; j <= m; ++j) t += g[2 * j - 1] * (QComplex::I() * QComplex(r[j - 1]));
  return t;
}

InvolutionEigenbasis involution_eigenvectors(const std::vector<Rational>& r) {
  const int m = static_cast<int>(r.size());
  check_m(m);
  InvolutionEigenbasis out;
  out.m = m;
  out.r2 = 0;
  std::uint32_t support = 0;
  for (int j = 1; j <= m; ++j)
    if (sgn(r[j - 1]) != 0) {
      out.r2 += r[j - 1] * r[j - 1];
      support |= 1u << (j - 1);
    }
  if (sgn(out.r2) == 0) throw std::invalid_argument("direction vector must be nonzero");
  CMatrix t = direction_operator(r);
  const std::size_t n = std::size_t{1} << m;
  const QComplex inv_r2(1 / out.r2);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::uint32_t mask = occ_mask(idx, m);
    if ((mask & ~support) || __builtin_popcount(mask) % 2) continue;
    std::vector<QComplex> x(n);
    x[idx] = QComplex(1);
    auto y = t.apply(x);
    for (auto& c : y) c *= inv_r2;
    out.x.push_back(std::move(x));
    out.y.push_back(std::move(y));
  }
  return out;
}

std::vector<std::complex<double>> InvolutionEigenbasis::vector(std::size_t i, int sign) const {
  const double s = sign * std::sqrt(r2.get_d());
  std::vector<std::complex<double>> v(x[i].size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = x[i][k].to_complex() + s * y[i][k].to_complex();
  return v;
}

CMatrix curvature_operator(const std::vector<Rational>& mu) {
  const int m = static_cast<int>(mu.size());
  auto g = build_gamma(m);
  CMatrix r(std::size_t{1} << m);
  for (int j = 1; j <= m; ++j) r += (g[2 * j - 1] * g[2 * j]) * QComplex(Rational(mu[j - 1] / 2));
  return r;
}

QComplex volume_element_sign(int m) {
  Multivector v;
  v.m = m;
  v.add((1u << (2 * m + 1)) - 1, QComplex(1));
  CMatrix c = clifford_quantize(v);
  if (!c.is_scalar()) throw std::runtime_error("volume element is not scalar");
  return c(0, 0);
}

}  // namespace magdirac
