// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "magdirac/exact.hpp"

namespace magdirac {

/// Largest m supported by the symbolic calculus.
constexpr int kMaxSymbolicM = 3;
constexpr int kMaxVars = 2 * (2 * kMaxSymbolicM + 1);

/// Variable slots for n = 2m+1. Positions: x_v at v, ξ_v at n+v, where
/// v = 0 is x₀, v = 1..m is x′ and v = m+1..2m is x″.
struct Layout {
  int m = 1;
  int n() const { return 2 * m + 1; }
  int x(int v) const { return v; }
  int xi(int v) const { return n() + v; }
  int nvars() const { return 2 * n(); }
  bool weighted(int var) const;
};

/// Exponents of (x, ξ) plus the power of h in the last slot.
struct Monomial {
  std::array<std::uint8_t, kMaxVars + 1> e{};

  std::uint8_t& h() { return e[kMaxVars]; }
  std::uint8_t h() const { return e[kMaxVars]; }
  auto operator<=>(const Monomial&) const = default;

  Monomial operator*(const Monomial& o) const;
};

/// 2·(h power) + deg ξ₀ + |x′| + |ξ′|.
int weight(const Monomial& mon, int m);
/// deg x₀ + |x″| + |ξ″|.
int transverse_degree(const Monomial& mon, int m);

/// Truncation knobs. A monomial survives when weight ≤ weight_cap and
/// weight + transverse degree ≤ total_cap (default weight_cap + transverse_cap).
struct Caps {
  int m = 1;
  int weight_cap = 4;
  int transverse_cap = 2;
  int total_cap = 6;

  static Caps make(int m, int weight_cap, int transverse_cap);
  bool keep(const Monomial& mon) const;
  Caps widened(int dw, int dt) const;
  Layout layout() const { return {m}; }
  friend bool operator==(const Caps&, const Caps&) = default;
};

/// Sparse polynomial over Q(i) in the phase variables and h.
class Poly {
 public:
  using Map = std::map<Monomial, QComplex>;

  Poly() = default;
  static Poly constant(const QComplex& c);
  static Poly variable(int var, const QComplex& c = QComplex(1));

  void add(const Monomial& mon, const QComplex& c);
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  QComplex coefficient(const Monomial& mon) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const QComplex& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const QComplex& c) { return a *= c; }
  friend Poly operator*(const QComplex& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

  Poly truncated(const Caps& caps) const;
  Poly derivative(int var) const;
  Poly times_variable(int var) const;
  /// x₀ ↦ −x₀.
  Poly reflected_x0() const;
  /// Drops one power of h from every term; throws if a term has none.
  Poly divided_by_h() const;
  Poly times_h() const;
  /// The part of exact weight w.
  Poly weight_part(int w, int m) const;
  int min_weight(int m) const;
  int max_weight(int m) const;
  double max_abs() const;
  bool is_real() const;

 private:
  Map t_;
};

Poly multiply(const Poly& a, const Poly& b, const Caps& caps);

enum class SeriesOp { invert, sqrt, antiderivative_x0 };

/// Truncated series operations on transverse-only coefficients, kept to
/// transverse degree caps.total_cap.
Poly series_op(const Poly& f, SeriesOp op, const Caps& caps);

/// Exact square root of a non-negative rational; throws when not a square.
Rational rational_sqrt(const Rational& q);

/// Human-readable rendering, mostly for diagnostics.
std::string to_string(const Poly& p, int m);

}  // namespace magdirac
