// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "magdirac/exact.hpp"
#include "magdirac/phase_space.hpp"

namespace magdirac {

/// Truncated matrix-valued symbol; scalar symbols have dim() == 1.
class GradedSymbol {
 public:
  using Map = std::map<Monomial, CMatrix>;

  GradedSymbol() = default;
  GradedSymbol(const Caps& caps, std::size_t dim) : caps_(caps), dim_(dim) {}

  static GradedSymbol scalar(const Poly& p, const Caps& caps);
  /// Σ p(z) ⊗ M, truncated.
  static GradedSymbol tensor(const Poly& p, const CMatrix& M, const Caps& caps);

  const Caps& caps() const { return caps_; }
  std::size_t dim() const { return dim_; }
  int m() const { return caps_.m; }
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  /// Adds c at the monomial when the caps keep it.
  void add(const Monomial& mon, const CMatrix& c);
  void add(const Monomial& mon, const QComplex& c);

  GradedSymbol& operator+=(const GradedSymbol& o);
  GradedSymbol& operator-=(const GradedSymbol& o);
  GradedSymbol& operator*=(const QComplex& c);
  friend GradedSymbol operator+(GradedSymbol a, const GradedSymbol& b) { return a += b; }
  friend GradedSymbol operator-(GradedSymbol a, const GradedSymbol& b) { return a -= b; }
  friend GradedSymbol operator*(GradedSymbol a, const QComplex& c) { return a *= c; }
  friend bool operator==(const GradedSymbol& a, const GradedSymbol& b) {
    return a.dim_ == b.dim_ && a.t_ == b.t_;
  }

  GradedSymbol with_caps(const Caps& caps) const;
  GradedSymbol weight_part(int w) const;
  GradedSymbol h_free_part() const;
  GradedSymbol divided_by_h() const;
  /// Entry (i, j) as a polynomial.
  Poly entry(std::size_t i, std::size_t j) const;
  int min_weight() const;
  bool is_self_adjoint() const;
  double max_abs() const;
  /// weight → largest coefficient modulus among terms of that weight.
  std::map<int, double> weight_profile() const;

 private:
  Caps caps_;
  std::size_t dim_ = 1;
  Map t_;
};

/// a∗b truncated to the caps of a; throws when the caps differ.
GradedSymbol moyal_product(const GradedSymbol& a, const GradedSymbol& b);
/// a∗b truncated to explicit output caps.
GradedSymbol moyal_product(const GradedSymbol& a, const GradedSymbol& b, const Caps& out);
GradedSymbol moyal_bracket(const GradedSymbol& a, const GradedSymbol& b);
GradedSymbol moyal_bracket(const GradedSymbol& a, const GradedSymbol& b, const Caps& out);

enum class ConjugationMode { scalar_over_h, matrix };

/// e^G t e^{−G} with G = (i/h) g or G = i g, truncated to the caps of t.
/// Scalar mode needs real g with weight ≥ 2 and weight + transverse degree ≥ 3 in every term
/// (this includes O₃); matrix mode needs self-adjoint g in O₁.
GradedSymbol exp_conjugate(const GradedSymbol& g, ConjugationMode mode, const GradedSymbol& t);

/// a + b√2 with rational a, b.
struct Surd2 {
  Rational a;
  Rational b;
  friend bool operator==(const Surd2&, const Surd2&) = default;
};
Surd2 operator+(const Surd2& x, const Surd2& y);
Surd2 operator*(const Surd2& x, const Surd2& y);

/// Affine map z ↦ M z + c on (x_0..x_{2m}, ξ_0..ξ_{2m}) over Q(√2).
struct SymplecticMap {
  int m = 1;
  std::vector<std::vector<Surd2>> matrix;
  std::vector<Surd2> shift;

  static SymplecticMap identity(int m);
  /// Time-π/4 flow of f₀ = −4x₀/π + Σ (x_j x_{j+m} + ξ_j ξ_{j+m}).
  static SymplecticMap f0_quarter(int m);
  bool is_symplectic() const;
};

/// Symbol valued in Q(i)(√2): rational + √2 · surd.
struct SurdSymbol {
  GradedSymbol rational;
  GradedSymbol surd;
};

/// t ∘ S; the map is applied classically, which is exact for affine symplectic S.
SurdSymbol linear_symplectic_substitute(const GradedSymbol& t, const SymplecticMap& S);
SurdSymbol moyal_product(const SurdSymbol& a, const SurdSymbol& b);

struct WilliamsonResult {
  Eigen::MatrixXd Lambda;    ///< generator, e^Λ = M
  Eigen::MatrixXd M;         ///< the Poisson map on (x′, ξ₀, ξ′)
  double two_nu_bar = 0;     ///< 2ν̄
  std::vector<double> symplectic_eigenvalues;
  double residual = 0;       ///< ‖e^{Λᵀ} Q e^{Λ} − model‖_max
};

/// Brings the frozen quadratic form to ξ₀² + 2ν̄ Σ μ_j (x_j² + ξ_j²).
WilliamsonResult williamson_diagonalize(const Eigen::MatrixXd& Q, const std::vector<double>& mu, double tol = 1e-9);

}  // namespace magdirac
