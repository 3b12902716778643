// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "magdirac/rational.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace magdirac {

/// Parses "p/q", an integer, or a finite decimal ("0.25", "1e-3") exactly.
Rational parse_rational(std::string_view s);
/// Canonical "p/q" form; integers print without a denominator.
std::string format_rational(const Rational& q);

/// Exact element of Q(i).
struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(Rational r) : re(std::move(r)), im(0) {}
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  QComplex(long r) : re(r), im(0) {}
  QComplex(int r) : re(r), im(0) {}

  static QComplex I() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  QComplex conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  QComplex operator-() const { return {-re, -im}; }
  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

/// i^k for any integer k.
QComplex ipow(long k);

/// Dense square matrix over Q(i), row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  QComplex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const QComplex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const;
  bool is_scalar() const;
  CMatrix adjoint() const;
  bool is_hermitian() const { return *this == adjoint(); }
  double max_abs() const;
  QComplex trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(const QComplex& c);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, const QComplex& c) { return a *= c; }
  friend CMatrix operator*(const QComplex& c, CMatrix a) { return a *= c; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix& a, const CMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

  std::vector<QComplex> apply(const std::vector<QComplex>& v) const;

 private:
  std::size_t n_ = 0;
  std::vector<QComplex> a_;
};

/// Exact inverse by Gauss-Jordan elimination; throws if singular.
CMatrix inverse(const CMatrix& a);

}  // namespace magdirac
