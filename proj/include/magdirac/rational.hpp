// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

namespace magdirac {

/// Exact rational number. Values whose numerator and denominator fit in 64 bits
/// stay in machine integers; anything larger is carried by GMP.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) {
    set_wide(static_cast<__int128>(v), 1);
  }
  Rational(long long n, long long d) { set_small(n, d); }
  /// Exact value of a finite double.
  explicit Rational(double x) { assign(mpq_class(x)); }
  explicit Rational(const mpz_class& v) { assign(mpq_class(v)); }
  Rational(const mpz_class& n, const mpz_class& d);
  explicit Rational(const mpq_class& q) { assign(q); }

  bool is_small() const { return !big_; }
  mpq_class to_mpq() const;
  mpz_class get_num() const;
  mpz_class get_den() const;
  double get_d() const;
  int sign() const;
  /// Values are always canonical; kept for call-site compatibility.
  void canonicalize() {}

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_mpq() == b.to_mpq();
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void set_small(std::int64_t n, std::int64_t d);
  /// Stores n/d (already reduced) in the small form when it fits, else in GMP.
  void set_wide(__int128 n, __int128 d);
  void assign(const mpq_class& q);

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::optional<mpq_class> big_;
};

inline int sgn(const Rational& q) { return q.sign(); }
inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

}  // namespace magdirac
