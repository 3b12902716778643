// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace magdirac {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 x) { return x < 0 ? -static_cast<u128>(x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 x) { return x <= kSmallMax && x >= -kSmallMax; }

mpz_class to_mpz(i128 x) {
  u128 u = uabs(x);
  mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
  mpz_class r = (hi << 64) + lo;
  if (x < 0) r = -r;
  return r;
}

}  // namespace

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw std::domain_error("zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  assign(q);
}

void Rational::set_small(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("zero denominator");
  set_wide(n, d);
}

void Rational::set_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n == 0) d = 1;
  if (fits(n) && fits(d)) {
    n_ = static_cast<std::int64_t>(n);
    d_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  big_ = std::move(q);
}

void Rational::assign(const mpq_class& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() > std::numeric_limits<long>::min()) {
    n_ = n.get_si();
    d_ = d.get_si();
    big_.reset();
  } else {
    big_ = q;
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
  return q;
}

mpz_class Rational::get_num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::get_den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
double Rational::get_d() const { return big_ ? big_->get_d() : static_cast<double>(n_) / static_cast<double>(d_); }
int Rational::sign() const { return big_ ? ::sgn(*big_) : (n_ > 0) - (n_ < 0); }

Rational Rational::operator-() const {
  Rational r;
  if (big_) r.assign(mpq_class(-*big_));
  else {
    r.n_ = -n_;
    r.d_ = d_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.n_ == 0) return *this;
    if (n_ == 0) return *this = o;
    if (d_ == 1 && o.d_ == 1) {
      set_wide(static_cast<i128>(n_) + o.n_, 1);
      return *this;
    }
    std::int64_t g = std::gcd(d_, o.d_);
    i128 num = static_cast<i128>(n_) * (o.d_ / g) + static_cast<i128>(o.n_) * (d_ / g);
    i128 den = static_cast<i128>(d_) * (o.d_ / g);
    set_wide(num, den);
    return *this;
  }
  assign(mpq_class(to_mpq() + o.to_mpq()));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    std::int64_t g1 = std::gcd(n_, o.d_), g2 = std::gcd(o.n_, d_);
    i128 num = static_cast<i128>(n_ / g1) * (o.n_ / g2);
    i128 den = static_cast<i128>(d_ / g2) * (o.d_ / g1);
    if (fits(num) && fits(den)) {
      n_ = static_cast<std::int64_t>(num);
      d_ = static_cast<std::int64_t>(den);
    } else {
      set_wide(num, den);
    }
    return *this;
  }
  assign(mpq_class(to_mpq() * o.to_mpq()));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  if (!o.big_) {
    Rational inv;
    inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
    inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
    return *this *= inv;
  }
  assign(mpq_class(to_mpq() / o.to_mpq()));
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.n_) * b.d_, r = static_cast<i128>(b.n_) * a.d_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace magdirac
