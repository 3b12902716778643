// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/exact.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace magdirac {

namespace {

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view s) {
  std::string str(s);
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + str + "'"); };
  if (s.empty()) return fail();
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + str + "'");
    out = Rational(mpz_class(std::string(num), 10), d);
  } else {
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      if (!all_digits(es) || es.size() > 6) return fail();
      exp10 = std::stol(std::string(es)) * (eneg ? -1 : 1);
      s = s.substr(0, e);
    }
    auto dot = s.find('.');
    std::string digits(s.substr(0, dot));
    if (dot != std::string_view::npos) {
      auto frac = s.substr(dot + 1);
      if (!frac.empty() && !all_digits(frac)) return fail();
      digits += frac;
      exp10 -= static_cast<long>(frac.size());
    }
    if (!all_digits(digits)) return fail();
    out = Rational(mpz_class(digits, 10)) * pow10(exp10);
  }
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

QComplex& QComplex::operator/=(const QComplex& o) {
  Rational d = o.norm2();
  if (sgn(d) == 0) throw std::domain_error("division by zero in Q(i)");
  *this *= o.conj();
  re /= d;
  im /= d;
  return *this;
}

QComplex ipow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = QComplex(1);
  return m;
}

bool CMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const QComplex& c) { return c.is_zero(); });
}

bool CMatrix::is_scalar() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i == j ? (*this)(i, i) != (*this)(0, 0) : !(*this)(i, j).is_zero()) return false;
  return true;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

double CMatrix::max_abs() const {
  double m = 0;
  for (const auto& c : a_) m = std::max(m, c.abs());
  return m;
}

QComplex CMatrix::trace() const {
  QComplex t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(const QComplex& c) {
  for (auto& x : a_) x *= c;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.n_;
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const QComplex& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<QComplex> CMatrix::apply(const std::vector<QComplex>& v) const {
  std::vector<QComplex> r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

CMatrix inverse(const CMatrix& in) {
  const std::size_t n = in.dim();
  CMatrix a = in, inv = CMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw std::runtime_error("singular matrix in exact inverse");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    QComplex piv = QComplex(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= piv;
      inv(c, j) *= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      QComplex f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace magdirac
