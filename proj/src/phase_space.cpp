// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/phase_space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace magdirac {

bool Layout::weighted(int var) const {
  if (var == xi(0)) return true;
  int v = var < n() ? var : var - n();
  return v >= 1 && v <= m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < e.size(); ++i) {
    unsigned s = unsigned(e[i]) + o.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

int weight(const Monomial& mon, int m) {
  const Layout L{m};
  int w = 2 * mon.h() + mon.e[L.xi(0)];
  for (int j = 1; j <= m; ++j) w += mon.e[L.x(j)] + mon.e[L.xi(j)];
  return w;
}

int transverse_degree(const Monomial& mon, int m) {
  const Layout L{m};
  int d = mon.e[L.x(0)];
  for (int j = m + 1; j <= 2 * m; ++j) d += mon.e[L.x(j)] + mon.e[L.xi(j)];
  return d;
}

Caps Caps::make(int m, int weight_cap, int transverse_cap) {
  if (m < 1 || m > kMaxSymbolicM) throw std::out_of_range("symbolic calculus supports 1 <= m <= 3");
  if (weight_cap < 0 || transverse_cap < 0) throw std::invalid_argument("caps must be non-negative");
  return {m, weight_cap, transverse_cap, weight_cap + transverse_cap};
}

bool Caps::keep(const Monomial& mon) const {
  int w = weight(mon, m);
  return w <= weight_cap && w + transverse_degree(mon, m) <= total_cap;
}

Caps Caps::widened(int dw, int dt) const {
  Caps c = *this;
  c.weight_cap += dw;
  c.transverse_cap += dt;
  c.total_cap += dw + dt;
  return c;
}

Poly Poly::constant(const QComplex& c) {
  Poly p;
  p.add(Monomial{}, c);
  return p;
}

Poly Poly::variable(int var, const QComplex& c) {
  Monomial mon;
  mon.e[var] = 1;
  Poly p;
  p.add(mon, c);
  return p;
}

void Poly::add(const Monomial& mon, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(mon, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

QComplex Poly::coefficient(const Monomial& mon) const {
  auto it = t_.find(mon);
  return it == t_.end() ? QComplex() : it->second;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [k, c] : o.t_) add(k, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [k, c] : o.t_) add(k, -c);
  return *this;
}

Poly& Poly::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, v] : t_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [k, v] : r.t_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_) r.add(ka * kb, ca * cb);
  return r;
}

Poly multiply(const Poly& a, const Poly& b, const Caps& caps) {
  Poly r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      Monomial k = ka * kb;
      if (caps.keep(k)) r.add(k, ca * cb);
    }
  return r;
}

Poly Poly::truncated(const Caps& caps) const {
  Poly r;
  for (const auto& [k, c] : t_)
    if (caps.keep(k)) r.t_.emplace(k, c);
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  for (const auto& [k, c] : t_) {
    if (k.e[var] == 0) continue;
    Monomial d = k;
    --d.e[var];
    r.add(d, c * QComplex(long(k.e[var])));
  }
  return r;
}

Poly Poly::times_variable(int var) const {
  Poly r;
  for (const auto& [k, c] : t_) {
    Monomial d = k;
    ++d.e[var];
    r.t_.emplace(d, c);
  }
  return r;
}

Poly Poly::reflected_x0() const {
  Poly r = *this;
  for (auto& [k, c] : r.t_)
    if (k.e[0] % 2) c = -c;
  return r;
}

Poly Poly::divided_by_h() const {
  Poly r;
  for (const auto& [k, c] : t_) {
    if (k.h() == 0) throw std::logic_error("term without a factor of h");
    Monomial d = k;
    --d.h();
    r.t_.emplace(d, c);
  }
  return r;
}

Poly Poly::times_h() const {
  Poly r;
  for (const auto& [k, c] : t_) {
    Monomial d = k;
    ++d.h();
    r.t_.emplace(d, c);
  }
  return r;
}

Poly Poly::weight_part(int w, int m) const {
  Poly r;
  for (const auto& [k, c] : t_)
    if (weight(k, m) == w) r.t_.emplace(k, c);
  return r;
}

int Poly::min_weight(int m) const {
  int w = std::numeric_limits<int>::max();
  for (const auto& [k, c] : t_) w = std::min(w, weight(k, m));
  return w;
}

int Poly::max_weight(int m) const {
  int w = -1;
  for (const auto& [k, c] : t_) w = std::max(w, weight(k, m));
  return w;
}

double Poly::max_abs() const {
  double r = 0;
  for (const auto& [k, c] : t_) r = std::max(r, c.abs());
  return r;
}

bool Poly::is_real() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

Rational rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw std::domain_error("square root of a negative rational");
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) throw std::domain_error("not a rational square: " + format_rational(q));
  return Rational(rn, rd);
}

namespace {

void require_transverse(const Poly& f, int m) {
  for (const auto& [k, c] : f.terms())
    if (weight(k, m) != 0) throw std::invalid_argument("series_op expects a transverse-only series");
}

}  // namespace

Poly series_op(const Poly& f, SeriesOp op, const Caps& caps) {
  require_transverse(f, caps.m);
  if (op == SeriesOp::antiderivative_x0) {
    Poly r;
    for (const auto& [k, c] : f.terms()) {
      Monomial d = k;
      ++d.e[0];
      r.add(d, c / QComplex(long(d.e[0])));
    }
    return r.truncated(caps);
  }
  QComplex c0 = f.coefficient(Monomial{});
  if (c0.is_zero()) throw std::domain_error("series has zero constant term");
  Poly u = f;
  u.add(Monomial{}, -c0);
  u *= QComplex(1) / c0;  // f = c0 (1 + u)
  // (1 + u)^α = Σ binom(α, k) u^k with α = −1 or ½; u has no constant term so this terminates.
  Rational alpha = op == SeriesOp::invert ? Rational(-1) : Rational(1, 2);
  QComplex lead = c0;
  if (op == SeriesOp::invert) {
    lead = QComplex(1) / c0;
  } else {
    if (!c0.is_real()) throw std::domain_error("sqrt needs a real constant term");
    lead = QComplex(rational_sqrt(c0.re));
  }
  Poly sum = Poly::constant(QComplex(1)), power = Poly::constant(QComplex(1));
  Rational binom = 1;
  for (int k = 1;; ++k) {
    power = multiply(power, u, caps);
    if (power.is_zero()) break;
    binom *= (alpha - (k - 1)) / Rational(k);
    sum += power * QComplex(binom);
  }
  return (sum * lead).truncated(caps);
}

std::string to_string(const Poly& p, int m) {
  if (p.is_zero()) return "0";
  const Layout L{m};
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_rational(c.re);
    if (sgn(c.im) != 0) os << (sgn(c.im) > 0 ? "+" : "-") << format_rational(abs(c.im)) << "i";
    os << ")";
    if (k.h()) os << "*h^" << int(k.h());
    for (int v = 0; v < L.n(); ++v) {
      if (k.e[L.x(v)]) os << "*x" << v << "^" << int(k.e[L.x(v)]);
      if (k.e[L.xi(v)]) os << "*xi" << v << "^" << int(k.e[L.xi(v)]);
    }
  }
  return os.str();
}

}  // namespace magdirac
