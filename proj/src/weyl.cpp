// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/weyl.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace magdirac {

namespace {

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.dim() == b.dim()) return a * b;
  if (a.dim() == 1) return b * a(0, 0);
  if (b.dim() == 1) return a * b(0, 0);
  throw std::invalid_argument("matrix symbol dimension mismatch");
}

void check_compatible(const GradedSymbol& a, const GradedSymbol& b) {
  if (a.m() != b.m()) throw std::invalid_argument("symbols live over different m");
  if (a.dim() != b.dim() && a.dim() != 1 && b.dim() != 1) throw std::invalid_argument("symbol matrix sizes differ");
}

}  // namespace

GradedSymbol GradedSymbol::scalar(const Poly& p, const Caps& caps) {
  return tensor(p, CMatrix::identity(1), caps);
}

GradedSymbol GradedSymbol::tensor(const Poly& p, const CMatrix& M, const Caps& caps) {
  GradedSymbol s(caps, M.dim());
  for (const auto& [k, c] : p.terms()) s.add(k, M * c);
  return s;
}

void GradedSymbol::add(const Monomial& mon, const CMatrix& c) {
  if (!caps_.keep(mon) || c.is_zero()) return;
  if (c.dim() != dim_) {
    if (c.dim() == 1 && dim_ > 1) {
      add(mon, CMatrix::identity(dim_) * c(0, 0));
      return;
    }
    throw std::invalid_argument("coefficient matrix has the wrong size");
  }
  auto [it, fresh] = t_.try_emplace(mon, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

void GradedSymbol::add(const Monomial& mon, const QComplex& c) { add(mon, CMatrix::identity(dim_) * c); }

GradedSymbol& GradedSymbol::operator+=(const GradedSymbol& o) {
  if (o.dim_ > dim_) {
    GradedSymbol w(caps_, o.dim_);
    for (const auto& [k, c] : t_) w.add(k, c);
    *this = std::move(w);
  }
  for (const auto& [k, c] : o.t_) add(k, c);
  return *this;
}

GradedSymbol& GradedSymbol::operator-=(const GradedSymbol& o) {
  GradedSymbol neg = o;
  neg *= QComplex(-1);
  return *this += neg;
}

GradedSymbol& GradedSymbol::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, v] : t_) v *= c;
  return *this;
}

GradedSymbol GradedSymbol::with_caps(const Caps& caps) const {
  GradedSymbol r(caps, dim_);
  for (const auto& [k, c] : t_) r.add(k, c);
  return r;
}

GradedSymbol GradedSymbol::weight_part(int w) const {
  GradedSymbol r(caps_, dim_);
  for (const auto& [k, c] : t_)
    if (weight(k, m()) == w) r.t_.emplace(k, c);
  return r;
}

GradedSymbol GradedSymbol::h_free_part() const {
  GradedSymbol r(caps_, dim_);
  for (const auto& [k, c] : t_)
    if (k.h() == 0) r.t_.emplace(k, c);
  return r;
}

GradedSymbol GradedSymbol::divided_by_h() const {
  GradedSymbol r(caps_, dim_);
  for (const auto& [k, c] : t_) {
    if (k.h() == 0) throw std::logic_error("symbol term without a factor of h");
    Monomial d = k;
    --d.h();
    r.add(d, c);
  }
  return r;
}

Poly GradedSymbol::entry(std::size_t i, std::size_t j) const {
  Poly p;
  for (const auto& [k, c] : t_) p.add(k, c(i, j));
  return p;
}

int GradedSymbol::min_weight() const {
  int w = std::numeric_limits<int>::max();
  for (const auto& [k, c] : t_) w = std::min(w, weight(k, m()));
  return w;
}

bool GradedSymbol::is_self_adjoint() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_hermitian(); });
}

double GradedSymbol::max_abs() const {
  double r = 0;
  for (const auto& [k, c] : t_) r = std::max(r, c.max_abs());
  return r;
}

std::map<int, double> GradedSymbol::weight_profile() const {
  std::map<int, double> prof;
  for (int w = 0; w <= caps_.weight_cap; ++w) prof[w] = 0;
  for (const auto& [k, c] : t_) {
    double& slot = prof[weight(k, m())];
    slot = std::max(slot, c.max_abs());
  }
  return prof;
}

GradedSymbol moyal_product(const GradedSymbol& a, const GradedSymbol& b) {
  if (!(a.caps() == b.caps())) throw std::invalid_argument("moyal_product: cap mismatch");
  return moyal_product(a, b, a.caps());
}

namespace {

/// Exact rational carried in 128-bit integers, switching to GMP on overflow.
class SmallFrac {
 public:
  SmallFrac() = default;

  void mul(long long num, long long den) {
    if (!big_ && !__builtin_mul_overflow(n_, static_cast<__int128>(num), &n_) &&
        !__builtin_mul_overflow(d_, static_cast<__int128>(den), &d_) && within(n_) && within(d_))
      return;
    promote();
    q_ *= Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  }
  void negate() {
    if (big_) q_ = -q_;
    else n_ = -n_;
  }
  Rational value() const {
    if (big_) return q_;
    Rational r(to_mpz(n_), to_mpz(d_));
    r.canonicalize();
    return r;
  }

 private:
  static bool within(__int128 x) { return x < (static_cast<__int128>(1) << 100) && x > -(static_cast<__int128>(1) << 100); }
  static mpz_class to_mpz(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }
  void promote() {
    if (big_) return;
    q_ = value();
    big_ = true;
  }

  __int128 n_ = 1, d_ = 1;
  bool big_ = false;
  Rational q_;
};

/// c · i^k · M.
CMatrix scaled(const CMatrix& M, const Rational& c, int k) {
  CMatrix r(M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i)
    for (std::size_t j = 0; j < M.dim(); ++j) {
      const QComplex& z = M(i, j);
      QComplex& out = r(i, j);
      switch (k & 3) {
        case 0: out = {z.re * c, z.im * c}; break;
        case 1: out = {-z.im * c, z.re * c}; break;
        case 2: out = {-z.re * c, -z.im * c}; break;
        default: out = {z.im * c, -z.re * c}; break;
      }
    }
  return r;
}

/// Enumerates the Moyal contractions of ka (left) with kb (right) that survive
/// the output caps. emit(monomial, c, k) receives the coefficient c · i^k.
template <class Emit>
void for_each_contraction(const Monomial& ka, const Monomial& kb, const Caps& out, Emit&& emit) {
  const int m = out.m;
  const Layout L{m};
  const int n = L.n();
  Monomial base = ka * kb;
  int w0 = weight(base, m);
  if (w0 > out.weight_cap || w0 + transverse_degree(base, m) > out.total_cap) return;
  // Per conjugate pair v, a contraction of order k = p + q shifts the weight by
  // k for (x₀, ξ₀), 0 for (x′, ξ′) and 2k for (x″, ξ″); the total is unchanged.
  auto dweight = [&](int v) { return v == 0 ? 1 : (v <= m ? 0 : 2); };
  auto rec = [&](auto&& self, int v, Monomial mon, SmallFrac coef, int ktot, int w) -> void {
    if (v == n) {
      emit(mon, coef, ktot);
      return;
    }
    const int ax = ka.e[L.x(v)], axi = ka.e[L.xi(v)], bx = kb.e[L.x(v)], bxi = kb.e[L.xi(v)];
    const int pmax = std::min(ax, bxi), qmax = std::min(axi, bx);
    for (int p = 0; p <= pmax; ++p) {
      for (int q = 0; q <= qmax; ++q) {
        const int k = p + q;
        const int wk = w + dweight(v) * k;
        if (wk > out.weight_cap) break;
        if (k == 0) {
          self(self, v + 1, mon, coef, ktot, w);
          continue;
        }
        // (ih/2)^k (−1)^q / (p! q!) · falling factorials of the four derivatives
        long long num = 1, den = 1LL << k;
        for (int t = 0; t < p; ++t) num *= static_cast<long long>(ax - t) * (bxi - t);
        for (int t = 0; t < q; ++t) num *= static_cast<long long>(axi - t) * (bx - t);
        for (int t = 2; t <= p; ++t) den *= t;
        for (int t = 2; t <= q; ++t) den *= t;
        SmallFrac c = coef;
        c.mul(num, den);
        if (q % 2) c.negate();
        Monomial nm = mon;
        nm.e[L.x(v)] = static_cast<std::uint8_t>(nm.e[L.x(v)] - k);
        nm.e[L.xi(v)] = static_cast<std::uint8_t>(nm.e[L.xi(v)] - k);
        nm.h() = static_cast<std::uint8_t>(nm.h() + k);
        self(self, v + 1, nm, c, ktot + k, wk);
      }
    }
  };
  rec(rec, 0, base, SmallFrac{}, 0, w0);
}

}  // namespace

GradedSymbol moyal_product(const GradedSymbol& a, const GradedSymbol& b, const Caps& out) {
  check_compatible(a, b);
  GradedSymbol r(out, std::max(a.dim(), b.dim()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::optional<CMatrix> prod;
      for_each_contraction(ka, kb, out, [&](const Monomial& mon, const SmallFrac& c, int k) {
        if (!prod) prod = mat_mul(ca, cb);
        r.add(mon, scaled(*prod, c.value(), k));
      });
    }
  return r;
}

GradedSymbol moyal_bracket(const GradedSymbol& a, const GradedSymbol& b) {
  if (!(a.caps() == b.caps())) throw std::invalid_argument("moyal_bracket: cap mismatch");
  return moyal_bracket(a, b, a.caps());
}

GradedSymbol moyal_bracket(const GradedSymbol& a, const GradedSymbol& b, const Caps& out) {
  check_compatible(a, b);
  // Swapping the factors flips the sign of every order-k contraction by (−1)^k,
  // so each term contributes c i^k (AB − (−1)^k BA).
  GradedSymbol r(out, std::max(a.dim(), b.dim()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::optional<CMatrix> even, odd;
      const bool commuting = ca.dim() == 1 || cb.dim() == 1;
      for_each_contraction(ka, kb, out, [&](const Monomial& mon, const SmallFrac& c, int k) {
        if (commuting && k % 2 == 0) return;
        if (!even) {
          CMatrix ab = mat_mul(ca, cb), ba = mat_mul(cb, ca);
          even = ab - ba;
          odd = ab + ba;
        }
        const CMatrix& d = k % 2 ? *odd : *even;
        if (!d.is_zero()) r.add(mon, scaled(d, c.value(), k));
      });
    }
  return r;
}

GradedSymbol exp_conjugate(const GradedSymbol& g, ConjugationMode mode, const GradedSymbol& t) {
  if (g.m() != t.m()) throw std::invalid_argument("exp_conjugate: m mismatch");
  if (g.is_zero()) return t;
  const Caps& caps = t.caps();
  std::function<GradedSymbol(const GradedSymbol&)> ad;
  if (mode == ConjugationMode::scalar_over_h) {
    if (g.dim() != 1) throw std::invalid_argument("scalar_over_h mode needs a scalar generator");
    // Each term needs weight ≥ 2 and weight + transverse degree ≥ 3. Then no Moyal term of (i/h)ad_g lowers
    // the weight and each raises weight + transverse degree, so the series is exact under the caps and
    // terminates. O_3 satisfies this; ξ₀-stripped generators such as x₀²ξ₀ do too.
    for (const auto& [k, c] : g.terms()) {
      const int w = weight(k, g.m());
      if (w < 2 || w + transverse_degree(k, g.m()) < 3)
        throw std::invalid_argument("scalar_over_h generator must have weight >= 2 and weight + transverse degree >= 3 in every term");
    }
    if (!g.is_self_adjoint()) throw std::invalid_argument("scalar_over_h generator must be real");
    // The bracket is divisible by h; compute it two weight steps wider so the quotient is exact.
    const Caps wide = caps.widened(2, 0);
    ad = [&, wide](const GradedSymbol& x) {
      GradedSymbol br = moyal_bracket(g, x.with_caps(wide), wide).divided_by_h();
      return br.with_caps(caps) * QComplex::I();
    };
  } else {
    if (g.min_weight() < 1) throw std::invalid_argument("matrix generator must lie in O_1");
    if (!g.is_self_adjoint()) throw std::invalid_argument("matrix generator must be self-adjoint");
    ad = [&](const GradedSymbol& x) { return moyal_bracket(g, x, caps) * QComplex::I(); };
  }
  GradedSymbol result = t, term = t;
  for (long k = 1;; ++k) {
    term = ad(term) * QComplex(Rational(1, k));
    if (term.is_zero()) break;
    result += term;
    if (k > 4 * (caps.weight_cap + caps.total_cap) + 8)
      throw std::logic_error("exp_conjugate: adjoint series failed to terminate");
  }
  return result;
}

Surd2 operator+(const Surd2& x, const Surd2& y) { return {x.a + y.a, x.b + y.b}; }
Surd2 operator*(const Surd2& x, const Surd2& y) { return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a}; }

SymplecticMap SymplecticMap::identity(int m) {
  SymplecticMap s;
  s.m = m;
  const int N = 2 * (2 * m + 1);
  s.matrix.assign(N, std::vector<Surd2>(N, Surd2{0, 0}));
  s.shift.assign(N, Surd2{0, 0});
  for (int i = 0; i < N; ++i) s.matrix[i][i] = {1, 0};
  return s;
}

SymplecticMap SymplecticMap::f0_quarter(int m) {
  SymplecticMap s = identity(m);
  const Layout L{m};
  s.shift[L.xi(0)] = {1, 0};
  const Surd2 h{0, Rational(1, 2)};  // 1/√2
  const Surd2 mh{0, Rational(-1, 2)};
  for (int j = 1; j <= m; ++j) {
    int xj = L.x(j), xij = L.xi(j), xk = L.x(j + m), xik = L.xi(j + m);
    for (int v : {xj, xij, xk, xik}) s.matrix[v][v] = {0, 0};
    s.matrix[xj][xj] = h;
    s.matrix[xj][xik] = h;
    s.matrix[xij][xk] = mh;
    s.matrix[xij][xij] = h;
    s.matrix[xk][xk] = h;
    s.matrix[xk][xij] = h;
    s.matrix[xik][xj] = mh;
    s.matrix[xik][xik] = h;
  }
  return s;
}

bool SymplecticMap::is_symplectic() const {
  // The Poisson matrix J of (x, ξ) must satisfy M J Mᵀ = J.
  const int n = 2 * m + 1, N = 2 * n;
  if (static_cast<int>(matrix.size()) != N) return false;
  auto J = [n](int i, int j) -> Rational {
    if (j == i + n) return 1;
    if (i == j + n) return -1;
    return 0;
  };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Surd2 acc{0, 0};
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          Rational jkl = J(k, l);
          if (sgn(jkl) == 0) continue;
          acc = acc + matrix[i][k] * matrix[j][l] * Surd2{jkl, 0};
        }
      if (!(acc == Surd2{J(i, j), 0})) return false;
    }
  return true;
}

namespace {

struct SurdPoly {
  Poly r, s;  // r + √2 s
};

SurdPoly mul(const SurdPoly& x, const SurdPoly& y) {
  return {x.r * y.r + (x.s * y.s) * QComplex(2), x.r * y.s + x.s * y.r};
}

}  // namespace

SurdSymbol linear_symplectic_substitute(const GradedSymbol& t, const SymplecticMap& S) {
  if (S.m != t.m()) throw std::invalid_argument("map and symbol have different m");
  if (!S.is_symplectic()) throw std::invalid_argument("linear_symplectic_substitute: map is not symplectic");
  const int N = 2 * (2 * S.m + 1);
  std::vector<SurdPoly> image(N);
  for (int i = 0; i < N; ++i) {
    image[i].r = Poly::constant(QComplex(S.shift[i].a));
    image[i].s = Poly::constant(QComplex(S.shift[i].b));
    for (int j = 0; j < N; ++j) {
      image[i].r += Poly::variable(j, QComplex(S.matrix[i][j].a));
      image[i].s += Poly::variable(j, QComplex(S.matrix[i][j].b));
    }
  }
  SurdSymbol out{GradedSymbol(t.caps(), t.dim()), GradedSymbol(t.caps(), t.dim())};
  for (const auto& [k, c] : t.terms()) {
    Monomial hk;
    hk.h() = k.h();
    SurdPoly acc{Poly::constant(QComplex(1)), Poly{}};
    for (int i = 0; i < N; ++i)
      for (int e = 0; e < k.e[i]; ++e) acc = mul(acc, image[i]);
    for (const auto& [mk, mc] : acc.r.terms()) out.rational.add(mk * hk, c * mc);
    for (const auto& [mk, mc] : acc.s.terms()) out.surd.add(mk * hk, c * mc);
  }
  return out;
}

SurdSymbol moyal_product(const SurdSymbol& a, const SurdSymbol& b) {
  SurdSymbol out{moyal_product(a.rational, b.rational) + moyal_product(a.surd, b.surd) * QComplex(2),
                 moyal_product(a.rational, b.surd) + moyal_product(a.surd, b.rational)};
  return out;
}

}  // namespace magdirac
