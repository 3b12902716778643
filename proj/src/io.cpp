// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include "magdirac/io.hpp"

#include <stdexcept>

namespace magdirac {

Json to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a \"p/q\" string or an integer, got " + j.dump());
}

namespace {

Json complex_to_json(const QComplex& c) { return Json::array({to_json(c.re), to_json(c.im)}); }

QComplex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im], got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json wedge_to_json(Wedge w) {
  Json a = Json::array();
  for (int i : wedge_indices(w)) a.push_back(i);
  return a;
}

Wedge wedge_from_json(const Json& j, int m) {
  std::vector<int> idx = j.get<std::vector<int>>();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] > 2 * m) throw std::invalid_argument("wedge index out of range: " + j.dump());
    if (k > 0 && idx[k] <= idx[k - 1]) throw std::invalid_argument("wedge indices must be strictly increasing: " + j.dump());
  }
  return wedge_of(idx);
}

int checked_m(const Json& j) {
  int m = j.at("m").get<int>();
  if (m < 1 || m > kMaxSymbolicM) throw std::invalid_argument("m must lie in 1.." + std::to_string(kMaxSymbolicM));
  return m;
}

std::uint8_t exponent(const Json& j) {
  int e = j.get<int>();
  if (e < 0 || e > 255) throw std::invalid_argument("exponent out of range: " + j.dump());
  return static_cast<std::uint8_t>(e);
}

Json monomial_fields(const Monomial& mon, int m) {
  const Layout L{m};
  Json t;
  t["h"] = mon.h();
  t["xi0"] = mon.e[L.xi(0)];
  Json xp = Json::array(), xip = Json::array(), tv = Json::array();
  for (int j = 1; j <= m; ++j) {
    xp.push_back(mon.e[L.x(j)]);
    xip.push_back(mon.e[L.xi(j)]);
  }
  tv.push_back(mon.e[L.x(0)]);
  for (int j = m + 1; j <= 2 * m; ++j) tv.push_back(mon.e[L.x(j)]);
  for (int j = m + 1; j <= 2 * m; ++j) tv.push_back(mon.e[L.xi(j)]);
  t["xp"] = xp;
  t["xip"] = xip;
  t["tv"] = tv;
  return t;
}

Monomial monomial_from_fields(const Json& t, int m) {
  const Layout L{m};
  Monomial mon;
  mon.h() = exponent(t.value("h", Json(0)));
  mon.e[L.xi(0)] = exponent(t.value("xi0", Json(0)));
  auto vec = [&](const char* key, std::size_t len) {
    Json a = t.value(key, Json::array());
    if (a.empty()) a = Json(std::vector<int>(len, 0));
    if (!a.is_array() || a.size() != len)
      throw std::invalid_argument(std::string("field '") + key + "' must have length " + std::to_string(len));
    return a;
  };
  Json xp = vec("xp", m), xip = vec("xip", m), tv = vec("tv", 2 * m + 1);
  for (int j = 1; j <= m; ++j) {
    mon.e[L.x(j)] = exponent(xp[j - 1]);
    mon.e[L.xi(j)] = exponent(xip[j - 1]);
  }
  mon.e[L.x(0)] = exponent(tv[0]);
  for (int j = 1; j <= m; ++j) {
    mon.e[L.x(m + j)] = exponent(tv[j]);
    mon.e[L.xi(m + j)] = exponent(tv[m + j]);
  }
  return mon;
}

Json caps_fields(const Caps& c) {
  Json j;
  j["m"] = c.m;
  j["Nw"] = c.weight_cap;
  j["Mc"] = c.transverse_cap;
  return j;
}

}  // namespace

Json to_json(const Multivector& a) {
  Json terms = Json::array();
  for (const auto& [w, c] : a.terms) terms.push_back({{"wedge", wedge_to_json(w)}, {"re", to_json(c.re)}, {"im", to_json(c.im)}});
  return {{"m", a.m}, {"terms", terms}};
}

Multivector multivector_from_json(const Json& j) {
  Multivector a;
  a.m = j.at("m").get<int>();
  if (a.m < 1 || a.m > kMaxExactCliffordM) throw std::invalid_argument("m out of range");
  for (const auto& t : j.at("terms"))
    a.add(wedge_from_json(t.at("wedge"), a.m), {rational_from_json(t.value("re", Json(0))), rational_from_json(t.value("im", Json(0)))});
  return a;
}

Json rows_to_json(const CMatrix& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.dim(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < M.dim(); ++k) r.push_back(complex_to_json(M(i, k)));
    rows.push_back(r);
  }
  return rows;
}

CMatrix rows_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix rows must be a nonempty array");
  CMatrix M(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) throw std::invalid_argument("matrix must be square");
    for (std::size_t k = 0; k < j.size(); ++k) M(i, k) = complex_from_json(j[i][k]);
  }
  return M;
}

Json to_json(const CMatrix& M, int m) { return {{"m", m}, {"rows", rows_to_json(M)}}; }

Caps caps_from_json(const Json& j) {
  int m = checked_m(j);
  int Nw = j.at("Nw").get<int>(), Mc = j.at("Mc").get<int>();
  if (Nw < 0 || Mc < 0) throw std::invalid_argument("Nw and Mc must be non-negative");
  return Caps::make(m, Nw, Mc);
}

Json to_json(const GradedSymbol& s) {
  Json out = caps_fields(s.caps());
  Json terms = Json::array();
  for (const auto& [mon, M] : s.terms()) {
    Json t = monomial_fields(mon, s.m());
    t["mat"] = rows_to_json(M);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

GradedSymbol symbol_from_json(const Json& j) {
  Caps caps = caps_from_json(j);
  std::size_t dim = 0;
  std::vector<std::pair<Monomial, CMatrix>> terms;
  for (const auto& t : j.at("terms")) {
    CMatrix M = rows_from_json(t.at("mat"));
    if (dim == 0) dim = M.dim();
    if (M.dim() != dim) throw std::invalid_argument("all term matrices must share a size");
    terms.emplace_back(monomial_from_fields(t, caps.m), std::move(M));
  }
  if (dim == 0) dim = j.value("dim", std::size_t{1} << caps.m);
  if (dim != 1 && dim != (std::size_t{1} << caps.m)) throw std::invalid_argument("matrix size must be 1 or 2^m");
  GradedSymbol s(caps, dim);
  for (const auto& [mon, M] : terms) {
    if (!caps.keep(mon)) throw std::invalid_argument("term exceeds the weight or transverse cap");
    s.add(mon, M);
  }
  return s;
}

Json poly_terms_to_json(const Poly& p, int m) {
  Json terms = Json::array();
  for (const auto& [mon, c] : p.terms()) {
    Json t = monomial_fields(mon, m);
    t["mat"] = Json::array({Json::array({complex_to_json(c)})});
    terms.push_back(t);
  }
  return terms;
}

Poly poly_from_json(const Json& terms, int m) {
  Poly p;
  for (const auto& t : terms) {
    CMatrix M = rows_from_json(t.at("mat"));
    if (M.dim() != 1) throw std::invalid_argument("scalar terms need a 1x1 \"mat\"");
    p.add(monomial_from_fields(t, m), M(0, 0));
  }
  return p;
}

Json to_json(const ChainElement& e, const Caps& caps) {
  Json out = caps_fields(caps);
  Json terms = Json::array();
  for (const auto& [w, p] : e.terms())
    for (auto t : poly_terms_to_json(p, e.m())) {
      t["wedge"] = wedge_to_json(w);
      terms.push_back(t);
    }
  out["terms"] = terms;
  return out;
}

ChainElement chain_from_json(const Json& j) {
  Caps caps = caps_from_json(j);
  ChainElement e(caps.m);
  for (const auto& t : j.at("terms")) {
    Poly p = poly_from_json(Json::array({t}), caps.m);
    e.add(wedge_from_json(t.at("wedge"), caps.m), p);
  }
  return e;
}

ModelSymbol model_from_json(const Json& j) {
  Caps caps = caps_from_json(j);
  std::vector<Rational> s;
  for (const auto& v : j.at("s")) s.push_back(rational_from_json(v));
  Poly rho = j.contains("rho") ? poly_from_json(j.at("rho"), caps.m) : Poly::constant(QComplex(1));
  KoszulContext ctx = KoszulContext::make(caps, std::move(s), std::move(rho));
  ChainElement rem(caps.m);
  if (j.contains("remainder")) {
    Json r = caps_fields(caps);
    r["terms"] = j.at("remainder");
    rem = chain_from_json(r);
  }
  GradedSymbol tail(caps, std::size_t{1} << caps.m);
  if (j.contains("tail")) {
    Json t = caps_fields(caps);
    t["terms"] = j.at("tail");
    tail = symbol_from_json(t);
  }
  ModelSymbol d1{ctx, rem, tail};
  d1.validate();
  return d1;
}

Json to_json(const ModelSymbol& d1) {
  Json out = caps_fields(d1.ctx.caps);
  Json s = Json::array();
  for (const auto& v : d1.ctx.s) s.push_back(to_json(v));
  out["s"] = s;
  out["rho"] = poly_terms_to_json(d1.ctx.rho, d1.ctx.m());
  out["remainder"] = to_json(d1.remainder, d1.ctx.caps)["terms"];
  out["tail"] = to_json(d1.tail)["terms"];
  return out;
}

}  // namespace magdirac
