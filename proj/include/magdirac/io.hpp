// Copyright 2026 The magdirac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "magdirac/bnf.hpp"
#include "magdirac/clifford.hpp"
#include "magdirac/koszul.hpp"
#include "magdirac/weyl.hpp"

namespace magdirac {

using Json = nlohmann::ordered_json;

/// Rationals travel as "p/q" strings; plain JSON integers are accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"m", "terms": [{"wedge", "re", "im"}]}
Json to_json(const Multivector& a);
Multivector multivector_from_json(const Json& j);

/// [[["re","im"], …], …]
Json rows_to_json(const CMatrix& M);
CMatrix rows_from_json(const Json& j);
/// {"m", "rows"}
Json to_json(const CMatrix& M, int m);

/// {"m", "Nw", "Mc", "terms": [{"h", "xi0", "xp", "xip", "tv", "mat"}]}, tv over (x₀, x″, ξ″).
Json to_json(const GradedSymbol& s);
GradedSymbol symbol_from_json(const Json& j);

/// Scalar polynomial in the same term schema with 1×1 matrices.
Json poly_terms_to_json(const Poly& p, int m);
Poly poly_from_json(const Json& terms, int m);

/// Symbol schema plus a "wedge" field per term; coefficients are 1×1.
Json to_json(const ChainElement& e, const Caps& caps);
ChainElement chain_from_json(const Json& j);
Caps caps_from_json(const Json& j);

/// {"m", "Nw", "Mc", "s", "rho", "remainder", "tail"}; rho defaults to 1.
ModelSymbol model_from_json(const Json& j);
Json to_json(const ModelSymbol& d1);

}  // namespace magdirac
