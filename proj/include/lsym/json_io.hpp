#pragma once

#include <json.hpp>

#include "lsym/curves.hpp"

namespace lsym {

using json = nlohmann::ordered_json;

/// Rationals as "p/q" strings, complex numbers as {"re", "im"}, p-adics as
/// {"p", "M", "valuation", "unit", "rational"} with "rational" the reconstructed
/// fraction when one exists.
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, const Field& field);

/// {"field", "lo", "coeffs", "lo_exact", "hi_exact"}
json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const json& j);

/// {"c", "n", "g", "h"}
json to_json(const BirkhoffFactorization& f);

/// {"value", "method", "err"}
json to_json(const SymbolValue& v);

/// {"constant", "factors", "exp_num", "exp_den"}
json to_json(const AnalyticUnit& u);
AnalyticUnit unit_from_json(const json& j, const Field& field);

/// "inf" or the scalar
json to_json(const PointOnLine& p);

/// {"method", "points", "product", "pass", "err"}
json to_json(const ReciprocityReport& r);

}  // namespace lsym
