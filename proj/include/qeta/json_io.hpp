#pragma once

// JSON forms of series, cusp and order tables, certificates and reports.
// Rationals are written as strings ("-3/2"); parsing a rendered value gives
// back an equal object.

#include <string>

#include <json.hpp>

#include "qeta/hauptmodul.hpp"
#include "qeta/modgroup.hpp"
#include "qeta/prover.hpp"
#include "qeta/series.hpp"

namespace qeta {

using Json = nlohmann::ordered_json;

/// {"grid": M, "truncation": "T/M" | null, "terms": [{"exponent", "coeff"}]}
Json to_json(const QSeries& s);
QSeries series_from_json(const Json& j);

/// {"level": N, "cusps": [{"cusp", "width"}]}
Json to_json(const CuspTable& t);
CuspTable cusp_table_from_json(const Json& j);

/// {"level": N, "label", "orders": [{"cusp", "value", "exact"}]}
Json to_json(const OrderTable& t);
OrderTable order_table_from_json(const Json& j);

/// {id, mode, axioms[], level, generator, bounds{cusp: {value, exact}}, poly[],
///  window{from, to}, verdict, failure{exponent, coefficient}, reason, steps[]}
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const Report& r);

/// {"error": kind, "message": text}
Json error_json(const std::string& kind, const std::string& message);

}  // namespace qeta
