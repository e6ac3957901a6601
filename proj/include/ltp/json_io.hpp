#pragma once

// JSON shapes for fields, elements, series, matrices and connections.
// Integers and rationals are strings ("num/den"), valuations "+inf" when
// infinite. Keys keep insertion order so output is stable byte for byte.

#include <json.hpp>

#include "ltp/monodromy.hpp"

namespace ltp::io {

using Json = nlohmann::ordered_json;

std::string val_string(const Valuation& v);

Json field_to_json(const Field& F, long out_prec);
/// Builds the field at working precision `prec`.
FieldPtr field_from_json(const Json& j, int prec);
/// Throws SpecMismatch unless `j` describes the same field as F.
void check_field(const Json& j, const Field& F);

/// Element as basis rationals joined by ';'.
std::string compact(const FElement& c);
FElement from_compact(const FieldPtr& F, const std::string& s, long abs_prec = kExactPrec);

/// {"value", "abs_prec", "val_p"} or {"zero": "exact"|"inexact", "abs_prec"}.
Json elt_to_json(const FElement& c, long out_prec);
/// Accepts a compact string, an integer, the record above or a digit record.
FElement elt_from_json(const FieldPtr& F, const Json& j);

/// Lossless digit record {"p", "flavor", "digits": ["d0,d1,...", ...],
/// "prec", "shift"}: one base-p digit string per basis coefficient of the
/// unit, least significant first; prec is the relative precision.
Json elt_record(const FElement& c);
FElement elt_from_record(const FieldPtr& F, const Json& j);

/// {"variable", "field", "kmin", "order", "coeffs": {k: compact}, "abs_prec": {k: A}}
Json series_to_json(const TruncSeries& s, long out_prec, const std::string& variable = "u");
TruncSeries series_from_json(const FieldPtr& F, const Json& j);

/// {"field", "nvars", "order", "terms": [{"exp": [...], "coeff": {...}}]}
Json multi_to_json(const MultiSeries& x, long out_prec);
MultiSeries multi_from_json(const FieldPtr& F, int nvars, const Json& j);

Json matrix_to_json(const Matrix& m, long out_prec);
Matrix matrix_from_json(const FieldPtr& F, int nvars, const Json& j);

/// {"field", "d", "h", "deg", "matrices": {"1": [[...]], ...}}
Json connection_to_json(const Connection& c, long out_prec);
Connection connection_from_json(const FieldPtr& F, const Json& j);

}  // namespace ltp::io
