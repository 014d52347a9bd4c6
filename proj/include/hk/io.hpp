#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "hk/bounds.hpp"
#include "hk/chow.hpp"
#include "hk/ffsiegel.hpp"

namespace hk {

using json = nlohmann::ordered_json;

// "Q", "Q(t)" or "F_p(t)"; another variable name may replace t.
BaseField parse_field(const std::string& tag, const std::string& var = "t");

// Decimal digits used for interval endpoints in documents; fixed so output is byte-stable.
constexpr int kJsonDigits = 30;

json to_json(const HeightValue& h);
json to_json(const BaseField& K, const Elem& x);
json to_json(const BaseField& K, const std::vector<Elem>& v);
// {"text": ..., "terms": {"e0,e1,...": coefficient}} with terms in descending lex order.
json to_json(const BaseField& K, const MPoly& f);
json to_json(const BoundReport& r, bool latex);

std::vector<Elem> parse_elems(const BaseField& K, const json& arr);
// A polynomial is an expression string or a term map as emitted by to_json.
MPoly parse_poly(const BaseField& K, int nvars, const json& j);

// Rational or real expression: integers, p/q, + - * / ^, log(), sqrt(), e, parentheses.
// Exact when no transcendental function appears.
HeightValue parse_height_expr(const std::string& s);

// Validates a document against a JSON Schema subset: type, properties, required,
// additionalProperties, items, minItems, maxItems, enum, minimum, anyOf, local $ref.
// Throws ParseError naming the offending path.
void validate(const json& doc, const json& schema);

}  // namespace hk
