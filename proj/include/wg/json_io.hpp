#pragma once

#include "wg/heis.hpp"
#include "wg/matrix.hpp"
#include "wg/polynomial.hpp"
#include "wg/quotient.hpp"
#include "wg/wang.hpp"

#include <json.hpp>

#include <string>

namespace wg {
namespace io {

using nlohmann::json;

// Integers serialize as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.
json int_to_json(const Int& v);
Int int_from_json(const json& j);

// {"n": 2, "rows": [[2,1],[1,1]]}
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);

// {"coeffs": [c0, c1, ...], "text": "x^2 - 3x + 1"}
json poly_to_json(const IntPolynomial& p);

// {"a": ..., "b": ..., "c": ...}
json heis_to_json(const HeisElement& x);
HeisElement heis_from_json(const json& j);

// {"zeta": [a1,a2,a3], "xi": [b1,b2,b3], "c": ..., "r": ...}
json subgroup_to_json(const heis::HeisSubgroupData& s);
heis::HeisSubgroupData subgroup_from_json(const json& j);

// {"shape":"SM","M":{...}} | {"shape":"SPM","M":{...},"r":..,"p":[p1,p2]}
// | {"shape":"KODAIRA","r":..}
json descriptor_to_json(const WangDescriptor& d);
WangDescriptor descriptor_from_json(const json& j);

// {"h": [x,y,z] or {"a":..}, "t": ...}
json element_to_json(const WangElement& x);
WangElement element_from_json(const json& j, Shape shape);

// {"ambient": {...}, "gamma0": {"basis": {...}} or subgroup data,
//  "k": ..., "delta": h-part}
json spec_to_json(const quot::NormalSubgroupSpec& s);
quot::NormalSubgroupSpec spec_from_json(const json& j);

json load_file(const std::string& path);

} // namespace io
} // namespace wg
