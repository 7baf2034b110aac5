#pragma once

// JSON schemas for sets, maps and functions.  Rationals travel as "p/q" strings, Q(sqrt2) numbers as
// "a+b*sqrt2" strings, so nothing is rounded on the way in or out.

#include <string>

#include <json.hpp>

#include "ncx/ncset.hpp"
#include "ncx/oracle.hpp"
#include "ncx/subdiff.hpp"

namespace ncx::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

Rational rational_from(const json& j);
QS2 qs2_from(const json& j);
RationalVector rvec_from(const json& j);
QS2Vector qvec_from(const json& j);
LinearRow row_from(const json& j, std::size_t dim);
/// {"dim": n, "eq": [...], "le": [...], "lt": [...]}; missing lists are empty.
HRep hrep_from(const json& j);
VRep vrep_from(const json& j);
/// {"dim": n, "pieces": [...]}; a bare HRep object is accepted as a one-piece set.
NCSet ncset_from(const json& j);
/// {"matrix": [[...]], "offset": [...]}.
LinMap linmap_from(const json& j);
ConvexFn fn_from(const json& j);
EdgeRemoval edge_from(const json& j);

ojson to_json(const Rational& q);
ojson to_json(const QS2& q);
ojson to_json(const RationalVector& v);
ojson to_json(const QS2Vector& v);
ojson to_json(const DVec& v);
ojson to_json(const LinearRow& r);
ojson to_json(const HRep& h);
ojson to_json(const VRep& v);
ojson to_json(const NCSet& e);
ojson to_json(const LinMap& a);
ojson to_json(const ConvexFn& f);
ojson to_json(const Value& v);
ojson to_json(const SubVal& s);
ojson to_json(const NearConvexityCertificate& c);
ojson to_json(const RecessionReport& r);
ojson to_json(const oracle::OracleReport& r);

/// Parses a file or fails with PARSE.
json read_json_file(const std::string& path);
json parse_json(const std::string& text);

/// A point given as "1/2,0" or "sqrt2,-1"; coordinates may be Q(sqrt2) literals.
QS2Vector parse_point(const std::string& text);

}  // namespace ncx::io
