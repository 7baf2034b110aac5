#include <cmath>
#include <fstream>
#include <sstream>

#include "ncx/error.hpp"
#include "ncx/io.hpp"

namespace ncx::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t dim_from(const json& j) {
  const auto& d = field(j, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) bad("'dim' must be a positive integer");
  return d.get<std::size_t>();
}

std::vector<LinearRow> rows_from(const json& j, const char* key, std::size_t dim) {
  std::vector<LinearRow> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) bad(std::string("'") + key + "' must be a list of rows");
  for (const auto& r : j.at(key)) out.push_back(row_from(r, dim));
  return out;
}

std::vector<RationalVector> vecs_from(const json& j, const char* key, std::size_t dim) {
  std::vector<RationalVector> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) {
    out.push_back(rvec_from(v));
    require_dim(out.back().size(), dim, key);
  }
  return out;
}

IntervalKind interval_kind_from(const std::string& s) {
  for (auto k : {IntervalKind::Closed, IntervalKind::Open, IntervalKind::Ray, IntervalKind::HalfOpen,
                 IntervalKind::HalfOpenLeft})
    if (s == interval_kind_name(k)) return k;
  bad("unknown interval kind '" + s + "'");
}

std::optional<Rational> end_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_from(j.at(key));
}

ojson rows_json(const std::vector<LinearRow>& rs) {
  ojson a = ojson::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

template <class V>
ojson list_json(const std::vector<V>& vs) {
  ojson a = ojson::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

ojson number(double d) {
  if (!std::isfinite(d)) return nullptr;
  return d;
}

}  // namespace

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

QS2 qs2_from(const json& j) {
  if (j.is_string()) return parse_qs2(j.get<std::string>());
  return QS2(rational_from(j));
}

RationalVector rvec_from(const json& j) {
  if (!j.is_array()) bad("expected a vector, got " + j.dump());
  RationalVector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

QS2Vector qvec_from(const json& j) {
  if (!j.is_array()) bad("expected a vector, got " + j.dump());
  QS2Vector v;
  for (const auto& x : j) v.push_back(qs2_from(x));
  return v;
}

LinearRow row_from(const json& j, std::size_t dim) {
  LinearRow r{rvec_from(field(j, "a")), rational_from(field(j, "b"))};
  require_dim(r.a.size(), dim, "row");
  return r;
}

HRep hrep_from(const json& j) {
  HRep h;
  h.dim = dim_from(j);
  h.eq = rows_from(j, "eq", h.dim);
  h.le = rows_from(j, "le", h.dim);
  h.lt = rows_from(j, "lt", h.dim);
  return h;
}

VRep vrep_from(const json& j) {
  VRep v;
  v.dim = dim_from(j);
  v.points = vecs_from(j, "points", v.dim);
  v.rays = vecs_from(j, "rays", v.dim);
  v.lineality = vecs_from(j, "lineality", v.dim);
  return v;
}

NCSet ncset_from(const json& j) {
  NCSet e;
  e.dim = dim_from(j);
  if (!j.contains("pieces")) {
    e.pieces.push_back(hrep_from(j));
    return e;
  }
  for (const auto& p : field(j, "pieces")) {
    HRep h;
    h.dim = e.dim;
    if (p.contains("dim")) require_dim(dim_from(p), e.dim, "piece");
    h.eq = rows_from(p, "eq", e.dim);
    h.le = rows_from(p, "le", e.dim);
    h.lt = rows_from(p, "lt", e.dim);
    e.pieces.push_back(std::move(h));
  }
  return e;
}

LinMap linmap_from(const json& j) {
  const auto& m = field(j, "matrix");
  if (!m.is_array() || m.empty()) bad("'matrix' must be a nonempty list of rows");
  std::vector<RationalVector> rows;
  for (const auto& r : m) rows.push_back(rvec_from(r));
  const std::size_t n = rows.front().size();
  for (const auto& r : rows) require_dim(r.size(), n, "matrix row");
  RationalVector off;
  if (j.contains("offset")) {
    off = rvec_from(j.at("offset"));
    require_dim(off.size(), rows.size(), "offset");
  }
  return LinMap(std::move(rows), n, std::move(off));
}

EdgeRemoval edge_from(const json& j) {
  if (j.contains("segment")) {
    const auto& s = j.at("segment");
    if (!s.is_array() || s.size() != 2) bad("'segment' needs two end points");
    return {false, rvec_from(s[0]), rvec_from(s[1])};
  }
  const auto& r = field(j, "ray");
  return {true, rvec_from(field(r, "from")), rvec_from(field(r, "dir"))};
}

ConvexFn fn_from(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "indicator") return make_indicator(hrep_from(field(j, "set")));
  if (kind == "support") return make_support(hrep_from(field(j, "set")));
  if (kind == "gauge_recip") return make_gauge_recip(hrep_from(field(j, "set")), rvec_from(field(j, "x0")));
  if (kind == "interval1d" || kind == "interval")
    return make_interval_fn(interval_kind_from(field(j, "interval").get<std::string>()), end_from(j, "a"),
                            end_from(j, "b"));
  if (kind == "rockafellar") return make_rockafellar(qs2_from(field(j, "alpha")));
  if (kind == "halfstrip") return make_halfstrip(qs2_from(field(j, "alpha")));
  if (kind == "precomposed") {
    const ConvexFn inner = fn_from(field(j, "inner"));
    QS2Vector shift = j.contains("shift") ? qvec_from(j.at("shift")) : lift(zeros(inner.dim()));
    if (j.contains("matrix")) {
      QMatrix m;
      for (const auto& r : j.at("matrix")) m.push_back(qvec_from(r));
      return precompose_matrix(inner, m, shift);
    }
    const auto& th = field(j, "theta");
    const QS2 c = j.contains("scale") ? qs2_from(j.at("scale")) : QS2(1);
    return precompose(inner, qs2_from(field(th, "cos")), qs2_from(field(th, "sin")), shift, c);
  }
  if (kind == "sum") {
    std::vector<ConvexFn> terms;
    for (const auto& t : field(j, "terms")) terms.push_back(fn_from(t));
    if (terms.empty()) bad("'terms' must not be empty");
    return sum_fn(terms);
  }
  if (kind == "polygon") {
    const HRep c = hrep_from(field(j, "set"));
    std::vector<EdgeRemoval> rm;
    const auto& r = field(j, "remove");
    if (r.is_string() && r.get<std::string>() == "all") {
      rm = polygon_edges(c);
    } else {
      for (const auto& e : r) rm.push_back(edge_from(e));
    }
    return assemble_polygon_fn(c, rm).f;
  }
  bad("unknown function kind '" + kind + "'");
}

ojson to_json(const Rational& q) { return to_string(q); }
ojson to_json(const QS2& q) { return to_string(q); }

ojson to_json(const RationalVector& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson to_json(const QS2Vector& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson to_json(const DVec& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

ojson to_json(const LinearRow& r) {
  ojson o;
  o["a"] = to_json(r.a);
  o["b"] = to_json(r.b);
  return o;
}

ojson to_json(const HRep& h) {
  ojson o;
  o["dim"] = h.dim;
  o["eq"] = rows_json(h.eq);
  o["le"] = rows_json(h.le);
  o["lt"] = rows_json(h.lt);
  return o;
}

ojson to_json(const VRep& v) {
  ojson o;
  o["dim"] = v.dim;
  o["points"] = list_json(v.points);
  o["rays"] = list_json(v.rays);
  o["lineality"] = list_json(v.lineality);
  return o;
}

ojson to_json(const NCSet& e) {
  ojson o;
  o["dim"] = e.dim;
  ojson ps = ojson::array();
  for (const auto& p : e.pieces) {
    ojson q;
    q["eq"] = rows_json(p.eq);
    q["le"] = rows_json(p.le);
    q["lt"] = rows_json(p.lt);
    ps.push_back(std::move(q));
  }
  o["pieces"] = std::move(ps);
  return o;
}

ojson to_json(const LinMap& a) {
  ojson o;
  o["matrix"] = list_json(a.matrix);
  if (!a.offset.empty()) o["offset"] = to_json(a.offset);
  return o;
}

ojson to_json(const ConvexFn& f) {
  const FnNode& n = f.node();
  ojson o;
  o["kind"] = kind_name(n.kind);
  switch (n.kind) {
    case FnKind::Indicator:
    case FnKind::Support:
      o["set"] = to_json(n.poly);
      break;
    case FnKind::GaugeRecip:
      o["set"] = to_json(n.poly);
      o["x0"] = to_json(n.x0);
      break;
    case FnKind::Interval1D:
      o["interval"] = interval_kind_name(n.ikind);
      o["a"] = n.lo ? to_json(*n.lo) : ojson(nullptr);
      o["b"] = n.hi ? to_json(*n.hi) : ojson(nullptr);
      break;
    case FnKind::Rockafellar:
    case FnKind::Halfstrip:
      o["alpha"] = to_json(n.alpha);
      break;
    case FnKind::Precomposed:
      o["inner"] = to_json(n.inner);
      o["matrix"] = list_json(n.m);
      o["shift"] = to_json(n.shift);
      break;
    case FnKind::Sum:
      o["terms"] = list_json(n.terms);
      break;
  }
  return o;
}

ojson to_json(const Value& v) {
  ojson o;
  o["infinite"] = v.infinite;
  o["approx"] = v.infinite ? ojson(nullptr) : number(v.approx);
  o["exact"] = v.exact ? to_json(*v.exact) : ojson(nullptr);
  return o;
}

ojson to_json(const SubVal& s) {
  ojson o;
  o["empty"] = s.empty();
  o["points"] = list_json(s.points);
  o["rays"] = list_json(s.rays);
  if (s.has_exact) {
    o["exact_points"] = list_json(s.exact_points);
    o["exact_rays"] = list_json(s.exact_rays);
  }
  o["near_boundary"] = s.near_boundary;
  return o;
}

ojson to_json(const NearConvexityCertificate& c) {
  ojson o;
  o["nearly_convex"] = c.verdict;
  o["witness"] = c.witness ? to_json(*c.witness) : ojson(nullptr);
  o["core"] = c.verdict ? to_json(c.core) : ojson(nullptr);
  return o;
}

ojson to_json(const RecessionReport& r) {
  ojson o;
  o["rec_cl"] = to_json(r.rec_cl);
  o["lineality"] = list_json(r.lineality);
  o["span_condition"] = r.span_condition;
  o["inner_bound"] = to_json(r.inner_bound);
  ojson m = ojson::array();
  for (const auto& [y, ok] : r.membership_answers) m.push_back(ojson{{"direction", to_json(y)}, {"member", ok}});
  o["membership"] = std::move(m);
  return o;
}

ojson to_json(const oracle::OracleReport& r) {
  ojson o;
  o["name"] = r.name;
  o["max_violation"] = number(r.max_violation);
  o["witness"] = to_json(r.witness);
  o["passed"] = r.passed;
  o["samples"] = r.samples_used;
  o["tolerance"] = r.tolerance;
  return o;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

QS2Vector parse_point(const std::string& text) {
  QS2Vector v;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) v.push_back(parse_qs2(item));
  if (v.empty()) bad("empty point '" + text + "'");
  return v;
}

}  // namespace ncx::io
