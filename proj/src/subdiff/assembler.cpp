#include <algorithm>

#include "ncx/error.hpp"
#include "ncx/subdiff.hpp"

namespace ncx {

namespace {

// A facet row of canonical C that is tight along the whole removed edge.
const LinearRow* supporting_row(const HRep& c, const EdgeRemoval& e) {
  for (const auto& r : c.le) {
    if (dot(r.a, e.p) != r.b) continue;
    if (e.is_ray ? dot(r.a, e.q_or_dir) == 0 : dot(r.a, e.q_or_dir) == r.b) return &r;
  }
  return nullptr;
}

HRep open_edge(const LinearRow& facet, const EdgeRemoval& e) {
  HRep h;
  h.dim = 2;
  h.eq.push_back(facet);
  if (e.is_ray) {
    const auto& v = e.q_or_dir;
    h.lt.push_back({scale(-1, v), -dot(v, e.p)});
  } else {
    const auto d = sub(e.q_or_dir, e.p);
    h.lt.push_back({scale(-1, d), -dot(d, e.p)});
    h.lt.push_back({d, dot(d, e.q_or_dir)});
  }
  return h;
}

QS2Vector lq(const RationalVector& v) { return lift(v); }

ConvexFn edge_function(const LinearRow& facet, const EdgeRemoval& e) {
  const RationalVector n = scale(-1, facet.a);  // inward normal
  if (e.is_ray) {
    // xi1 = n.(x - p); xi2 = w.(x - p) with w.v < 0 so the removed ray is {xi1 = 0, xi2 < 0}
    RationalVector w{-n[1], n[0]};
    if (dot(w, e.q_or_dir) > 0) w = scale(-1, w);
    return precompose_matrix(make_halfstrip(QS2(0)), QMatrix{lq(n), lq(w)}, lq(e.p));
  }
  const RationalVector d = sub(e.q_or_dir, e.p);
  RationalVector nn{-d[1], d[0]};
  if (dot(nn, n) < 0) nn = scale(-1, nn);
  const Rational l2 = dot(d, d);
  QS2Vector mid(2);
  for (std::size_t i = 0; i < 2; ++i) mid[i] = QS2(Rational((e.p[i] + e.q_or_dir[i]) / 2));
  if (auto l = sqrt_opt(QS2(l2))) {
    // unit frame, alpha = half length
    QMatrix m{lq(nn), lq(d)};
    for (auto& row : m)
      for (auto& x : row) x = x / *l;
    return precompose_matrix(make_rockafellar(*l / QS2(2)), m, mid);
  }
  const Rational s = Rational(2) / l2;
  return precompose_matrix(make_rockafellar(QS2(1)), QMatrix{lq(scale(s, nn)), lq(scale(s, d))}, mid);
}

}  // namespace

std::vector<EdgeRemoval> polygon_edges(const HRep& c_in) {
  if (c_in.dim != 2) fail(ErrorCode::Not2D, "polygon_edges needs a set in R^2");
  const HRep c = canonicalize(c_in);
  std::vector<EdgeRemoval> out;
  if (affine_dim(c) != 2) return out;
  for (const auto& r : c.le) {
    HRep face = c;
    face.le.erase(std::find_if(face.le.begin(), face.le.end(), [&](const LinearRow& x) { return x.a == r.a && x.b == r.b; }));
    face.eq.push_back(r);
    const VRep v = dd_convert(face);
    if (v.points.size() == 2) {
      out.push_back({false, v.points[0], v.points[1]});
    } else if (v.points.size() == 1 && v.rays.size() == 1) {
      out.push_back({true, v.points[0], v.rays[0]});
    } else if (v.points.size() == 1 && v.lineality.size() == 1) {
      out.push_back({true, v.points[0], v.lineality[0]});
      out.push_back({true, v.points[0], scale(-1, v.lineality[0])});
    }
  }
  return out;
}

AssembledFn assemble_polygon_fn(const HRep& c_in, const std::vector<EdgeRemoval>& remove) {
  if (c_in.dim != 2) fail(ErrorCode::Not2D, "the assembler works in R^2");
  if (!c_in.lt.empty()) fail(ErrorCode::Parse, "the assembler needs a closed polyhedron");
  if (affine_dim(c_in) != 2) fail(ErrorCode::NotFullDim, "C must have nonempty interior");
  const HRep c = canonicalize(c_in);
  std::vector<ConvexFn> terms{make_indicator(c)};
  std::vector<HRep> removed;
  for (const auto& e : remove) {
    require_dim(e.p.size(), 2, "edge point");
    require_dim(e.q_or_dir.size(), 2, "edge end");
    if (e.is_ray ? is_zero(e.q_or_dir) : e.p == e.q_or_dir) fail(ErrorCode::Parse, "degenerate edge");
    const LinearRow* facet = supporting_row(c, e);
    if (!facet) fail(ErrorCode::Parse, "removed set is not an edge on the boundary of C");
    if (e.is_ray && !contains(recession(c), e.q_or_dir)) fail(ErrorCode::Parse, "removed ray leaves C");
    terms.push_back(edge_function(*facet, e));
    removed.push_back(open_edge(*facet, e));
  }
  AssembledFn out;
  out.f = sum_fn(terms);
  out.predicted_dom = canonicalize(NCSet{2, difference(c, removed)});
  return out;
}

std::vector<RationalVector> project_finite(const std::vector<RationalVector>& c, const RationalVector& x) {
  if (c.empty()) fail(ErrorCode::EmptySet, "projection onto the empty set");
  std::vector<RationalVector> out;
  Rational best;
  for (const auto& p : c) {
    require_dim(p.size(), x.size(), "project_finite");
    const auto d = sub(p, x);
    const Rational dist = dot(d, d);
    if (out.empty() || dist < best) {
      out = {p};
      best = dist;
    } else if (dist == best && std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<DVec> project_finite(const std::vector<DVec>& c, const DVec& x) {
  if (c.empty()) fail(ErrorCode::EmptySet, "projection onto the empty set");
  std::vector<DVec> out;
  double best = 0;
  for (const auto& p : c) {
    require_dim(p.size(), x.size(), "project_finite");
    double dist = 0;
    for (std::size_t i = 0; i < p.size(); ++i) dist += (p[i] - x[i]) * (p[i] - x[i]);
    if (out.empty() || dist < best) {
      out = {p};
      best = dist;
    } else if (dist == best && std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace ncx
