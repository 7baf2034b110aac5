#include "ncx/ncset.hpp"

#include <algorithm>
#include <string>

#include "ncx/error.hpp"

namespace ncx {
namespace {

std::string piece_key(const HRep& h) {
  std::string k;
  auto emit = [&](char tag, const std::vector<LinearRow>& rows) {
    for (const auto& r : rows) k += tag + to_string(r.a) + to_string(r.b) + ';';
  };
  emit('e', h.eq);
  emit('l', h.le);
  emit('s', h.lt);
  return k;
}

void require_same(const NCSet& a, const NCSet& b, const char* where) { require_dim(b.dim, a.dim, where); }

void require_nearly_convex(const NCSet& e, const char* where) {
  if (!is_nearly_convex(e).verdict) fail(ErrorCode::NotNearlyConvex, std::string(where) + ": set is not nearly convex");
}

VRep closed_vrep(const HRep& piece) { return dd_convert(closure_rows(piece)); }

HRep subspace(const std::vector<RationalVector>& basis, std::size_t n) {
  HRep h;
  h.dim = n;
  for (auto& r : nullspace(basis, n)) h.eq.push_back({r, Rational(0)});
  return h;
}

}  // namespace

NCSet nc_empty(std::size_t n) { return NCSet{n, {}}; }

NCSet nc_from(const HRep& piece) { return NCSet{piece.dim, {piece}}; }

NCSet nc_union(const NCSet& a, const NCSet& b) {
  require_same(a, b, "nc_union");
  NCSet u = a;
  u.pieces.insert(u.pieces.end(), b.pieces.begin(), b.pieces.end());
  return u;
}

bool nc_contains(const NCSet& e, const RationalVector& x) {
  return std::any_of(e.pieces.begin(), e.pieces.end(), [&](const HRep& p) { return contains(p, x); });
}

std::vector<HRep> difference(const HRep& piece, const std::vector<HRep>& others) {
  std::vector<HRep> rest;
  if (!is_empty(piece)) rest.push_back(piece);
  for (const auto& o : others) {
    if (rest.empty()) break;
    std::vector<HRep> next;
    for (auto& r : rest) {
      if (is_empty(intersect(r, o))) {
        next.push_back(std::move(r));
      } else if (!subset(r, o)) {
        auto parts = subtract(r, o);
        next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
      }
    }
    rest = std::move(next);
  }
  return rest;
}

NCSet nc_difference(const NCSet& a, const NCSet& b) {
  require_same(a, b, "nc_difference");
  NCSet out = nc_empty(a.dim);
  for (const auto& p : a.pieces)
    for (auto& d : difference(p, b.pieces)) out.pieces.push_back(std::move(d));
  return out;
}

bool nc_subset(const NCSet& a, const NCSet& b) {
  require_same(a, b, "nc_subset");
  return std::all_of(a.pieces.begin(), a.pieces.end(),
                     [&](const HRep& p) { return difference(p, b.pieces).empty(); });
}

bool nc_equal(const NCSet& a, const NCSet& b) { return nc_subset(a, b) && nc_subset(b, a); }

NCSet canonicalize(const NCSet& e) {
  struct Item {
    HRep h;
    int dim;
    std::string key;
  };
  std::vector<Item> items;
  for (const auto& p : e.pieces) {
    require_dim(p.dim, e.dim, "NCSet piece");
    if (is_empty(p)) continue;
    auto c = canonicalize(p);
    auto key = piece_key(c);
    const int d = static_cast<int>(e.dim - c.eq.size());
    items.push_back({std::move(c), d, std::move(key)});
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return x.dim != y.dim ? x.dim < y.dim : x.key < y.key;
  });
  items.erase(std::unique(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.key == y.key; }),
              items.end());
  // A piece can only be covered by pieces of at least its own dimension.
  for (std::size_t i = 0; i < items.size();) {
    std::vector<HRep> others;
    bool covered = false;
    for (std::size_t j = 0; j < items.size() && !covered; ++j) {
      if (j == i || items[j].dim < items[i].dim || is_empty(intersect(items[i].h, items[j].h))) continue;
      covered = subset(items[i].h, items[j].h);
      others.push_back(items[j].h);
    }
    if (covered || (!others.empty() && difference(items[i].h, others).empty()))
      items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return x.dim != y.dim ? x.dim > y.dim : x.key < y.key;
  });
  NCSet out = nc_empty(e.dim);
  for (auto& it : items) out.pieces.push_back(std::move(it.h));
  return out;
}

HRep closure(const NCSet& e) {
  VRep all;
  all.dim = e.dim;
  for (const auto& p : e.pieces) {
    if (is_empty(p)) continue;
    auto v = closed_vrep(p);
    all.points.insert(all.points.end(), v.points.begin(), v.points.end());
    all.rays.insert(all.rays.end(), v.rays.begin(), v.rays.end());
    all.lineality.insert(all.lineality.end(), v.lineality.begin(), v.lineality.end());
  }
  return vrep_to_hrep(all);
}

NearConvexityCertificate is_nearly_convex(const NCSet& e) {
  NearConvexityCertificate cert;
  auto cl = closure(e);
  auto ri = relative_interior(cl);
  cert.core = ri;
  if (is_empty(ri)) return cert;
  auto missing = difference(ri, e.pieces);
  if (!missing.empty()) {
    cert.verdict = false;
    cert.witness = strict_feasible(missing.front());
    cert.core = empty_hrep(e.dim);
  } else if (difference(cl, e.pieces).empty()) {
    cert.core = cl;  // E is closed and convex
  }
  return cert;
}

HRep rel_interior(const NCSet& e) {
  auto ri = relative_interior(closure(e));
  if (!difference(ri, e.pieces).empty()) fail(ErrorCode::NotNearlyConvex, "rel_interior: set is not nearly convex");
  return ri;
}

bool nearly_equal(const NCSet& a, const NCSet& b) {
  require_same(a, b, "nearly_equal");
  require_nearly_convex(a, "nearly_equal");
  require_nearly_convex(b, "nearly_equal");
  return poly_equal(closure(a), closure(b));
}

NCSet stratify(const NCSet& e) {
  NCSet out = nc_empty(e.dim);
  for (const auto& p : e.pieces)
    for (auto& s : strata(p)) out.pieces.push_back(std::move(s));
  return out;
}

Decomposition decompose(const NCSet& e) {
  Decomposition d;
  d.core = rel_interior(e);
  NCSet rest = nc_empty(e.dim);
  for (const auto& p : e.pieces)
    for (auto& q : difference(p, {d.core})) rest.pieces.push_back(std::move(q));
  d.boundary = canonicalize(stratify(rest));
  return d;
}

HRep interior_core(const NCSet& e) {
  auto ri = rel_interior(e);
  if (is_empty(ri) || !ri.eq.empty()) return empty_hrep(e.dim);
  return ri;
}

NCSet nc_scale(const NCSet& e, const Rational& lambda) {
  NCSet out = nc_empty(e.dim);
  if (lambda == 0) {
    if (std::any_of(e.pieces.begin(), e.pieces.end(), [](const HRep& p) { return !is_empty(p); }))
      out.pieces.push_back(singleton(zeros(e.dim)));
    return canonicalize(out);
  }
  std::vector<RationalVector> m;
  for (std::size_t i = 0; i < e.dim; ++i) m.push_back(scale(1 / lambda, unit(e.dim, i)));
  const LinMap inv(std::move(m), e.dim);
  for (const auto& p : e.pieces) out.pieces.push_back(preimage(p, inv));
  return canonicalize(out);
}

NCSet nc_product(const std::vector<NCSet>& es) {
  if (es.empty()) fail(ErrorCode::DimensionMismatch, "nc_product of no sets");
  NCSet acc = es.front();
  for (std::size_t k = 1; k < es.size(); ++k) {
    NCSet next = nc_empty(acc.dim + es[k].dim);
    for (const auto& p : acc.pieces)
      for (const auto& q : es[k].pieces) next.pieces.push_back(product(p, q));
    acc = std::move(next);
  }
  return canonicalize(acc);
}

NCSet nc_sum(const NCSet& a, const NCSet& b) {
  require_same(a, b, "nc_sum");
  NCSet out = nc_empty(a.dim);
  // Closed pieces sum exactly as closed polyhedra; otherwise ri(cl S + cl T) = S + T on strata.
  struct Part {
    VRep v;
    bool closed;
    std::vector<VRep> strata;  // closed parts only
  };
  auto split = [](const NCSet& e) {
    std::vector<Part> parts;
    for (const auto& p : e.pieces) {
      if (is_empty(p)) continue;
      if (p.lt.empty()) {
        Part q{dd_convert(p), true, {}};
        for (const auto& s : strata(p)) q.strata.push_back(closed_vrep(s));
        parts.push_back(std::move(q));
      } else {
        for (const auto& s : strata(p)) parts.push_back({closed_vrep(s), false, {}});
      }
    }
    return parts;
  };
  const auto pa = split(a), pb = split(b);
  for (const auto& x : pa)
    for (const auto& y : pb) {
      const VRep& va = x.v;
      const VRep& vb = y.v;
      if (x.closed && y.closed) {
        out.pieces.push_back(vrep_to_hrep(minkowski_sum(va, vb)));
      } else if (x.closed || y.closed) {
        // closed + relatively open: split the closed one into strata as well
        const Part& closed = x.closed ? x : y;
        const VRep& open = x.closed ? vb : va;
        for (const auto& s : closed.strata)
          out.pieces.push_back(relative_interior(vrep_to_hrep(minkowski_sum(s, open))));
      } else {
        out.pieces.push_back(relative_interior(vrep_to_hrep(minkowski_sum(va, vb))));
      }
    }
  return canonicalize(out);
}

NCSet nc_image(const NCSet& e, const LinMap& a) {
  require_dim(a.cols, e.dim, "nc_image");
  NCSet out = nc_empty(a.rows());
  for (const auto& p : e.pieces) {
    if (is_empty(p)) continue;
    if (p.lt.empty()) {
      out.pieces.push_back(vrep_to_hrep(linear_image(dd_convert(p), a)));
    } else {
      for (const auto& s : strata(p))
        out.pieces.push_back(relative_interior(vrep_to_hrep(linear_image(closed_vrep(s), a))));
    }
  }
  return canonicalize(out);
}

NCSet nc_preimage(const NCSet& e, const LinMap& a) {
  require_dim(a.rows(), e.dim, "nc_preimage");
  auto ri = relative_interior(closure(e));
  if (is_empty(preimage(ri, a))) fail(ErrorCode::CqViolated, "nc_preimage: A^{-1}(ri E) is empty");
  NCSet out = nc_empty(a.cols);
  for (const auto& p : e.pieces) out.pieces.push_back(preimage(p, a));
  return canonicalize(out);
}

NCSet nc_intersect_raw(const std::vector<NCSet>& es) {
  if (es.empty()) fail(ErrorCode::DimensionMismatch, "nc_intersect of no sets");
  std::vector<HRep> acc;
  for (const auto& p : es.front().pieces)
    if (!is_empty(p)) acc.push_back(p);
  for (std::size_t k = 1; k < es.size(); ++k) {
    require_same(es.front(), es[k], "nc_intersect");
    std::vector<HRep> next;
    for (const auto& p : acc)
      for (const auto& q : es[k].pieces) {
        auto r = intersect(p, q);
        if (!is_empty(r)) next.push_back(std::move(r));
      }
    acc = std::move(next);
  }
  return canonicalize(NCSet{es.front().dim, std::move(acc)});
}

NCSet nc_intersect(const std::vector<NCSet>& es) {
  if (es.empty()) fail(ErrorCode::DimensionMismatch, "nc_intersect of no sets");
  HRep ris = universe(es.front().dim);
  for (const auto& e : es) {
    require_same(es.front(), e, "nc_intersect");
    ris = intersect(ris, relative_interior(closure(e)));
  }
  if (is_empty(ris)) fail(ErrorCode::CqViolated, "nc_intersect: relative interiors do not meet");
  return nc_intersect_raw(es);
}

bool is_bounded(const NCSet& e) {
  require_nearly_convex(e, "is_bounded");
  if (e.empty()) return true;
  return affine_dim(recession(closure(e))) == 0;
}

bool rec_membership(const NCSet& e, const RationalVector& y) {
  require_dim(y.size(), e.dim, "rec_membership");
  if (is_zero(y)) return true;
  const std::size_t n = e.dim;
  // (x, t) -> x + t y
  std::vector<RationalVector> m;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = unit(n + 1, i);
    row[n] = y[i];
    m.push_back(row);
  }
  const LinMap shift(std::move(m), n + 1);
  HRep ray;
  ray.dim = 1;
  ray.le.push_back({RationalVector{Rational(-1)}, Rational(0)});
  std::vector<HRep> targets;
  for (const auto& p : e.pieces) targets.push_back(preimage(p, shift));
  for (const auto& p : e.pieces)
    if (!difference(product(p, ray), targets).empty()) return false;
  return true;
}

RecessionReport rec_classify(const NCSet& e) {
  require_nearly_convex(e, "rec_classify");
  if (e.empty()) fail(ErrorCode::EmptySet, "rec_classify of the empty set");
  const std::size_t n = e.dim;
  RecessionReport rep;
  auto cl = closure(e);
  rep.rec_cl = recession(cl);
  rep.lineality = lineality(cl);
  rep.inner_bound = relative_interior(rep.rec_cl);

  std::vector<RationalVector> a, b;
  for (const auto& r : rep.rec_cl.eq) a.push_back(r.a);
  for (const auto& r : affine_hull(cl).eq) b.push_back(r.a);
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto ra = rank(a, n), rb = rank(b, n), rab = rank(both, n);
  rep.span_condition = ra == rab && rb == rab;

  // Spot checks on points of ri rec(cl E).
  auto gens = dd_convert(rep.rec_cl);
  RationalVector w = zeros(n);
  for (const auto& r : gens.rays) w = add(w, r);
  std::vector<RationalVector> probes{w};
  for (const auto& r : gens.rays) probes.push_back(add(w, r));
  for (const auto& l : gens.lineality) {
    probes.push_back(add(w, l));
    probes.push_back(sub(w, l));
  }
  for (const auto& y : probes) {
    if (!contains(rep.inner_bound, y)) continue;
    if (std::any_of(rep.membership_answers.begin(), rep.membership_answers.end(),
                    [&](const auto& kv) { return kv.first == y; }))
      continue;
    rep.membership_answers.push_back({y, rec_membership(e, y)});
  }
  return rep;
}

bool closedness_check(const NCSet& e, const LinMap& a) {
  require_nearly_convex(e, "closedness_check");
  require_dim(a.cols, e.dim, "closedness_check");
  if (e.empty()) return true;
  const std::size_t n = e.dim;
  auto cl = closure(e);
  auto rc = recession(cl);
  HRep kernel_part = rc;
  for (const auto& row : a.matrix) kernel_part.eq.push_back({row, Rational(0)});
  const bool holds = subset(kernel_part, subspace(lineality(cl), n));
  if (holds) {
    auto lhs = closure(nc_image(e, a));
    auto rhs = vrep_to_hrep(linear_image(dd_convert(cl), a));
    if (!poly_equal(lhs, rhs)) fail(ErrorCode::Internal, "closedness_check: cl A(E) differs from A(cl E)");
    auto rec_img = vrep_to_hrep(linear_image(dd_convert(rc), LinMap(a.matrix, a.cols)));
    if (!poly_equal(recession(rhs), rec_img))
      fail(ErrorCode::Internal, "closedness_check: rec A(cl E) differs from A(rec cl E)");
  }
  return holds;
}

}  // namespace ncx
