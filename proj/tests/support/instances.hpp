#pragma once

// Named example sets and random nearly convex instances shared by unit and acceptance tests.

#include <random>

#include "ncx/ncset.hpp"

namespace ncx::inst {

inline RationalVector vec(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline LinearRow row(std::initializer_list<long> a, long b) { return {vec(a), Rational(b)}; }

inline HRep hrep(std::size_t n, std::vector<LinearRow> eq, std::vector<LinearRow> le, std::vector<LinearRow> lt = {}) {
  HRep h;
  h.dim = n;
  h.eq = std::move(eq);
  h.le = std::move(le);
  h.lt = std::move(lt);
  return h;
}

/// {-1 < x1 < 1, x2 > 0} with the two corners (-1,0), (1,0).
inline NCSet c2_set() {
  return NCSet{2,
               {hrep(2, {}, {}, {row({-1, 0}, 1), row({1, 0}, 1), row({0, -1}, 0)}), singleton(vec({-1, 0})),
                singleton(vec({1, 0}))}};
}

/// Closed half-plane on one side of x1 = 0 with the open segment |x2| < 1 removed.
inline NCSet halfplane_minus_segment(int side) {
  return NCSet{2,
               {hrep(2, {}, {}, {row({-side, 0}, 0)}), hrep(2, {row({1, 0}, 0)}, {row({0, 1}, -1)}),
                hrep(2, {row({1, 0}, 0)}, {row({0, -1}, -1)})}};
}

/// {(0, x2) : |x2| >= 1}.
inline NCSet two_rays() {
  return NCSet{2, {hrep(2, {row({1, 0}, 0)}, {row({0, 1}, -1)}), hrep(2, {row({1, 0}, 0)}, {row({0, -1}, -1)})}};
}

/// [-1,1] x R with the open segments {x1 = +-1, |x2| < 1} removed.
inline NCSet strip_minus_segments() {
  NCSet e{2, {hrep(2, {}, {}, {row({1, 0}, 1), row({-1, 0}, 1)})}};
  for (long s : {-1L, 1L}) {
    e.pieces.push_back(hrep(2, {row({1, 0}, s)}, {row({0, 1}, -1)}));
    e.pieces.push_back(hrep(2, {row({1, 0}, s)}, {row({0, -1}, -1)}));
  }
  return e;
}

/// {x1 > 0} together with the origin.
inline NCSet halfplane_origin() { return NCSet{2, {hrep(2, {}, {}, {row({-1, 0}, 0)}), singleton(vec({0, 0}))}}; }

inline Rational rq(std::mt19937_64& g, int lo, int hi, int den = 1) {
  std::uniform_int_distribution<int> d(lo * den, hi * den);
  Rational q(d(g), den);
  q.canonicalize();
  return q;
}

/// A random closed polyhedron given by generators (n <= 3), possibly unbounded or flat.
inline VRep random_vrep(std::mt19937_64& g, std::size_t n) {
  VRep v;
  v.dim = n;
  std::uniform_int_distribution<int> npts(1, static_cast<int>(n) + 2);
  const int k = npts(g);
  for (int i = 0; i < k; ++i) {
    RationalVector p(n);
    for (auto& x : p) x = rq(g, -3, 3);
    v.points.push_back(p);
  }
  if (g() % 4 == 0) {
    RationalVector r(n);
    for (auto& x : r) x = rq(g, -1, 1);
    if (!is_zero(r)) v.rays.push_back(r);
  }
  return canonicalize(v);
}

/// A nearly convex set: ri P plus a few faces (relatively open or closed) of the closed polyhedron P.
inline NCSet random_nc(std::mt19937_64& g, std::size_t n, std::size_t max_pieces = 5) {
  const HRep p = vrep_to_hrep(random_vrep(g, n));
  NCSet e{n, {relative_interior(p)}};
  std::vector<HRep> fs;
  if (affine_dim(p) > 0) fs = faces(p);
  std::shuffle(fs.begin(), fs.end(), g);
  const std::size_t extra = std::min<std::size_t>(fs.size(), g() % max_pieces);
  for (std::size_t i = 0; i < extra; ++i) e.pieces.push_back(g() % 2 ? relative_interior(fs[i]) : fs[i]);
  return e;
}

inline LinMap random_map(std::mt19937_64& g, std::size_t m, std::size_t n) {
  std::vector<RationalVector> a(m, RationalVector(n));
  for (auto& r : a)
    for (auto& x : r) x = rq(g, -2, 2);
  return LinMap(std::move(a), n);
}

}  // namespace ncx::inst
