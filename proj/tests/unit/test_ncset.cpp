#include "../support/instances.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "ncx/error.hpp"

using namespace ncx;
using namespace ncx::test;
using inst::c2_set;

namespace {

HRep sq(long lo, long hi) { return box(V({lo, lo}), V({hi, hi})); }

NCSet domdf(long alpha) {
  return NCSet{2,
               {H(2, {}, {}, {R({-1, 0}, 0)}), H(2, {R({1, 0}, 0)}, {R({0, -1}, -alpha)}),
                H(2, {R({1, 0}, 0)}, {R({0, 1}, -alpha)})}};
}

NCSet interval(long a, long b, bool closed_a = true, bool closed_b = true) {
  HRep h = H(1, {}, {});
  (closed_a ? h.le : h.lt).push_back(R({-1}, -a));
  (closed_b ? h.le : h.lt).push_back(R({1}, b));
  return nc_from(h);
}

void check_code(auto&& fn, ErrorCode code) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("canonicalize merges duplicates and absorbed pieces") {
  NCSet e{2, {relative_interior(sq(0, 1)), singleton(V({0, 0})), singleton(V({0, 0}))}};
  auto c = canonicalize(e);
  CHECK(c.pieces.size() == 2);
  CHECK(nc_equal(c, e));
  auto open_closed = nc_union(interval(0, 1, false, false), interval(0, 1));
  auto oc = canonicalize(open_closed);
  REQUIRE(oc.pieces.size() == 1);
  CHECK(poly_equal(oc.pieces[0], box(V({0}), V({1}))));
  CHECK(canonicalize(nc_empty(3)).empty());
  CHECK(canonicalize(c) == c);
}

TEST_CASE("closure and relative interior") {
  auto c = c2_set();
  CHECK(poly_equal(closure(c), H(2, {}, {R({1, 0}, 1), R({-1, 0}, 1), R({0, -1}, 0)})));
  CHECK(poly_equal(rel_interior(c), c.pieces[0]));
  auto pt = nc_from(singleton(V({2, 3})));
  CHECK(poly_equal(closure(pt), singleton(V({2, 3}))));
  CHECK(poly_equal(rel_interior(pt), singleton(V({2, 3}))));
  auto d = domdf(1);
  CHECK(poly_equal(closure(d), H(2, {}, {R({-1, 0}, 0)})));
  CHECK(poly_equal(rel_interior(d), H(2, {}, {}, {R({-1, 0}, 0)})));
  check_code([] { rel_interior(inst::two_rays()); }, ErrorCode::NotNearlyConvex);
}

TEST_CASE("is_nearly_convex examples") {
  auto rays = is_nearly_convex(inst::two_rays());
  CHECK(!rays.verdict);
  REQUIRE(rays.witness);
  CHECK(*rays.witness == V({0, 0}));
  auto square = is_nearly_convex(nc_from(sq(0, 1)));
  CHECK(square.verdict);
  CHECK(poly_equal(square.core, sq(0, 1)));
  CHECK(is_nearly_convex(domdf(1)).verdict);
  CHECK(is_nearly_convex(nc_empty(2)).verdict);
}

TEST_CASE("nearly_equal examples") {
  auto c = c2_set();
  NCSet conv{2,
             {c.pieces[0], H(2, {R({0, 1}, 0)}, {R({1, 0}, 1), R({-1, 0}, 1)})}};
  CHECK(nearly_equal(c, conv));
  CHECK(!nearly_equal(interval(0, 1), interval(2, 3)));
  std::mt19937_64 g(21);
  for (int i = 0; i < 10; ++i) {
    auto e = inst::random_nc(g, 2);
    CHECK(nearly_equal(nc_from(rel_interior(e)), nc_from(closure(e))));
  }
  check_code([] { nearly_equal(inst::two_rays(), inst::two_rays()); }, ErrorCode::NotNearlyConvex);
}

TEST_CASE("decompose examples") {
  auto d = decompose(c2_set());
  CHECK(poly_equal(d.core, c2_set().pieces[0]));
  CHECK(nc_equal(d.boundary, NCSet{2, {singleton(V({-1, 0})), singleton(V({1, 0}))}}));
  auto closed = decompose(nc_from(sq(0, 1)));
  CHECK(closed.boundary.pieces.size() == 8);
  for (const auto& p : closed.boundary.pieces) CHECK(is_relatively_open(p));
  CHECK(decompose(nc_from(relative_interior(sq(0, 1)))).boundary.empty());
}

TEST_CASE("interior_core examples") {
  CHECK(poly_equal(interior_core(domdf(1)), H(2, {}, {}, {R({-1, 0}, 0)})));
  auto seg = nc_from(vrep_to_hrep(VRep{2, {V({0, 0}), V({1, 1})}, {}, {}}));
  CHECK(is_empty(interior_core(seg)));
  CHECK(!is_empty(rel_interior(seg)));
  CHECK(poly_equal(interior_core(nc_from(sq(0, 1))), relative_interior(sq(0, 1))));
}

TEST_CASE("scale and product") {
  NCSet two_c{2,
              {H(2, {}, {}, {R({-1, 0}, 2), R({1, 0}, 2), R({0, -1}, 0)}), singleton(V({-2, 0})),
               singleton(V({2, 0}))}};
  CHECK(nc_equal(nc_scale(c2_set(), 2), two_c));
  CHECK(nc_equal(nc_scale(c2_set(), 0), nc_from(singleton(V({0, 0})))));
  auto prod = nc_product({interval(0, 1, true, false), interval(0, 1, false, false)});
  CHECK(poly_equal(rel_interior(prod), relative_interior(sq(0, 1))));
}

TEST_CASE("nc_sum examples") {
  auto c = c2_set();
  auto cc = nc_sum(c, c);
  auto two_c = nc_scale(c, 2);
  CHECK(nc_equal(cc, nc_union(two_c, nc_from(singleton(V({0, 0}))))));
  CHECK(!nc_equal(cc, two_c));
  CHECK(nc_equal(nc_sum(c, nc_from(singleton(V({0, 0})))), c));
  CHECK(nc_equal(nc_sum(interval(0, 1), interval(0, 1)), interval(0, 2)));
}

TEST_CASE("nc_image examples") {
  LinMap proj({V({1, 0})}, 2);
  CHECK(nc_equal(nc_image(c2_set(), proj), interval(-1, 1)));
  CHECK(nc_equal(nc_image(c2_set(), LinMap::identity(2)), c2_set()));
  LinMap zero({V({0, 0}), V({0, 0})}, 2);
  CHECK(nc_equal(nc_image(c2_set(), zero), nc_from(singleton(V({0, 0})))));
}

TEST_CASE("nc_preimage examples") {
  LinMap on_axis({V({1}), V({0})}, 1);
  check_code([&] { nc_preimage(c2_set(), on_axis); }, ErrorCode::CqViolated);
  LinMap above({V({1}), V({0})}, 1, V({0, 1}));
  CHECK(nc_equal(nc_preimage(c2_set(), above), interval(-1, 1, false, false)));
  LinMap below({V({1}), V({0})}, 1, V({0, -1}));
  check_code([&] { nc_preimage(c2_set(), below); }, ErrorCode::CqViolated);
  CHECK(nc_equal(nc_preimage(c2_set(), LinMap::identity(2)), c2_set()));
}

TEST_CASE("nc_intersect examples") {
  auto a = nc_from(box(V({0, 0}), V({2, 2}))), b = nc_from(box(V({1, 0}), V({3, 2})));
  CHECK(nc_equal(nc_intersect({a, b}), nc_from(box(V({1, 0}), V({2, 2})))));
  auto e1 = inst::halfplane_minus_segment(1), e2 = inst::halfplane_minus_segment(-1);
  check_code([&] { nc_intersect({e1, e2}); }, ErrorCode::CqViolated);
  auto raw = nc_intersect_raw({e1, e2});
  CHECK(nc_equal(raw, inst::two_rays()));
  CHECK(!is_nearly_convex(raw).verdict);
  CHECK(nc_equal(nc_intersect({c2_set(), c2_set()}), c2_set()));
}

TEST_CASE("boundedness and recession membership") {
  auto strip = inst::strip_minus_segments();
  CHECK(is_nearly_convex(strip).verdict);
  CHECK(!is_bounded(strip));
  CHECK(is_bounded(nc_from(sq(0, 1))));
  CHECK(!is_bounded(nc_from(H(2, {}, {R({-1, 0}, 0)}))));
  auto ho = inst::halfplane_origin();
  CHECK(rec_membership(ho, V({1, 0})));
  CHECK(!rec_membership(ho, V({0, 1})));
  CHECK(!rec_membership(strip, V({0, 1})));
  CHECK(!rec_membership(strip, V({0, -1})));
  CHECK(rec_membership(strip, V({0, 0})));
}

TEST_CASE("rec_classify examples") {
  auto strip = rec_classify(inst::strip_minus_segments());
  CHECK(poly_equal(strip.rec_cl, H(2, {R({1, 0}, 0)}, {})));
  CHECK(!strip.span_condition);
  auto ho = rec_classify(inst::halfplane_origin());
  CHECK(ho.span_condition);
  CHECK(poly_equal(ho.rec_cl, H(2, {}, {R({-1, 0}, 0)})));
  CHECK(poly_equal(ho.inner_bound, H(2, {}, {}, {R({-1, 0}, 0)})));
  REQUIRE(!ho.membership_answers.empty());
  for (const auto& [y, ok] : ho.membership_answers) CHECK(ok);
  auto square = rec_classify(nc_from(sq(0, 1)));
  CHECK(square.span_condition == false);
  CHECK(affine_dim(square.rec_cl) == 0);
}

TEST_CASE("closedness_check examples") {
  LinMap proj({V({1, 0})}, 2);
  CHECK(closedness_check(nc_from(sq(0, 1)), proj));
  CHECK(!closedness_check(nc_from(H(2, {}, {R({0, -1}, 0)})), proj));
  auto band = nc_from(H(2, {}, {R({0, 1}, 1), R({0, -1}, 0)}));
  CHECK(closedness_check(band, proj));
  CHECK(nc_equal(nc_image(band, proj), nc_from(universe(1))));
}

TEST_CASE("property: representation soundness and canonical idempotence") {
  std::mt19937_64 g(99);
  for (int it = 0; it < 20; ++it) {
    auto e = inst::random_nc(g, 1 + it % 2);
    auto c = canonicalize(e);
    CHECK(canonicalize(c) == c);
    for (int s = 0; s < 200; ++s) {
      auto x = rand_point(g, e.dim, -4, 4, 2);
      CHECK(nc_contains(c, x) == nc_contains(e, x));
    }
  }
}

TEST_CASE("property: ri and closure are mutually inverse on nearly convex sets") {
  std::mt19937_64 g(5);
  for (int it = 0; it < 20; ++it) {
    auto e = inst::random_nc(g, 1 + it % 3);
    REQUIRE(is_nearly_convex(e).verdict);
    auto ri = rel_interior(e);
    auto cl = closure(e);
    CHECK(poly_equal(closure(nc_from(ri)), cl));
    CHECK(poly_equal(relative_interior(cl), ri));
  }
}

TEST_CASE("property: open or closed nearly convex sets are convex") {
  std::mt19937_64 g(8);
  for (int it = 0; it < 10; ++it) {
    auto e = inst::random_nc(g, 2);
    auto open = nc_from(rel_interior(e)), closed = nc_from(closure(e));
    CHECK(nc_equal(open, nc_from(relative_interior(closure(open)))));
    CHECK(nc_equal(closed, nc_from(closure(closed))));
  }
}

TEST_CASE("property: rec_membership is homogeneous and refines rec(cl E)") {
  std::mt19937_64 g(4);
  for (int it = 0; it < 15; ++it) {
    auto e = inst::random_nc(g, 2);
    auto rc = recession(closure(e));
    CHECK(rec_membership(e, zeros(2)));
    for (int s = 0; s < 4; ++s) {
      auto y = rand_point(g, 2, -2, 2, 1);
      const bool in = rec_membership(e, y);
      CHECK(in == rec_membership(e, scale(Rational(5, 2), y)));
      if (in) CHECK(contains(rc, y));
    }
  }
}
