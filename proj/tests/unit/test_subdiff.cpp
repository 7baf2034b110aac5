#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "../support/instances.hpp"
#include "ncx/error.hpp"
#include "ncx/subdiff.hpp"

using namespace ncx;
using inst::hrep;
using inst::row;
using inst::vec;

namespace {

QS2 qs(const char* s) { return parse_qs2(s); }
Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}
QS2Vector qv(std::initializer_list<const char*> xs) {
  QS2Vector v;
  for (auto x : xs) v.push_back(parse_qs2(x));
  return v;
}

HRep unit_square() { return box(vec({0, 0}), vec({1, 1})); }
HRep open_square() { return hrep(2, {}, {}, {row({1, 0}, 1), row({-1, 0}, 1), row({0, 1}, 1), row({0, -1}, 1)}); }

bool same_points(std::vector<QS2Vector> a, std::vector<QS2Vector> b) {
  auto key = [](const QS2Vector& v) {
    std::string s;
    for (const auto& x : v) s += to_string(x) + ";";
    return s;
  };
  auto sorted = [&](std::vector<QS2Vector>& v) {
    std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  };
  sorted(a);
  sorted(b);
  return a == b;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

// The four compositions of the polygon example.
std::vector<ConvexFn> ncpolygon_terms() {
  const QS2 h = qs("1/2*sqrt2");
  return {precompose(make_rockafellar(qs("sqrt2")), h, h, qv({"-2", "0"}), QS2(1)),
          precompose(make_rockafellar(QS2(3)), QS2(0), QS2(-1), qv({"0", "-1"}), QS2(1)),
          precompose(make_rockafellar(QS2(1)), QS2(0), QS2(1), qv({"0", "1"}), QS2(1)),
          precompose(make_rockafellar(qs("sqrt2")), -h, h, qv({"2", "0"}), QS2(1))};
}

NCSet ncpolygon_golden() {
  NCSet e{2, {hrep(2, {}, {}, {row({0, 1}, 1), row({0, -1}, 1), row({-1, 1}, 2), row({1, 1}, 2)})}};
  for (auto p : {vec({1, 1}), vec({-1, 1}), vec({3, -1}), vec({-3, -1})}) e.pieces.push_back(singleton(p));
  return e;
}

HRep ncpolygon_quad() {
  return hrep(2, {}, {row({0, 1}, 1), row({0, -1}, 1), row({-1, 1}, 2), row({1, 1}, 2)});
}

}  // namespace

TEST_CASE("eval examples") {
  const auto f = make_rockafellar(QS2(1));
  auto v = eval(f, vec({4, 0}));
  REQUIRE(v.exact);
  CHECK(*v.exact == QS2(0));
  CHECK(eval(f, vec({-1, 0})).infinite);
  CHECK(std::isinf(eval(f, DVec{-1, 0})));
  const auto g = make_interval_fn(IntervalKind::Open, Rational(0), Rational(1));
  auto w = eval(g, RationalVector{Rational(1, 2)});
  REQUIRE(w.exact);
  CHECK(*w.exact == QS2(0));
  CHECK(eval(g, DVec{0.5}) == doctest::Approx(0.0));
  // irrational branch of the exact path falls back to a rounded value
  auto r = eval(f, RationalVector{Rational(1, 3), 0});
  CHECK(!r.exact);
  CHECK(r.approx == doctest::Approx(1 - std::sqrt(1 / 3.0)).epsilon(1e-12));
  CHECK(*eval(f, vec({2, 0})).exact == QS2(0));
  CHECK(*eval(f, RationalVector{Rational(1, 2), 0}).exact == QS2(1) - qs("1/2*sqrt2"));
}

TEST_CASE("subdiff examples") {
  const auto f = make_rockafellar(QS2(1));
  auto s = subdiff(f, vec({1, 0}));
  REQUIRE(s.has_exact);
  CHECK(same_points(s.exact_points, {qv({"-1/2", "0"}), qv({"0", "1"}), qv({"0", "-1"})}));
  CHECK(s.rays.empty());
  CHECK(subdiff(f, vec({0, 0})).empty());

  auto h = subdiff(make_halfstrip(QS2(1)), vec({0, 1}));
  CHECK(same_points(h.exact_points, {qv({"0", "1"})}));
  CHECK(same_points(h.exact_rays, {qv({"-1", "0"})}));

  auto g = make_gauge_recip(open_square(), vec({0, 0}));
  auto gs = subdiff(g, RationalVector{Rational(1, 2), 0});
  CHECK(same_points(gs.exact_points, {qv({"4", "0"})}));

  auto ind = subdiff(make_indicator(unit_square()), vec({1, 1}));
  CHECK(same_points(ind.exact_points, {qv({"0", "0"})}));
  CHECK(same_points(ind.exact_rays, {qv({"1", "0"}), qv({"0", "1"})}));
}

TEST_CASE("rockafellar case table dispatch") {
  for (const char* a : {"1/2", "1", "2", "sqrt2"}) {
    const QS2 al = qs(a);
    const QS2 a2 = al * al;
    const QS2 x1 = a2 / QS2(4);  // sqrt = alpha/2
    const QS2 gap = al - al / QS2(2);
    CHECK(rockafellar_case(al, {QS2(-1), QS2(0)}) == 1);
    CHECK(rockafellar_case(al, {QS2(0), al / QS2(2)}) == 2);
    CHECK(rockafellar_case(al, {QS2(0), al}) == 3);
    CHECK(rockafellar_case(al, {QS2(0), -al - QS2(1)}) == 4);
    CHECK(rockafellar_case(al, {x1, gap}) == 5);
    CHECK(rockafellar_case(al, {x1, -gap}) == 6);
    CHECK(rockafellar_case(al, {x1, gap / QS2(2)}) == 7);
    CHECK(rockafellar_case(al, {x1, gap + QS2(1)}) == 8);
    CHECK(rockafellar_case(al, {x1, -gap - QS2(1)}) == 9);
    CHECK(rockafellar_case(al, {a2, QS2(0)}) == 10);
    CHECK(rockafellar_case(al, {a2 + QS2(1), QS2(0)}) == 11);
    CHECK(rockafellar_case(al, {a2 + QS2(1), QS2(1)}) == 12);
    CHECK(rockafellar_case(al, {a2 + QS2(1), QS2(-1)}) == 13);
    CHECK(rockafellar_case(al, {a2, QS2(1)}) == 14);
  }
}

TEST_CASE("numeric dispatch agrees with exact dispatch away from ties and flags near ties") {
  const auto f = make_rockafellar(QS2(1));
  auto s = subdiff(f, DVec{0.25, 0.5 + 1e-14});
  CHECK(s.near_boundary);
  CHECK(s.points.size() == 2);
  auto t = subdiff(f, DVec{0.25, 0.1});
  CHECK(!t.near_boundary);
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0][0] == doctest::Approx(-1.0));
}

TEST_CASE("dom_subdiff examples") {
  const auto d = dom_subdiff(make_rockafellar(QS2(1)));
  NCSet want{2,
             {hrep(2, {}, {}, {row({-1, 0}, 0)}), hrep(2, {row({1, 0}, 0)}, {row({0, 1}, -1)}),
              hrep(2, {row({1, 0}, 0)}, {row({0, -1}, -1)})}};
  CHECK(nc_equal(d, want));
  CHECK(is_nearly_convex(d).verdict);

  const HRep p = box(vec({0, 0}), vec({2, 1}));
  CHECK(nc_equal(dom_subdiff(make_indicator(p)), nc_from(p)));

  const auto hs = dom_subdiff(make_halfstrip(QS2(1)));
  const NCSet hs_want = NCSet{2, difference(hrep(2, {}, {row({-1, 0}, 0)}), {hrep(2, {row({1, 0}, 0)}, {}, {row({0, 1}, 1)})})};
  CHECK(nc_equal(hs, hs_want));
  CHECK(is_nearly_convex(hs).verdict);
  CHECK(!nc_contains(hs, vec({0, 0})));
  CHECK(nc_contains(hs, vec({0, 1})));

  CHECK(code_of([] { dom_subdiff(make_rockafellar(qs("sqrt2"))); }) == ErrorCode::IrrationalBoundary);
}

TEST_CASE("conjugate examples") {
  const auto f = make_rockafellar(QS2(1));
  auto c = [&](Rational a, Rational b) { return conjugate_eval(f, RationalVector{a, b}); };
  CHECK(*c(Rational(-1, 2), 0).exact == QS2(Rational(-1, 2)));
  CHECK(*c(0, Rational(1, 2)).exact == QS2(0));
  CHECK(*c(-1, 0).exact == QS2(Rational(-3, 4)));
  CHECK(c(1, 0).infinite);
  CHECK(conjugate_eval(f, DVec{-1, 0}) == doctest::Approx(-0.75));
  CHECK(code_of([] { conjugate_eval(make_halfstrip(QS2(1)), vec({0, 0})); }) == ErrorCode::NoClosedForm);

  // indicator and support are conjugate to each other
  const HRep sq = unit_square();
  CHECK(*conjugate_eval(make_indicator(sq), vec({1, -2})).exact == QS2(1));
  CHECK(*eval(make_support(sq), vec({1, -2})).exact == QS2(1));
  CHECK(conjugate_eval(make_support(sq), vec({2, 0})).infinite);
}

TEST_CASE("conjugate of a precomposition") {
  // h(x) = f(x - t):  h*(y) = f*(y) + <y, t>
  const auto f = make_rockafellar(QS2(1));
  const auto h = precompose(f, QS2(1), QS2(0), qv({"1", "2"}), QS2(1));
  auto v = conjugate_eval(h, vec({-1, 0}));
  CHECK(*v.exact == QS2(Rational(-3, 4)) + QS2(-1));
}

TEST_CASE("gauge examples") {
  const auto g = make_gauge_recip(open_square(), vec({0, 0}));
  CHECK(*eval(g, vec({0, 0})).exact == QS2(1));
  CHECK(nc_equal(dom_subdiff(g), nc_from(open_square())));
  CHECK(eval(g, vec({1, 0})).infinite);

  const HRep half = hrep(2, {}, {}, {row({1, 0}, 1)});
  const auto h = make_gauge_recip(half, vec({0, 0}));
  CHECK(*eval(h, RationalVector{Rational(1, 2), 7}).exact == QS2(2));
  CHECK(*eval(h, vec({-5, 3})).exact == QS2(1));
  CHECK(nc_equal(dom_subdiff(h), nc_from(half)));

  CHECK(code_of([] { make_gauge_recip(open_square(), vec({1, 0})); }) == ErrorCode::X0NotInterior);
  CHECK(code_of([] { make_gauge_recip(unit_square(), RationalVector{Rational(1, 2), Rational(1, 2)}); }) ==
        ErrorCode::Unnormalizable);
}

TEST_CASE("interval examples") {
  const auto ray = make_interval_fn(IntervalKind::Ray, Rational(0), std::nullopt);
  CHECK(same_points(subdiff(ray, vec({2})).exact_points, {qv({"-1/4"})}));
  const auto open = make_interval_fn(IntervalKind::Open, Rational(0), Rational(1));
  CHECK(same_points(subdiff(open, RationalVector{Rational(1, 2)}).exact_points, {qv({"0"})}));
  const auto ho = make_interval_fn(IntervalKind::HalfOpen, Rational(0), Rational(1));
  auto s = subdiff(ho, vec({1}));
  CHECK(same_points(s.exact_points, {qv({"0"})}));
  CHECK(same_points(s.exact_rays, {qv({"1"})}));
  CHECK(subdiff(ho, vec({0})).empty());

  for (auto k : {IntervalKind::Closed, IntervalKind::Open, IntervalKind::HalfOpen, IntervalKind::HalfOpenLeft}) {
    const auto f = make_interval_fn(k, Rational(0), Rational(1));
    const auto d = dom_subdiff(f);
    const bool lo = k == IntervalKind::Closed || k == IntervalKind::HalfOpenLeft;
    const bool hi = k == IntervalKind::Closed || k == IntervalKind::HalfOpen;
    CHECK(nc_contains(d, vec({0})) == lo);
    CHECK(nc_contains(d, vec({1})) == hi);
    CHECK(nc_contains(d, RationalVector{Rational(1, 3)}));
    CHECK(!subdiff(f, RationalVector{Rational(1, 3)}).empty());
    CHECK(subdiff(f, vec({0})).empty() != lo);
  }
  CHECK(code_of([] { make_interval_fn(IntervalKind::Open, Rational(1), Rational(1)); }) == ErrorCode::BadInterval);
  CHECK(code_of([] { make_interval_fn(IntervalKind::HalfOpen, Rational(0), std::nullopt); }) == ErrorCode::BadInterval);
}

TEST_CASE("interval derivative matches finite differences") {
  const double h = 1e-6;
  for (auto k : {IntervalKind::Open, IntervalKind::HalfOpen, IntervalKind::HalfOpenLeft}) {
    const auto f = make_interval_fn(k, Rational(-1), Rational(2));
    for (double x : {-0.7, 0.1, 0.5, 1.3, 1.9}) {
      const double fd = (eval(f, DVec{x + h}) - eval(f, DVec{x - h})) / (2 * h);
      auto s = subdiff(f, DVec{x});
      REQUIRE(s.points.size() == 1);
      CHECK(s.points[0][0] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("precompose examples") {
  const auto f = make_rockafellar(QS2(1));
  const auto id = precompose(f, QS2(1), QS2(0), qv({"0", "0"}), QS2(1));
  for (auto p : {vec({4, 0}), vec({1, 0}), vec({0, 3}), vec({9, -2})}) {
    CHECK(eval(id, p).approx == eval(f, p).approx);
    CHECK(same_points(subdiff(id, p).exact_points, subdiff(f, p).exact_points));
  }
  CHECK(nc_equal(dom_subdiff(id), dom_subdiff(f)));

  // f3(x, y) = max{1 - sqrt(1 - y), |x|}
  const auto f3 = precompose(f, QS2(0), QS2(1), qv({"0", "1"}), QS2(1));
  std::mt19937_64 g(7);
  for (int i = 0; i < 50; ++i) {
    const double x = std::uniform_real_distribution<>(-3, 3)(g), y = std::uniform_real_distribution<>(-3, 1)(g);
    CHECK(eval(f3, DVec{x, y}) == doctest::Approx(std::max(1 - std::sqrt(1 - y), std::abs(x))).epsilon(1e-12));
  }
  CHECK(*eval(f3, RationalVector{Rational(1, 3), Rational(3, 4)}).exact == QS2(Rational(1, 2)));

  // f1 against the explicit rotation
  const auto f1 = ncpolygon_terms()[0];
  const double c = std::sqrt(0.5);
  for (int i = 0; i < 50; ++i) {
    const double x = std::uniform_real_distribution<>(-4, 4)(g), y = std::uniform_real_distribution<>(-4, 4)(g);
    const double xi1 = c * (x + 2) - c * y, xi2 = c * (x + 2) + c * y;
    const double want = xi1 < 0 ? INFINITY : std::max(std::sqrt(2.0) - std::sqrt(xi1), std::abs(xi2));
    const double got = eval(f1, DVec{x, y});
    if (std::isinf(want)) CHECK(std::isinf(got));
    else CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("precompose subdiff follows the adjoint rule") {
  const auto f = make_rockafellar(QS2(2));
  const auto h = precompose(f, qs("3/5"), qs("4/5"), qv({"1", "-1"}), QS2(2));
  std::mt19937_64 g(11);
  const double e = 1e-6;
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    const DVec x{std::uniform_real_distribution<>(-3, 3)(g), std::uniform_real_distribution<>(-3, 3)(g)};
    auto s = subdiff(h, x);
    if (s.points.size() != 1 || !s.rays.empty()) continue;
    DVec fd(2);
    for (int k = 0; k < 2; ++k) {
      DVec a = x, b = x;
      a[k] += e;
      b[k] -= e;
      const double fa = eval(h, a), fb = eval(h, b);
      if (std::isinf(fa) || std::isinf(fb)) goto next;
      fd[k] = (fa - fb) / (2 * e);
    }
    CHECK(s.points[0][0] == doctest::Approx(fd[0]).epsilon(1e-4));
    CHECK(s.points[0][1] == doctest::Approx(fd[1]).epsilon(1e-4));
    ++checked;
  next:;
  }
  CHECK(checked >= 20);
}

TEST_CASE("sum examples") {
  const HRep a = unit_square(), b = box(vec({1, 0}), vec({2, 1}));
  const auto s = sum_fn({make_indicator(a), make_indicator(b)});
  const HRep seg = hrep(2, {row({1, 0}, 1)}, {row({0, 1}, 1), row({0, -1}, 0)});
  CHECK(nc_equal(dom_subdiff(s), nc_from(seg)));
  auto sv = subdiff(s, RationalVector{1, Rational(1, 2)});
  CHECK(same_points(sv.exact_points, {qv({"0", "0"})}));
  CHECK(same_points(sv.exact_rays, {qv({"1", "0"}), qv({"-1", "0"})}));

  const auto one = sum_fn({make_rockafellar(QS2(1))});
  CHECK(one.kind() == FnKind::Rockafellar);

  CHECK(code_of([] {
          sum_fn({make_indicator(box(vec({0}), vec({1}))), make_indicator(box(vec({2}), vec({3})))});
        }) == ErrorCode::CqViolated);
  // non-polyhedral terms enter the qualification through ri: touching domains fail
  CHECK(code_of([] {
          sum_fn({make_interval_fn(IntervalKind::Open, Rational(0), Rational(1)),
                  make_interval_fn(IntervalKind::HalfOpen, Rational(-1), Rational(0))});
        }) == ErrorCode::CqViolated);
}

TEST_CASE("sum rule is a generator-level identity") {
  const auto terms = ncpolygon_terms();
  const auto f = sum_fn(terms);
  std::mt19937_64 g(3);
  for (int i = 0; i < 60; ++i) {
    RationalVector x{inst::rq(g, -3, 3, 4), inst::rq(g, -1, 1, 4)};
    SubVal s = subdiff(f, x);
    std::vector<SubVal> parts;
    for (const auto& t : terms) parts.push_back(subdiff(t, x));
    const bool any_empty = std::any_of(parts.begin(), parts.end(), [](const SubVal& p) { return p.empty(); });
    CHECK(s.empty() == any_empty);
    if (any_empty) continue;
    std::size_t combos = 1, rays = 0;
    for (const auto& p : parts) {
      combos *= p.points.size();
      rays += p.rays.size();
    }
    CHECK(s.points.size() <= combos);
    CHECK(s.rays.size() == rays);
    // every generator of the sum is a sum of member generators
    for (const auto& p : s.points) {
      double sx = 0, sy = 0;
      for (const auto& q : parts) {
        sx += q.points[0][0];
        sy += q.points[0][1];
      }
      if (combos == 1) {
        CHECK(p[0] == doctest::Approx(sx));
        CHECK(p[1] == doctest::Approx(sy));
      }
    }
  }
}

TEST_CASE("ncpolygon domain from the four compositions") {
  const auto f = sum_fn(ncpolygon_terms());
  const NCSet d = dom_subdiff(f);
  CHECK(nc_equal(d, ncpolygon_golden()));
  CHECK(d.pieces.size() == ncpolygon_golden().pieces.size());
  CHECK(is_nearly_convex(d).verdict);
}

TEST_CASE("assembler examples") {
  std::vector<EdgeRemoval> all;
  for (const auto& e : polygon_edges(ncpolygon_quad())) all.push_back(e);
  CHECK(all.size() == 4);
  auto a = assemble_polygon_fn(ncpolygon_quad(), all);
  CHECK(nc_equal(a.predicted_dom, ncpolygon_golden()));
  CHECK(nc_equal(dom_subdiff(a.f), a.predicted_dom));

  auto sq = assemble_polygon_fn(unit_square(), {});
  CHECK(sq.f.kind() == FnKind::Indicator);
  CHECK(nc_equal(sq.predicted_dom, nc_from(unit_square())));

  const HRep half = hrep(2, {}, {row({-1, 0}, 0)});
  auto hp = assemble_polygon_fn(half, {{true, vec({0, 0}), vec({0, -1})}});
  const NCSet want = NCSet{2, difference(half, {hrep(2, {row({1, 0}, 0)}, {}, {row({0, 1}, 0)})})};
  CHECK(nc_equal(hp.predicted_dom, want));
  CHECK(nc_equal(dom_subdiff(hp.f), want));
  CHECK(nc_contains(hp.predicted_dom, vec({0, 0})));
  CHECK(subdiff(hp.f, vec({0, -1})).empty());
  CHECK(!subdiff(hp.f, vec({0, 0})).empty());

  CHECK(code_of([] { assemble_polygon_fn(hrep(2, {row({1, 0}, 0)}, {}), {}); }) == ErrorCode::NotFullDim);
  CHECK(code_of([] { assemble_polygon_fn(box(vec({0}), vec({1})), {}); }) == ErrorCode::Not2D);
}

TEST_CASE("assembler: probing subdiff reproduces the predicted domain") {
  // triangle with an irrational-length edge, a strip-like unbounded region, and the polygon example
  const std::vector<HRep> cs{hrep(2, {}, {row({-1, 0}, 0), row({0, -1}, 0), row({1, 2}, 2)}),
                             hrep(2, {}, {row({0, -1}, 0), row({-1, 1}, 1)}), ncpolygon_quad()};
  std::mt19937_64 g(5);
  for (const auto& c : cs) {
    const auto edges = polygon_edges(c);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<EdgeRemoval> rm;
      for (const auto& e : edges)
        if (g() % 2) rm.push_back(e);
      const auto a = assemble_polygon_fn(c, rm);
      CHECK(nc_equal(dom_subdiff(a.f), a.predicted_dom));
      // probe a lattice that hits vertices, edge interiors and cells
      for (int i = -16; i <= 16; ++i)
        for (int j = -8; j <= 8; ++j) {
          const RationalVector x{q(i, 4), q(j, 4)};
          CHECK_MESSAGE(subdiff(a.f, x).empty() != nc_contains(a.predicted_dom, x), to_string(x));
        }
    }
  }
}

TEST_CASE("project_finite examples") {
  const std::vector<RationalVector> c{vec({0, 0}), vec({2, 0})};
  auto p = project_finite(c, RationalVector{Rational(6, 5), 0});
  CHECK(p == std::vector<RationalVector>{vec({2, 0})});
  CHECK(project_finite(c, vec({1, 5})).size() == 2);
  CHECK(project_finite(c, vec({0, 0})) == std::vector<RationalVector>{vec({0, 0})});
  CHECK(code_of([] { project_finite(std::vector<RationalVector>{}, vec({0})); }) == ErrorCode::EmptySet);
}

TEST_CASE("property: subgradient inequality on catalog functions") {
  std::vector<ConvexFn> fs{make_rockafellar(QS2(Rational(1, 2))), make_rockafellar(QS2(2)), make_halfstrip(QS2(1)),
                           make_halfstrip(QS2(0)), make_gauge_recip(open_square(), vec({0, 0})),
                           make_indicator(unit_square()), make_support(unit_square())};
  for (const auto& f : fs) {
    std::vector<DVec> ys;
    for (int i = -12; i <= 12; ++i)
      for (int j = -12; j <= 12; ++j) ys.push_back({i / 4.0, j / 4.0});
    for (int i = -8; i <= 8; ++i)
      for (int j = -8; j <= 8; ++j) {
        const RationalVector x{q(i, 4), q(j, 4)};
        const SubVal s = subdiff(f, x);
        if (s.empty()) continue;
        const double fx = eval(f, x).approx;
        for (const auto& u : s.points)
          for (const auto& y : ys) {
            const double fy = eval(f, y);
            if (std::isinf(fy)) continue;
            const double lin = fx + u[0] * (y[0] - i / 4.0) + u[1] * (y[1] - j / 4.0);
            CHECK_MESSAGE(fy >= lin - 1e-9, kind_name(f.kind()), " x=", to_string(x));
          }
      }
  }
}

TEST_CASE("property: domains of catalog functions are nearly convex") {
  std::vector<ConvexFn> fs{make_rockafellar(QS2(1)),
                           make_halfstrip(QS2(0)),
                           make_halfstrip(QS2(3)),
                           make_gauge_recip(open_square(), RationalVector{Rational(1, 3), 0}),
                           make_support(hrep(2, {}, {row({-1, 0}, 0)})),
                           make_interval_fn(IntervalKind::HalfOpenLeft, Rational(-2), Rational(5))};
  for (const auto& f : fs) CHECK(is_nearly_convex(dom_subdiff(f)).verdict);
}
