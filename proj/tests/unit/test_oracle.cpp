#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/instances.hpp"
#include "ncx/error.hpp"
#include "ncx/oracle.hpp"

using namespace ncx;
using namespace ncx::oracle;
using inst::hrep;
using inst::row;
using inst::vec;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

Grid rock_box(double alpha, int steps = 200, int level = 0) {
  const double hi = 2 * alpha * alpha + 2;
  return Grid::box({-2, -2}, {hi, hi}, steps, level);
}

HRep open_square() { return hrep(2, {}, {}, {row({1, 0}, 1), row({-1, 0}, 1), row({0, 1}, 1), row({0, -1}, 1)}); }

SubVal sv(std::vector<DVec> pts, std::vector<DVec> rays = {}) {
  SubVal s;
  s.points = std::move(pts);
  s.rays = std::move(rays);
  return s;
}

}  // namespace

TEST_CASE("grid enumeration is nested under refinement") {
  const Grid g = Grid::box({0, -1}, {1, 1}, 3, 0);
  CHECK(g.size() == 9);
  Grid r = g;
  r.level = 2;
  CHECK(r.per_axis(0) == 9);
  CHECK(r.point(0) == DVec{0, -1});
  CHECK(r.point(r.size() - 1) == DVec{1, 1});
  // every coarse point appears in the refinement
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < r.size() && !found; ++j) found = r.point(j) == g.point(i);
    CHECK(found);
  }
  CHECK(code_of([] { Grid::box({0}, {1}, 1); }) == ErrorCode::Parse);
}

TEST_CASE("conj_oracle examples") {
  const auto f = make_rockafellar(QS2(1));
  auto e = conj_oracle(f, {0, 0}, Grid::box({0, -2}, {4, 2}, 41));
  CHECK(e.value == doctest::Approx(0).epsilon(1e-9));
  auto sq = conj_oracle(make_indicator(box(vec({0, 0}), vec({1, 1}))), {1, 1}, Grid::box({-1, -1}, {2, 2}, 31));
  CHECK(sq.value == doctest::Approx(2).epsilon(1e-9));
  auto h = conj_oracle(f, {-0.5, 0}, rock_box(1));
  CHECK(h.value == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(!h.infinite);
  auto out = conj_oracle(f, {1, 0}, rock_box(1));
  CHECK(out.infinite);
  auto side = conj_oracle(f, {-0.5, 1.2}, rock_box(1));
  CHECK(side.infinite);
}

TEST_CASE("conj_oracle never exceeds the closed form and is monotone in the level") {
  std::mt19937_64 g(2);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto f = make_rockafellar(QS2(from_double(alpha)));
    for (int k = 0; k < 20; ++k) {
      const DVec xs{-std::uniform_real_distribution<>(0, 3)(g), std::uniform_real_distribution<>(-1, 1)(g)};
      const double exact = conjugate_eval(f, xs);
      double prev = -INFINITY;
      for (int level = 0; level <= 1; ++level) {
        const auto e = conj_oracle(f, xs, rock_box(alpha, 50, level));
        CHECK(e.value <= exact + 1e-9);
        CHECK(e.value >= prev);
        prev = e.value;
      }
      CHECK(prev == doctest::Approx(exact).epsilon(1e-5).scale(1));
      CHECK(std::abs(prev - exact) <= kTolGrid);
    }
  }
}

TEST_CASE("subgrad_check examples") {
  const auto f = make_rockafellar(QS2(1));
  const Grid g = Grid::around({1, 0}, 1, 41);
  auto ok = subgrad_check(f, RationalVector{1, 0}, {-0.5, 0}, g);
  CHECK(ok.passed);
  auto bad = subgrad_check(f, RationalVector{1, 0}, {-1, 0}, g);
  CHECK(!bad.passed);
  CHECK(bad.max_violation > 0);
  CHECK(std::isinf(eval(f, bad.witness)) == false);
  auto self = subgrad_check(f, DVec{4, 0}, {-0.25, 0}, Grid::box({4, 0}, {4, 0}, 2));
  CHECK(self.max_violation == 0);
  CHECK(code_of([&] { subgrad_check(f, DVec{-1, 0}, {0, 0}, g); }) == ErrorCode::InfiniteAtX);
}

TEST_CASE("monotone_check examples") {
  const auto f = make_rockafellar(QS2(1));
  std::vector<DVec> probes;
  std::mt19937_64 g(9);
  for (int i = 0; i < 500; ++i)
    probes.push_back({std::uniform_real_distribution<>(0, 3)(g), std::uniform_real_distribution<>(-2, 2)(g)});
  for (double x2 : {-2.0, -1.0, 1.0, 1.5}) probes.push_back({0, x2});
  const auto sample = graph_sample(f, probes, 1, 2);
  CHECK(sample.size() >= 1000);
  CHECK(monotone_check(sample).passed);

  const std::vector<DVec> c{{0, 0}, {2, 0}};
  GraphSample proj;
  for (int i = 0; i < 100; ++i) {
    const DVec x{std::uniform_real_distribution<>(-2, 4)(g), std::uniform_real_distribution<>(-2, 2)(g)};
    for (const auto& p : project_finite(c, x)) proj.emplace_back(x, p);
  }
  CHECK(monotone_check(proj).passed);

  auto adv = monotone_check({{{0}, {1}}, {{1}, {0}}});
  CHECK(!adv.passed);
  CHECK(adv.max_violation == doctest::Approx(1));
  CHECK(code_of([] { monotone_check({}); }) == ErrorCode::EmptySample);
}

TEST_CASE("fd_gradient examples") {
  // (-1/4, 0) needs alpha - sqrt(4) > |x2|, so alpha = 3; with alpha = 1 the point (4, 0) is a kink
  auto g1 = fd_gradient(make_rockafellar(QS2(3)), {4, 0});
  CHECK(g1[0] == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(std::abs(g1[1]) < 1e-12);
  CHECK(subdiff(make_rockafellar(QS2(1)), DVec{4, 0}).points.size() == 2);
  auto g2 = fd_gradient(make_gauge_recip(open_square(), vec({0, 0})), {0.5, 0}, 1e-4);
  CHECK(g2[0] == doctest::Approx(4).epsilon(1e-6));
  CHECK(std::abs(g2[1]) < 1e-6);
  auto g3 = fd_gradient(make_interval_fn(IntervalKind::Ray, Rational(0), std::nullopt), {2});
  CHECK(g3[0] == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(code_of([] { fd_gradient(make_rockafellar(QS2(1)), {0, 3}); }) == ErrorCode::NotInterior);
}

TEST_CASE("fd_gradient agrees with single-valued subdifferentials") {
  std::vector<ConvexFn> fs{make_rockafellar(QS2(Rational(1, 2))), make_halfstrip(QS2(2)),
                           make_gauge_recip(open_square(), RationalVector{Rational(1, 4), 0}),
                           make_interval_fn(IntervalKind::Open, Rational(-1), Rational(1))};
  std::mt19937_64 g(4);
  int checked = 0;
  for (const auto& f : fs)
    for (int i = 0; i < 200; ++i) {
      DVec x(f.dim());
      for (auto& v : x) v = std::uniform_real_distribution<>(-0.95, 3)(g);
      const SubVal s = subdiff(f, x);
      if (s.points.size() != 1 || !s.rays.empty()) continue;
      try {
        const DVec d = fd_gradient(f, x, 1e-4);
        // skip probes within a step of a kink
        bool smooth = true;
        for (double t : {1e-4, -1e-4})
          for (std::size_t k = 0; k < x.size(); ++k) {
            DVec y = x;
            y[k] += t;
            const SubVal sy = subdiff(f, y);
            smooth = smooth && sy.points.size() == 1 && std::abs(sy.points[0][k] - s.points[0][k]) < 1e-2;
          }
        if (!smooth) continue;
        for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(d[k] - s.points[0][k]) <= 1e-6 * (1 + std::abs(d[k])));
        ++checked;
      } catch (const Error&) {
      }
    }
  CHECK(checked > 200);
}

TEST_CASE("structure_reconstruct examples") {
  const auto f = make_rockafellar(QS2(1));
  auto a = structure_reconstruct(f, {0, 1});
  CHECK(hausdorff(a, sv({{0, 1}}, {{-1, 0}})) < kTolStruct);
  auto b = structure_reconstruct(f, {1, 0});
  CHECK(hausdorff(b, sv({{-0.5, 0}, {0, 1}, {0, -1}})) < kTolStruct);
  auto c = structure_reconstruct(make_rockafellar(QS2(3)), {4, 0});
  CHECK(hausdorff(c, sv({{-0.25, 0}})) < kTolStruct);
  auto kink = structure_reconstruct(f, {4, 0});
  CHECK(hausdorff(kink, sv({{0, 1}, {0, -1}})) < kTolStruct);
  // |x2| < alpha on the boundary: gradients blow up, no limit
  CHECK(structure_reconstruct(f, {0, 0.5}).empty());
  CHECK(code_of([&] { structure_reconstruct(f, {-1, 0}); }) == ErrorCode::NotInDom);
}

TEST_CASE("hausdorff distance") {
  CHECK(hausdorff(sv({{0, 0}}), sv({{3, 4}})) == doctest::Approx(5));
  CHECK(hausdorff(sv({{0, 0}, {1, 0}, {0, 1}}), sv({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}})) == 0);
  CHECK(hausdorff(sv({{0, 1}}, {{-1, 0}}), sv({{-1, 1}, {0, 1}})) == doctest::Approx(0));
  CHECK(std::isinf(hausdorff(sv({}), sv({{0, 0}}))));
  CHECK(hausdorff(sv({{0}}, {{1}}), sv({{0}, {2}}), 2) == doctest::Approx(0));
}
