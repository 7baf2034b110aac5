#include "ncx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ncx/error.hpp"

namespace ncx::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dotd(const DVec& a, const DVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const DVec& a) { return std::sqrt(dotd(a, a)); }

DVec axpy(const DVec& x, double t, const DVec& d) {
  DVec y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * d[i];
  return y;
}

// <x*, x> - f(x), -inf off the domain
double objective(const ConvexFn& f, const DVec& xs, const DVec& x) {
  const double v = eval(f, x);
  return std::isinf(v) ? -kInf : dotd(xs, x) - v;
}

std::vector<DVec> directions(std::size_t n) {
  std::vector<DVec> ds;
  if (n == 1) return {{1.0}, {-1.0}};
  if (n == 2) {
    for (int k = 0; k < 72; ++k) {
      const double t = 2 * std::numbers::pi * k / 72;
      ds.push_back({std::cos(t), std::sin(t)});
    }
    return ds;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (double s : {1.0, -1.0}) {
      DVec d(n, 0.0);
      d[i] = s;
      ds.push_back(d);
    }
  std::mt19937_64 g(0x5eed);
  std::normal_distribution<> nd;
  for (int k = 0; k < 64; ++k) {
    DVec d(n);
    for (auto& v : d) v = nd(g);
    const double l = norm(d);
    for (auto& v : d) v /= l;
    ds.push_back(d);
  }
  return ds;
}

// Recession slope of the objective along d, sampled far out; positive at two scales certifies +inf.
bool certified_unbounded(const ConvexFn& f, const DVec& xs, const DVec& x0) {
  constexpr double T[] = {1e6, 1e7, 1e8};
  constexpr double kSlope = 1e-3;
  for (const auto& d : directions(xs.size())) {
    double phi[3];
    bool finite = true;
    for (int i = 0; i < 3 && finite; ++i) {
      phi[i] = objective(f, xs, axpy(x0, T[i], d));
      finite = std::isfinite(phi[i]);
    }
    if (!finite) continue;
    const double s1 = (phi[1] - phi[0]) / (T[1] - T[0]), s2 = (phi[2] - phi[1]) / (T[2] - T[1]);
    if (s1 > kSlope && s2 > kSlope) return true;
  }
  return false;
}

struct Cand {
  double v = -kInf;
  DVec x;
};

void keep_top(std::vector<Cand>& top, std::size_t k, double v, const DVec& x) {
  if (!std::isfinite(v)) return;
  if (top.size() == k && v <= top.back().v) return;
  Cand c{v, x};
  top.insert(std::upper_bound(top.begin(), top.end(), c, [](const Cand& a, const Cand& b) { return a.v > b.v; }), c);
  if (top.size() > k) top.pop_back();
}

// Max of a concave extended-real g on [lo, hi] given a finite value at c; golden section on each side of c,
// ties (including -inf against -inf) move toward c, which is valid because dom g is an interval containing c.
double line_max(const std::function<double(double)>& g, double lo, double hi, double c, double& arg) {
  constexpr double kPhi = 0.6180339887498949;
  double best = g(c);
  arg = c;
  auto side = [&](double a, double b, bool anchor_left) {
    double m1 = b - kPhi * (b - a), m2 = a + kPhi * (b - a);
    double g1 = g(m1), g2 = g(m2);
    for (int it = 0; it < 60 && b - a > 1e-12 * (1 + std::abs(a) + std::abs(b)); ++it) {
      if (g1 > best) best = g1, arg = m1;
      if (g2 > best) best = g2, arg = m2;
      const bool go_left = anchor_left ? g1 >= g2 : g1 > g2;
      if (go_left) {
        b = m2;
        m2 = m1;
        g2 = g1;
        m1 = b - kPhi * (b - a);
        g1 = g(m1);
      } else {
        a = m1;
        m1 = m2;
        g1 = g2;
        m2 = a + kPhi * (b - a);
        g2 = g(m2);
      }
    }
    if (g1 > best) best = g1, arg = m1;
    if (g2 > best) best = g2, arg = m2;
  };
  if (c > lo) side(lo, c, false);
  if (c < hi) side(c, hi, true);
  return best;
}

// sup of the objective over the box by nested concave line searches (partial maxima of a concave
// function stay concave); the outer anchor is the best grid point.
double nested_max(const ConvexFn& f, const DVec& xs, const Grid& grid, DVec x, std::size_t k, std::size_t& evals,
                  const DVec* anchor) {
  const std::size_t n = x.size();
  if (k == n) {
    ++evals;
    return objective(f, xs, x);
  }
  const double lo = grid.axes[k].lo, hi = grid.axes[k].hi;
  auto inner = [&](double t) {
    x[k] = t;
    return nested_max(f, xs, grid, x, k + 1, evals, nullptr);
  };
  double c = 0, cv = -kInf;
  if (anchor) {
    c = (*anchor)[k];
    cv = inner(c);
  } else {
    const int m = k + 1 == n ? 65 : 17;
    for (int i = 0; i < m; ++i) {
      const double t = lo + (hi - lo) * i / (m - 1);
      const double v = inner(t);
      if (v > cv) cv = v, c = t;
    }
  }
  if (!std::isfinite(cv)) return cv;
  double arg = c;
  return line_max(inner, lo, hi, c, arg);
}

ConjEstimate estimate(const ConvexFn& f, const DVec& xs, Grid grid) {
  constexpr std::size_t kTop = 4;
  constexpr int kZoom = 14;
  const std::size_t n = grid.dim();
  ConjEstimate out;
  std::vector<Cand> top;
  double last = -kInf;
  for (int grow = 0; grow < 6; ++grow) {
    std::vector<Cand> cur;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const DVec x = grid.point(i);
      const double v = objective(f, xs, x);
      if (cur.empty() || v > cur.front().v) best_index = i;
      keep_top(cur, kTop, v, x);
    }
    out.samples_used += grid.size();
    if (cur.empty() || cur.front().v <= last + 1e-12) break;
    top = std::move(cur);
    last = top.front().v;
    // widen the box on any side where the best point sits on the edge
    bool grew = false;
    std::size_t rest = best_index;
    for (std::size_t a = n; a-- > 0;) {
      const std::size_t m = grid.per_axis(a), k = rest % m;
      rest /= m;
      const double w = grid.axes[a].hi - grid.axes[a].lo;
      if (k == 0) grid.axes[a].lo -= w;
      if (k + 1 == m) grid.axes[a].hi += w;
      grew = grew || k == 0 || k + 1 == m;
    }
    if (!grew) break;
  }
  if (top.empty()) {
    out.value = -kInf;
    return out;
  }
  if (certified_unbounded(f, xs, top.front().x)) {
    out.value = kInf;
    out.infinite = true;
    return out;
  }
  Cand best = top.front();
  const int sub = n <= 2 ? 17 : (n == 3 ? 9 : 5);
  for (const auto& start : top) {
    Cand c = start;
    DVec h(n);
    for (std::size_t a = 0; a < n; ++a) h[a] = (grid.axes[a].hi - grid.axes[a].lo) / double(grid.per_axis(a) - 1);
    for (int it = 0; it < kZoom; ++it) {
      DVec lo(n), hi(n);
      for (std::size_t a = 0; a < n; ++a) {
        lo[a] = c.x[a] - 2 * h[a];
        hi[a] = c.x[a] + 2 * h[a];
      }
      const Grid z = Grid::box(lo, hi, sub);
      const DVec center = c.x;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const DVec x = z.point(i);
        const double v = objective(f, xs, x);
        if (v > c.v) c = {v, x};
      }
      out.samples_used += z.size();
      if (c.x == center) {
        for (auto& v : h) v /= 4;
      } else {
        for (auto& v : h) v /= 2;
      }
    }
    if (c.v > best.v) best = c;
  }
  if (n <= 3) {
    std::size_t evals = 0;
    const double v = nested_max(f, xs, grid, DVec(n, 0.0), 0, evals, &top.front().x);
    out.samples_used += evals;
    best.v = std::max(best.v, v);
  }
  out.value = best.v;
  out.argmax = best.x;
  return out;
}

OracleReport subgrad_impl(const ConvexFn& f, const DVec& x, double fx, const DVec& u, const Grid& grid) {
  OracleReport r;
  r.name = "subgrad_check";
  r.tolerance = kTolExact;
  r.max_violation = 0;  // y = x contributes exactly 0
  r.witness = x;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DVec y = grid.point(i);
    const double fy = eval(f, y);
    if (std::isinf(fy)) continue;
    double lin = fx;
    for (std::size_t k = 0; k < x.size(); ++k) lin += u[k] * (y[k] - x[k]);
    const double v = lin - fy;
    if (v > r.max_violation) {
      r.max_violation = v;
      r.witness = y;
    }
  }
  r.samples_used = grid.size();
  r.passed = r.max_violation <= r.tolerance;
  return r;
}

// Central difference with step h and h/2; nullopt when f is not finite nearby or the two disagree.
std::optional<DVec> smooth_gradient(const ConvexFn& f, const DVec& z, double h) {
  const std::size_t n = z.size();
  DVec g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double vals[4];
    const double offs[4] = {h, -h, h / 2, -h / 2};
    for (int k = 0; k < 4; ++k) {
      DVec y = z;
      y[i] += offs[k];
      vals[k] = eval(f, y);
      if (!std::isfinite(vals[k])) return std::nullopt;
    }
    const double d1 = (vals[0] - vals[1]) / (2 * h), d2 = (vals[2] - vals[3]) / h;
    if (std::abs(d1 - d2) > 1e-6 * (1 + std::abs(d2))) return std::nullopt;
    g[i] = (4 * d2 - d1) / 3;
  }
  return g;
}

double cross(const DVec& o, const DVec& a, const DVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<DVec> hull2d(std::vector<DVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<DVec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double seg_dist(const DVec& q, const DVec& a, const DVec& b) {
  DVec ab(q.size()), aq(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    ab[i] = b[i] - a[i];
    aq[i] = q[i] - a[i];
  }
  const double l2 = dotd(ab, ab);
  const double t = l2 == 0 ? 0 : std::clamp(dotd(aq, ab) / l2, 0.0, 1.0);
  return norm(axpy(aq, -t, ab));
}

double dist_to_hull2d(const DVec& q, const std::vector<DVec>& h) {
  if (h.size() == 1) return norm(axpy(q, -1, h[0]));
  if (h.size() == 2) return seg_dist(q, h[0], h[1]);
  bool inside = true;
  double best = kInf;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    if (cross(a, b, q) < -1e-15) inside = false;
    best = std::min(best, seg_dist(q, a, b));
  }
  return inside ? 0 : best;
}

// Frank-Wolfe on the simplex of generators.
double dist_to_hull_fw(const DVec& q, const std::vector<DVec>& w) {
  DVec p = w[0];
  for (int it = 0; it < 4000; ++it) {
    DVec g = axpy(p, -1, q);
    std::size_t best = 0;
    double bv = kInf;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double v = dotd(g, w[j]);
      if (v < bv) {
        bv = v;
        best = j;
      }
    }
    DVec d = axpy(w[best], -1, p);
    const double dd = dotd(d, d);
    if (dd == 0) break;
    const double t = std::clamp(-dotd(g, d) / dd, 0.0, 1.0);
    if (t == 0) break;
    p = axpy(p, t, d);
  }
  return norm(axpy(q, -1, p));
}

double dist_to_hull(const DVec& q, const std::vector<DVec>& w, const std::vector<DVec>& hull) {
  if (q.size() == 1) {
    double lo = kInf, hi = -kInf;
    for (const auto& v : w) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return q[0] < lo ? lo - q[0] : (q[0] > hi ? q[0] - hi : 0);
  }
  if (q.size() == 2) return dist_to_hull2d(q, hull);
  return dist_to_hull_fw(q, w);
}

std::vector<DVec> truncated_generators(const SubVal& s, double window) {
  std::vector<DVec> v = s.points;
  for (const auto& p : s.points)
    for (const auto& r : s.rays) {
      const double l = norm(r);
      if (l > 0) v.push_back(axpy(p, window / l, r));
    }
  return v;
}

}  // namespace

// ---- Grid ----

Grid Grid::box(const DVec& lo, const DVec& hi, int steps, int level) {
  if (lo.size() != hi.size()) fail(ErrorCode::DimensionMismatch, "grid box ends differ in dimension");
  if (steps < 2) fail(ErrorCode::Parse, "grid needs at least 2 steps per axis");
  Grid g;
  g.level = level;
  for (std::size_t i = 0; i < lo.size(); ++i) g.axes.push_back({lo[i], hi[i], steps});
  return g;
}

Grid Grid::around(const DVec& x, double radius, int steps) {
  DVec lo = x, hi = x;
  for (auto& v : lo) v -= radius;
  for (auto& v : hi) v += radius;
  return box(lo, hi, steps);
}

std::size_t Grid::per_axis(std::size_t i) const {
  return static_cast<std::size_t>(axes[i].steps - 1) * (std::size_t{1} << level) + 1;
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (std::size_t i = 0; i < axes.size(); ++i) s *= per_axis(i);
  return s;
}

double Grid::coord(std::size_t axis, std::size_t k) const {
  const auto& a = axes[axis];
  const std::size_t m = per_axis(axis);
  const double t = double(k) / double(m - 1);
  const double v = a.lo + (a.hi - a.lo) * t;
  // snap rounding noise so that exact lattice values such as 0 stay exact
  return std::abs(v) <= 1e-14 * std::max(std::abs(a.lo), std::abs(a.hi)) ? 0.0 : v;
}

DVec Grid::point(std::size_t index) const {
  DVec x(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t m = per_axis(a);
    x[a] = coord(a, index % m);
    index /= m;
  }
  return x;
}

// ---- checks ----

ConjEstimate conj_oracle(const ConvexFn& f, const DVec& xs, const Grid& grid) {
  require_dim(xs.size(), f.dim(), "conj_oracle");
  require_dim(grid.dim(), f.dim(), "conj_oracle grid");
  ConjEstimate best;
  best.value = -kInf;
  std::size_t used = 0;
  for (int l = 0; l <= grid.level; ++l) {
    Grid g = grid;
    g.level = l;
    ConjEstimate e = estimate(f, xs, g);
    used += e.samples_used;
    if (e.value > best.value || (e.infinite && !best.infinite)) best = e;
    if (best.infinite) break;
  }
  best.samples_used = used;
  return best;
}

OracleReport subgrad_check(const ConvexFn& f, const DVec& x, const DVec& u, const Grid& grid) {
  require_dim(x.size(), f.dim(), "subgrad_check");
  require_dim(u.size(), f.dim(), "subgrad_check slope");
  const double fx = eval(f, x);
  if (std::isinf(fx)) fail(ErrorCode::InfiniteAtX, "subgrad_check: f(x) = +inf");
  return subgrad_impl(f, x, fx, u, grid);
}

OracleReport subgrad_check(const ConvexFn& f, const RationalVector& x, const DVec& u, const Grid& grid) {
  require_dim(x.size(), f.dim(), "subgrad_check");
  require_dim(u.size(), f.dim(), "subgrad_check slope");
  const Value v = eval(f, x);
  if (v.infinite) fail(ErrorCode::InfiniteAtX, "subgrad_check: f(x) = +inf");
  return subgrad_impl(f, to_double(x), v.approx, u, grid);
}

GraphSample graph_sample(const ConvexFn& f, const std::vector<DVec>& probes, std::uint64_t seed, int per_point) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<> unit(0, 1);
  GraphSample out;
  for (const auto& x : probes) {
    const SubVal s = subdiff(f, x);
    if (s.empty()) continue;
    for (int k = 0; k < per_point; ++k) {
      DVec w(s.points.size());
      double tot = 0;
      for (auto& v : w) tot += (v = unit(g) + 1e-3);
      DVec u(x.size(), 0.0);
      for (std::size_t i = 0; i < w.size(); ++i) u = axpy(u, w[i] / tot, s.points[i]);
      for (const auto& r : s.rays) u = axpy(u, 2 * unit(g), r);
      out.emplace_back(x, u);
    }
  }
  return out;
}

OracleReport monotone_check(const GraphSample& sample) {
  if (sample.empty()) fail(ErrorCode::EmptySample, "monotone_check on an empty sample");
  OracleReport r;
  r.name = "monotone_check";
  r.tolerance = kTolExact;
  double worst = kInf;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      const auto& [x, u] = sample[i];
      const auto& [y, v] = sample[j];
      double s = 0;
      for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (u[k] - v[k]);
      if (s < worst) {
        worst = s;
        r.witness = x;
        r.witness.insert(r.witness.end(), y.begin(), y.end());
      }
    }
  if (sample.size() == 1) worst = 0;
  r.max_violation = std::max(0.0, -worst);
  r.samples_used = sample.size();
  r.passed = worst >= -r.tolerance;
  return r;
}

DVec fd_gradient(const ConvexFn& f, const DVec& x, double h) {
  require_dim(x.size(), f.dim(), "fd_gradient");
  const std::size_t n = x.size();
  auto at = [&](std::size_t i, double t) {
    DVec y = x;
    y[i] += t;
    const double v = eval(f, y);
    if (std::isinf(v)) fail(ErrorCode::NotInterior, "fd_gradient: f is not finite around x");
    return v;
  };
  if (std::isinf(eval(f, x))) fail(ErrorCode::NotInterior, "fd_gradient: f(x) = +inf");
  DVec g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = (at(i, h) - at(i, -h)) / (2 * h);
    const double d2 = (at(i, h / 2) - at(i, -h / 2)) / h;
    g[i] = (4 * d2 - d1) / 3;
  }
  return g;
}

SubVal structure_reconstruct(const ConvexFn& f, const DVec& x, double radius, int samples, std::uint64_t seed) {
  require_dim(x.size(), f.dim(), "structure_reconstruct");
  if (std::isinf(eval(f, x))) fail(ErrorCode::NotInDom, "structure_reconstruct: f(x) = +inf");
  const std::size_t n = x.size();
  const HRep cl = closure(dom_subdiff(f));
  std::vector<std::pair<DVec, double>> le;
  for (const auto& r : cl.le) le.emplace_back(to_double(r.a), to_double(r.b));

  // gradients at z and at the same relative position 100x closer to x
  constexpr double kShrink = 100;
  std::mt19937_64 g(seed);
  std::normal_distribution<> nd;
  std::uniform_real_distribution<> unit(0, 1);
  std::vector<DVec> grads;
  for (int k = 0; k < samples; ++k) {
    DVec d(n);
    for (auto& v : d) v = nd(g);
    const double l = norm(d);
    if (l == 0) continue;
    const double rho = radius * std::pow(unit(g), 1.0 / double(n));
    const DVec z = axpy(x, rho / l, d);
    bool deep = true;
    for (const auto& [a, b] : le)
      if (b - dotd(a, z) < radius / 8 * norm(a)) deep = false;
    if (!deep) continue;
    const DVec zs = axpy(x, rho / l / kShrink, d);
    auto gr = smooth_gradient(f, z, radius / 64);
    auto gs = smooth_gradient(f, zs, radius / 64 / kShrink);
    if (!gr || !gs) continue;
    if (norm(*gs) > 2 * norm(*gr) + 1e-6) continue;  // blows up toward x: no limit
    grads.push_back(*gs);
  }
  SubVal out;
  if (grads.empty()) return out;
  out.points = n == 2 ? hull2d(grads) : grads;
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(grads.begin(), grads.end());
    out.points = {*lo, *hi};
    if (out.points[0] == out.points[1]) out.points.pop_back();
  }
  auto unit_ray = [](DVec a) {
    const double l = norm(a);
    for (auto& v : a) v /= l;
    return a;
  };
  for (const auto& r : cl.eq) {
    DVec a = to_double(r.a);
    out.rays.push_back(unit_ray(a));
    for (auto& v : a) v = -v;
    out.rays.push_back(unit_ray(a));
  }
  for (const auto& [a, b] : le)
    if (std::abs(dotd(a, x) - b) <= 1e-9 * (1 + std::abs(b))) out.rays.push_back(unit_ray(a));
  return out;
}

double hausdorff(const SubVal& a, const SubVal& b, double window) {
  if (a.empty() && b.empty()) return 0;
  if (a.empty() || b.empty()) return kInf;
  const auto va = truncated_generators(a, window), vb = truncated_generators(b, window);
  const bool planar = va.front().size() == 2;
  const auto ha = planar ? hull2d(va) : va, hb = planar ? hull2d(vb) : vb;
  double d = 0;
  for (const auto& v : ha) d = std::max(d, dist_to_hull(v, vb, hb));
  for (const auto& v : hb) d = std::max(d, dist_to_hull(v, va, ha));
  return d;
}

}  // namespace ncx::oracle
