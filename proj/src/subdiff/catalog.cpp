#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ncx/error.hpp"
#include "ncx/subdiff.hpp"
#include "subdiff_internal.hpp"

namespace ncx {

using detail::kGuard;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- scalar policies for the case tables ----

struct ExactOps {
  using S = QS2;
  static int sign(const QS2& v, bool&) { return v.sign(); }
  // sign(v - sqrt(w)) for w >= 0
  static int sign_minus_sqrt(const QS2& v, const QS2& w, bool&) {
    if (v.sign() < 0) return -1;
    return (v * v - w).sign();
  }
  static QS2 abs(const QS2& v) { return ncx::abs(v); }
};

struct NumOps {
  using S = double;
  static int sign(double v, bool& near) {
    if (std::abs(v) <= kGuard) {
      if (v != 0) near = true;
      return 0;
    }
    return v > 0 ? 1 : -1;
  }
  static int sign_minus_sqrt(double v, double w, bool& near) { return sign(v - std::sqrt(std::max(w, 0.0)), near); }
  static double abs(double v) { return std::abs(v); }
};

template <class Ops>
int rock_case(const typename Ops::S& a, const typename Ops::S& x1, const typename Ops::S& x2, bool& near) {
  const int s1 = Ops::sign(x1, near);
  const int s2 = Ops::sign(x2, near);
  if (s1 < 0) return 1;
  if (s1 == 0) {
    if (Ops::sign(Ops::abs(x2) - a, near) < 0) return 2;
    return s2 > 0 ? 3 : 4;
  }
  const int t = Ops::sign(x1 - a * a, near);
  if (t < 0) {
    const int d = Ops::sign_minus_sqrt(a - Ops::abs(x2), x1, near);
    if (d > 0) return 7;
    if (d == 0) return s2 > 0 ? 5 : 6;
    return s2 > 0 ? 8 : 9;
  }
  if (t == 0) return s2 == 0 ? 10 : 14;
  return s2 == 0 ? 11 : (s2 > 0 ? 12 : 13);
}

template <class Ops>
int strip_case(const typename Ops::S& a, const typename Ops::S& x1, const typename Ops::S& x2, bool& near) {
  const int s1 = Ops::sign(x1, near);
  if (s1 < 0) return 1;
  if (s1 == 0) return Ops::sign(x2 - a, near) < 0 ? 2 : 3;
  // sign(x2 - (a - sqrt x1)) = -sign((a - x2) - sqrt x1)
  const int d = -Ops::sign_minus_sqrt(a - x2, x1, near);
  return d < 0 ? 4 : (d == 0 ? 5 : 6);
}

// ---- SubVal builders ----

struct Builder {
  SubVal v;
  explicit Builder(bool exact) { v.has_exact = exact; }

  void point(const QS2Vector& p) {
    v.points.push_back(to_double(p));
    if (v.has_exact) v.exact_points.push_back(p);
  }
  void point(const DVec& p) {
    v.points.push_back(p);
    v.has_exact = false;
  }
  void ray(const QS2Vector& r) {
    v.rays.push_back(to_double(r));
    if (v.has_exact) v.exact_rays.push_back(r);
  }
  void ray(const DVec& r) {
    v.rays.push_back(r);
    v.has_exact = false;
  }
  SubVal done() {
    if (!v.has_exact) {
      v.exact_points.clear();
      v.exact_rays.clear();
    }
    return std::move(v);
  }
};

// -- sqrt slope -1/(2 sqrt x1) --
void add_sqrt_slope(Builder& b, const QS2& x1) {
  if (auto s = sqrt_opt(x1)) b.point(QS2Vector{QS2(Rational(-1, 2)) / *s, QS2(0)});
  else b.point(DVec{-0.5 / std::sqrt(x1.to_double()), 0.0});
}
void add_sqrt_slope(Builder& b, double x1) { b.point(DVec{-0.5 / std::sqrt(x1), 0.0}); }

QS2Vector qv(long a, long b) { return {QS2(a), QS2(b)}; }

template <class S>
void rock_generators(Builder& b, int c, const S& alpha, const S& x1) {
  switch (c) {
    case 1:
    case 2:
      return;
    case 3:
      b.point(qv(0, 1));
      b.ray(qv(-1, 0));
      return;
    case 4:
      b.point(qv(0, -1));
      b.ray(qv(-1, 0));
      return;
    case 5:
      add_sqrt_slope(b, x1);
      b.point(qv(0, 1));
      return;
    case 6:
      add_sqrt_slope(b, x1);
      b.point(qv(0, -1));
      return;
    case 7:
      add_sqrt_slope(b, x1);
      return;
    case 8:
    case 12:
      b.point(qv(0, 1));
      return;
    case 9:
    case 13:
      b.point(qv(0, -1));
      return;
    case 10:
      if constexpr (std::is_same_v<S, QS2>) b.point(QS2Vector{QS2(Rational(-1, 2)) / alpha, QS2(0)});
      else b.point(DVec{-0.5 / alpha, 0.0});
      b.point(qv(0, 1));
      b.point(qv(0, -1));
      return;
    case 11:
      b.point(qv(0, 1));
      b.point(qv(0, -1));
      return;
    case 14:
      return;  // handled by the caller (sign of x2)
  }
}

template <class S>
void strip_generators(Builder& b, int c, const S& x1) {
  switch (c) {
    case 3:
      b.point(qv(0, 1));
      b.ray(qv(-1, 0));
      return;
    case 4:
      add_sqrt_slope(b, x1);
      return;
    case 5:
      add_sqrt_slope(b, x1);
      b.point(qv(0, 1));
      return;
    case 6:
      b.point(qv(0, 1));
      return;
    default:
      return;
  }
}

// ---- small linear algebra over Q(sqrt2) and doubles ----

std::optional<QMatrix> invert(QMatrix m) {
  const std::size_t n = m.size();
  QMatrix inv(n, QS2Vector(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = QS2(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].sign() == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const QS2 f = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = m[col][j] / f;
      inv[col][j] = inv[col][j] / f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col].sign() == 0) continue;
      const QS2 g = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= g * m[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

QS2Vector mul(const QMatrix& m, const QS2Vector& x) {
  QS2Vector y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) y[i] = dot(m[i], x);
  return y;
}

QS2Vector mul_t(const QMatrix& m, const QS2Vector& u) {
  QS2Vector y(m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += m[i][j] * u[i];
  return y;
}

DVec mul(const std::vector<DVec>& m, const DVec& x) {
  DVec y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

DVec mul_t(const std::vector<DVec>& m, const DVec& u) {
  DVec y(m.empty() ? 0 : m[0].size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += m[i][j] * u[i];
  return y;
}

double ddot(const DVec& a, const DVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QS2 qdot(const RationalVector& a, const QS2Vector& x) {
  QS2 s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += QS2(a[i]) * x[i];
  return s;
}

std::vector<DVec> dmat(const QMatrix& m) {
  std::vector<DVec> out;
  for (const auto& r : m) out.push_back(ncx::to_double(r));
  return out;
}

detail::DPoly to_dpoly(const HRep& h) {
  detail::DPoly d;
  auto conv = [](const std::vector<LinearRow>& rows) {
    std::vector<detail::DRow> out;
    for (const auto& r : rows) out.push_back({to_double(r.a), to_double(r.b)});
    return out;
  };
  d.eq = conv(h.eq);
  d.le = conv(h.le);
  d.lt = conv(h.lt);
  return d;
}

std::shared_ptr<detail::Node> new_node(FnKind k, std::size_t n) {
  auto node = std::make_shared<detail::Node>();
  node->kind = k;
  node->dim = n;
  return node;
}

const detail::Node& N(const ConvexFn& f) { return static_cast<const detail::Node&>(f.node()); }

// ---- indicator and support helpers ----

bool in_poly(const HRep& h, const QS2Vector& x) {
  for (const auto& r : h.eq)
    if (qdot(r.a, x) != QS2(r.b)) return false;
  for (const auto& r : h.le)
    if (qdot(r.a, x) > QS2(r.b)) return false;
  for (const auto& r : h.lt)
    if (qdot(r.a, x) >= QS2(r.b)) return false;
  return true;
}

bool in_dpoly(const detail::DPoly& h, const DVec& x) {
  for (const auto& r : h.eq)
    if (std::abs(ddot(r.a, x) - r.b) > kGuard * (1 + std::abs(r.b))) return false;
  for (const auto& r : h.le)
    if (ddot(r.a, x) > r.b + kGuard * (1 + std::abs(r.b))) return false;
  for (const auto& r : h.lt)
    if (ddot(r.a, x) >= r.b) return false;
  return true;
}

// sigma_C(x) over generators; nullopt = +inf
std::optional<QS2> support_value(const VRep& v, const QS2Vector& x) {
  for (const auto& l : v.lineality)
    if (qdot(l, x) != QS2(0)) return std::nullopt;
  for (const auto& r : v.rays)
    if (qdot(r, x) > QS2(0)) return std::nullopt;
  std::optional<QS2> best;
  for (const auto& p : v.points) {
    QS2 s = qdot(p, x);
    if (!best || s > *best) best = s;
  }
  return best;
}

// ---- rockafellar conjugate: five-region closed form ----

template <class S>
std::optional<S> rock_conj(const S& alpha, const S& x1, const S& x2) {
  auto sgn = [](const S& v) {
    if constexpr (std::is_same_v<S, QS2>) return v.sign();
    else return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  S ax2;
  if constexpr (std::is_same_v<S, QS2>) ax2 = abs(x2);
  else ax2 = std::abs(x2);
  const S one(1);
  if (sgn(x1) > 0 || sgn(ax2 - one) > 0) return std::nullopt;
  if (sgn(ax2 - one) == 0 || sgn(x1) == 0) return S(0);
  const S two(2), four(4);
  if (sgn(x1 + one / (two * alpha)) >= 0 && sgn(one + two * alpha * x1 - ax2) >= 0) return alpha * alpha * x1;
  const S r = one - ax2;
  return S(0) - r * r / (four * x1) - alpha * r;
}

}  // namespace

namespace detail {

std::vector<DVec> dmatrix(const QMatrix& m) { return dmat(m); }

}  // namespace detail

const char* kind_name(FnKind k) {
  switch (k) {
    case FnKind::Indicator:
      return "indicator";
    case FnKind::Support:
      return "support";
    case FnKind::GaugeRecip:
      return "gauge_recip";
    case FnKind::Interval1D:
      return "interval1d";
    case FnKind::Rockafellar:
      return "rockafellar";
    case FnKind::Halfstrip:
      return "halfstrip";
    case FnKind::Precomposed:
      return "precomposed";
    case FnKind::Sum:
      return "sum";
  }
  return "?";
}

const char* interval_kind_name(IntervalKind k) {
  switch (k) {
    case IntervalKind::Closed:
      return "closed";
    case IntervalKind::Open:
      return "open";
    case IntervalKind::Ray:
      return "ray";
    case IntervalKind::HalfOpen:
      return "halfopen";
    case IntervalKind::HalfOpenLeft:
      return "halfopen_left";
  }
  return "?";
}

FnKind ConvexFn::kind() const { return node_->kind; }
std::size_t ConvexFn::dim() const { return node_->dim; }

// ---- constructors ----

ConvexFn make_indicator(const HRep& c) {
  if (!c.lt.empty()) fail(ErrorCode::Parse, "indicator needs a closed polyhedron");
  if (is_empty(c)) fail(ErrorCode::EmptySet, "indicator of the empty set");
  auto node = new_node(FnKind::Indicator, c.dim);
  node->poly = canonicalize(c);
  node->dpoly = to_dpoly(node->poly);
  return ConvexFn(node);
}

ConvexFn make_support(const HRep& c) {
  if (!c.lt.empty()) fail(ErrorCode::Parse, "support function needs a closed polyhedron");
  if (is_empty(c)) fail(ErrorCode::EmptySet, "support function of the empty set");
  auto node = new_node(FnKind::Support, c.dim);
  node->poly = canonicalize(c);
  node->vpoly = dd_convert(node->poly);
  for (const auto& p : node->vpoly.points) node->dpoints.push_back(to_double(p));
  for (const auto& r : node->vpoly.rays) node->drays.push_back(to_double(r));
  for (const auto& l : node->vpoly.lineality) node->dlin.push_back(to_double(l));
  return ConvexFn(node);
}

ConvexFn make_gauge_recip(const HRep& c_open, const RationalVector& x0) {
  require_dim(x0.size(), c_open.dim, "make_gauge_recip");
  if (!c_open.eq.empty() || !c_open.le.empty())
    fail(ErrorCode::Unnormalizable, "gauge construction needs an open polyhedron given by strict rows");
  if (!contains(c_open, x0)) fail(ErrorCode::X0NotInterior, "x0 = " + to_string(x0) + " is not interior to C");
  auto node = new_node(FnKind::GaugeRecip, c_open.dim);
  node->poly = c_open;
  node->x0 = x0;
  for (const auto& r : c_open.lt) {
    Rational beta = r.b - dot(r.a, x0);
    if (beta <= 0) fail(ErrorCode::Internal, "gauge row with nonpositive offset after shift");
    node->beta.push_back(beta);
  }
  node->dpoly = to_dpoly(c_open);
  node->dx0 = to_double(x0);
  for (const auto& b : node->beta) node->dbeta.push_back(to_double(b));
  return ConvexFn(node);
}

ConvexFn make_interval_fn(IntervalKind kind, std::optional<Rational> a, std::optional<Rational> b) {
  if (a && b && *a >= *b) fail(ErrorCode::BadInterval, "interval needs a < b");
  const bool both = a && b;
  switch (kind) {
    case IntervalKind::Ray:
      if (a.has_value() == b.has_value()) fail(ErrorCode::BadInterval, "ray interval needs exactly one finite end");
      break;
    case IntervalKind::HalfOpen:
    case IntervalKind::HalfOpenLeft:
      if (!both) fail(ErrorCode::BadInterval, "half-open interval needs two finite ends");
      break;
    default:
      break;
  }
  auto node = new_node(FnKind::Interval1D, 1);
  node->ikind = kind;
  node->lo = a;
  node->hi = b;
  if (a) node->dlo = to_double(*a);
  if (b) node->dhi = to_double(*b);
  return ConvexFn(node);
}

ConvexFn make_rockafellar(const QS2& alpha) {
  if (alpha.sign() <= 0) fail(ErrorCode::Parse, "rockafellar needs alpha > 0");
  auto node = new_node(FnKind::Rockafellar, 2);
  node->alpha = alpha;
  node->dalpha = alpha.to_double();
  return ConvexFn(node);
}

ConvexFn make_halfstrip(const QS2& alpha) {
  if (alpha.sign() < 0) fail(ErrorCode::Parse, "halfstrip needs alpha >= 0");
  auto node = new_node(FnKind::Halfstrip, 2);
  node->alpha = alpha;
  node->dalpha = alpha.to_double();
  return ConvexFn(node);
}

ConvexFn precompose_matrix(const ConvexFn& f, const QMatrix& m, const QS2Vector& t) {
  const std::size_t n = f.dim();
  require_dim(m.size(), n, "precompose matrix rows");
  for (const auto& r : m) require_dim(r.size(), n, "precompose matrix cols");
  require_dim(t.size(), n, "precompose shift");
  auto inv = invert(m);
  if (!inv) fail(ErrorCode::Parse, "precompose needs an invertible matrix");
  auto node = new_node(FnKind::Precomposed, n);
  node->inner = f;
  node->m = m;
  node->shift = t;
  node->minv = *inv;
  node->md = dmat(m);
  node->dshift = to_double(t);
  node->dminv = dmat(*inv);
  return ConvexFn(node);
}

ConvexFn precompose(const ConvexFn& f, const QS2& cos, const QS2& sin, const QS2Vector& t, const QS2& c) {
  if (f.dim() != 2) fail(ErrorCode::Not2D, "rotation precomposition needs a function on R^2");
  if (cos * cos + sin * sin != QS2(1)) fail(ErrorCode::Parse, "(cos, sin) is not on the unit circle");
  if (c.sign() <= 0) fail(ErrorCode::Parse, "precompose needs c > 0");
  QMatrix m{{c * cos, -(c * sin)}, {c * sin, c * cos}};
  return precompose_matrix(f, m, t);
}

bool is_polyhedral(const ConvexFn& f) {
  const auto& n = N(f);
  switch (n.kind) {
    case FnKind::Indicator:
    case FnKind::Support:
      return true;
    case FnKind::Interval1D:
      return n.ikind == IntervalKind::Closed || (n.ikind == IntervalKind::Open && !n.lo && !n.hi);
    case FnKind::Precomposed:
      return is_polyhedral(n.inner);
    case FnKind::Sum:
      return std::all_of(n.terms.begin(), n.terms.end(), [](const ConvexFn& g) { return is_polyhedral(g); });
    default:
      return false;
  }
}

ConvexFn sum_fn(const std::vector<ConvexFn>& fs) {
  if (fs.empty()) fail(ErrorCode::DimensionMismatch, "sum of no functions");
  const std::size_t n = fs.front().dim();
  for (const auto& f : fs) require_dim(f.dim(), n, "sum_fn");
  if (fs.size() == 1) return fs.front();
  // Qualification: polyhedral terms enter through their domain, the rest through ri of it.
  HRep q = universe(n);
  for (const auto& f : fs) {
    auto cl = closure(dom_subdiff(f));
    q = intersect(q, is_polyhedral(f) ? cl : relative_interior(cl));
  }
  if (is_empty(q)) fail(ErrorCode::CqViolated, "sum_fn: domains fail the sum-rule qualification");
  auto node = new_node(FnKind::Sum, n);
  node->terms = fs;
  return ConvexFn(node);
}

// ---- exact evaluation ----

Value eval(const ConvexFn& f, const RationalVector& x) { return eval(f, lift(x)); }

Value eval(const ConvexFn& f, const QS2Vector& x) {
  const auto& n = N(f);
  require_dim(x.size(), n.dim, "eval");
  switch (n.kind) {
    case FnKind::Indicator:
      return in_poly(n.poly, x) ? Value::of(QS2(0)) : Value::inf();
    case FnKind::Support: {
      auto s = support_value(n.vpoly, x);
      return s ? Value::of(*s) : Value::inf();
    }
    case FnKind::GaugeRecip: {
      QS2Vector y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= QS2(n.x0[i]);
      QS2 rho(0);
      for (std::size_t i = 0; i < n.poly.lt.size(); ++i) rho = std::max(rho, qdot(n.poly.lt[i].a, y) / QS2(n.beta[i]));
      if (rho >= QS2(1)) return Value::inf();
      return Value::of(QS2(1) / (QS2(1) - rho));
    }
    case FnKind::Interval1D: {
      const QS2& t = x[0];
      const bool above_lo = !n.lo || t >= QS2(*n.lo), below_hi = !n.hi || t <= QS2(*n.hi);
      const bool strict_lo = !n.lo || t > QS2(*n.lo), strict_hi = !n.hi || t < QS2(*n.hi);
      switch (n.ikind) {
        case IntervalKind::Closed:
          return above_lo && below_hi ? Value::of(QS2(0)) : Value::inf();
        case IntervalKind::Open:
        case IntervalKind::Ray:
          if (!strict_lo || !strict_hi) return Value::inf();
          if (n.lo && n.hi) {
            if (t * QS2(2) == QS2(*n.lo + *n.hi)) return Value::of(QS2(0));
            return Value::num(eval(f, DVec{t.to_double()}));
          }
          if (n.lo) return Value::of(QS2(1) / (t - QS2(*n.lo)));
          if (n.hi) return Value::of(QS2(1) / (QS2(*n.hi) - t));
          return Value::of(QS2(0));
        case IntervalKind::HalfOpen:
          if (!strict_lo || !below_hi) return Value::inf();
          return Value::num(eval(f, DVec{t.to_double()}));
        case IntervalKind::HalfOpenLeft:
          if (!above_lo || !strict_hi) return Value::inf();
          return Value::num(eval(f, DVec{t.to_double()}));
      }
      return Value::inf();
    }
    case FnKind::Rockafellar:
    case FnKind::Halfstrip: {
      const QS2& x1 = x[0];
      const QS2 lin = n.kind == FnKind::Rockafellar ? abs(x[1]) : x[1];
      if (x1.sign() < 0) return Value::inf();
      if (auto s = sqrt_opt(x1)) return Value::of(std::max(n.alpha - *s, lin));
      bool near = false;
      // lin >= alpha - sqrt(x1)  <=>  sign((alpha - lin) - sqrt(x1)) <= 0
      if (ExactOps::sign_minus_sqrt(n.alpha - lin, x1, near) <= 0) return Value::of(lin);
      return Value::num(n.dalpha - std::sqrt(x1.to_double()));
    }
    case FnKind::Precomposed: {
      QS2Vector y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= n.shift[i];
      return eval(n.inner, mul(n.m, y));
    }
    case FnKind::Sum: {
      Value acc = Value::of(QS2(0));
      for (const auto& g : n.terms) {
        Value v = eval(g, x);
        if (v.infinite) return Value::inf();
        acc.approx += v.approx;
        if (acc.exact && v.exact) acc.exact = *acc.exact + *v.exact;
        else acc.exact.reset();
      }
      if (acc.exact) acc.approx = acc.exact->to_double();
      return acc;
    }
  }
  return Value::inf();
}

// ---- numeric evaluation ----

double eval(const ConvexFn& f, const DVec& x) {
  const auto& n = N(f);
  switch (n.kind) {
    case FnKind::Indicator:
      return in_dpoly(n.dpoly, x) ? 0.0 : kInf;
    case FnKind::Support: {
      for (const auto& l : n.dlin)
        if (std::abs(ddot(l, x)) > kGuard) return kInf;
      for (const auto& r : n.drays)
        if (ddot(r, x) > kGuard) return kInf;
      double best = -kInf;
      for (const auto& p : n.dpoints) best = std::max(best, ddot(p, x));
      return best;
    }
    case FnKind::GaugeRecip: {
      double rho = 0;
      for (std::size_t i = 0; i < n.dpoly.lt.size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += n.dpoly.lt[i].a[j] * (x[j] - n.dx0[j]);
        rho = std::max(rho, s / n.dbeta[i]);
      }
      return rho >= 1 ? kInf : 1 / (1 - rho);
    }
    case FnKind::Interval1D: {
      const double t = x[0];
      const bool has_lo = n.lo.has_value(), has_hi = n.hi.has_value();
      const double a = n.dlo, b = n.dhi;
      switch (n.ikind) {
        case IntervalKind::Closed:
          return (!has_lo || t >= a) && (!has_hi || t <= b) ? 0.0 : kInf;
        case IntervalKind::Open:
        case IntervalKind::Ray:
          if ((has_lo && t <= a) || (has_hi && t >= b)) return kInf;
          if (has_lo && has_hi) {
            const double w = b - a;
            return -(w / std::numbers::pi) * std::log(std::cos(std::numbers::pi * (t - a) / w - std::numbers::pi / 2));
          }
          if (has_lo) return 1 / (t - a);
          if (has_hi) return 1 / (b - t);
          return 0.0;
        case IntervalKind::HalfOpen:
          if (t <= a || t > b) return kInf;
          return -(std::log(t - a) - t / (b - a));
        case IntervalKind::HalfOpenLeft:
          if (t < a || t >= b) return kInf;
          return -std::log(b - t) - t / (b - a);
      }
      return kInf;
    }
    case FnKind::Rockafellar:
      if (x[0] < 0) return kInf;
      return std::max(n.dalpha - std::sqrt(x[0]), std::abs(x[1]));
    case FnKind::Halfstrip:
      if (x[0] < 0) return kInf;
      return std::max(n.dalpha - std::sqrt(x[0]), x[1]);
    case FnKind::Precomposed: {
      DVec y(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - n.dshift[i];
      return eval(n.inner, mul(n.md, y));
    }
    case FnKind::Sum: {
      double s = 0;
      for (const auto& g : n.terms) {
        s += eval(g, x);
        if (s == kInf) return kInf;
      }
      return s;
    }
  }
  return kInf;
}

// ---- subdifferentials ----

namespace {

SubVal minkowski(const SubVal& a, const SubVal& b) {
  SubVal out;
  out.near_boundary = a.near_boundary || b.near_boundary;
  out.has_exact = a.has_exact && b.has_exact;
  if (a.empty() || b.empty()) return out;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      DVec p(a.points[i].size());
      for (std::size_t k = 0; k < p.size(); ++k) p[k] = a.points[i][k] + b.points[j][k];
      if (out.has_exact) {
        QS2Vector q(p.size());
        for (std::size_t k = 0; k < q.size(); ++k) q[k] = a.exact_points[i][k] + b.exact_points[j][k];
        if (std::find(out.exact_points.begin(), out.exact_points.end(), q) != out.exact_points.end()) continue;
        out.exact_points.push_back(q);
      } else if (std::find(out.points.begin(), out.points.end(), p) != out.points.end()) {
        continue;
      }
      out.points.push_back(p);
    }
  out.rays = a.rays;
  out.rays.insert(out.rays.end(), b.rays.begin(), b.rays.end());
  if (out.has_exact) {
    out.exact_rays = a.exact_rays;
    out.exact_rays.insert(out.exact_rays.end(), b.exact_rays.begin(), b.exact_rays.end());
  }
  return out;
}

// Normal cone of a closed polyhedron at x in exact or numeric form.
SubVal normal_cone_exact(const HRep& h, const QS2Vector& x) {
  Builder b(true);
  if (!in_poly(h, x)) return b.done();
  b.point(QS2Vector(h.dim, QS2(0)));
  for (const auto& r : h.eq) {
    b.ray(lift(r.a));
    b.ray(lift(scale(-1, r.a)));
  }
  for (const auto& r : h.le)
    if (qdot(r.a, x) == QS2(r.b)) b.ray(lift(r.a));
  return b.done();
}

SubVal normal_cone_num(const detail::DPoly& h, const DVec& x, std::size_t n) {
  SubVal s;
  if (!in_dpoly(h, x)) return s;
  s.points.push_back(DVec(n, 0.0));
  for (const auto& r : h.eq) {
    s.rays.push_back(r.a);
    DVec m = r.a;
    for (auto& v : m) v = -v;
    s.rays.push_back(m);
  }
  for (const auto& r : h.le) {
    const double gap = r.b - ddot(r.a, x);
    if (gap <= kGuard * (1 + std::abs(r.b))) {
      if (gap != 0) s.near_boundary = true;
      s.rays.push_back(r.a);
    }
  }
  return s;
}

SubVal interval_subdiff(const detail::Node& n, const QS2& t) {
  Builder b(true);
  const bool at_lo = n.lo && t == QS2(*n.lo), at_hi = n.hi && t == QS2(*n.hi);
  const bool strict_lo = !n.lo || t > QS2(*n.lo), strict_hi = !n.hi || t < QS2(*n.hi);
  const bool inside = strict_lo && strict_hi;
  switch (n.ikind) {
    case IntervalKind::Closed:
      if (inside) b.point({QS2(0)});
      if (at_lo || at_hi) {
        b.point({QS2(0)});
        b.ray({QS2(at_lo ? -1 : 1)});
      }
      return b.done();
    case IntervalKind::Open:
    case IntervalKind::Ray:
      if (!inside) return b.done();
      if (n.lo && n.hi) {
        if (t * QS2(2) == QS2(*n.lo + *n.hi)) b.point({QS2(0)});
        else {
          const double a = n.dlo, w = n.dhi - n.dlo;
          b.point(DVec{std::tan(std::numbers::pi * (t.to_double() - a) / w - std::numbers::pi / 2)});
        }
      } else if (n.lo) {
        const QS2 d = t - QS2(*n.lo);
        b.point({QS2(-1) / (d * d)});
      } else if (n.hi) {
        const QS2 d = QS2(*n.hi) - t;
        b.point({QS2(1) / (d * d)});
      } else {
        b.point({QS2(0)});
      }
      return b.done();
    case IntervalKind::HalfOpen:
      if (inside) b.point({QS2(1) / (QS2(*n.lo) - t) - QS2(1) / QS2(*n.lo - *n.hi)});
      if (at_hi) {
        b.point({QS2(0)});
        b.ray({QS2(1)});
      }
      return b.done();
    case IntervalKind::HalfOpenLeft:
      if (inside) b.point({QS2(1) / (QS2(*n.hi) - t) - QS2(1) / QS2(*n.hi - *n.lo)});
      if (at_lo) {
        b.point({QS2(0)});
        b.ray({QS2(-1)});
      }
      return b.done();
  }
  return b.done();
}

SubVal interval_subdiff_num(const detail::Node& n, double t) {
  SubVal s;
  const bool has_lo = n.lo.has_value(), has_hi = n.hi.has_value();
  const double a = n.dlo, b = n.dhi;
  const bool at_lo = has_lo && std::abs(t - a) <= kGuard, at_hi = has_hi && std::abs(t - b) <= kGuard;
  const bool inside = (!has_lo || t > a + kGuard) && (!has_hi || t < b - kGuard);
  if ((at_lo && t != a) || (at_hi && t != b)) s.near_boundary = true;
  switch (n.ikind) {
    case IntervalKind::Closed:
      if (inside || at_lo || at_hi) s.points.push_back({0.0});
      if (at_lo) s.rays.push_back({-1.0});
      if (at_hi) s.rays.push_back({1.0});
      return s;
    case IntervalKind::Open:
    case IntervalKind::Ray:
      if (!inside) return s;
      if (has_lo && has_hi) s.points.push_back({std::tan(std::numbers::pi * (t - a) / (b - a) - std::numbers::pi / 2)});
      else if (has_lo) s.points.push_back({-1 / ((t - a) * (t - a))});
      else if (has_hi) s.points.push_back({1 / ((b - t) * (b - t))});
      else s.points.push_back({0.0});
      return s;
    case IntervalKind::HalfOpen:
      if (inside) s.points.push_back({1 / (a - t) - 1 / (a - b)});
      if (at_hi) {
        s.points.push_back({0.0});
        s.rays.push_back({1.0});
      }
      return s;
    case IntervalKind::HalfOpenLeft:
      if (inside) s.points.push_back({1 / (b - t) - 1 / (b - a)});
      if (at_lo) {
        s.points.push_back({0.0});
        s.rays.push_back({-1.0});
      }
      return s;
  }
  return s;
}

}  // namespace

int rockafellar_case(const QS2& alpha, const QS2Vector& x) {
  require_dim(x.size(), 2, "rockafellar_case");
  bool near = false;
  return rock_case<ExactOps>(alpha, x[0], x[1], near);
}

SubVal subdiff(const ConvexFn& f, const RationalVector& x) { return subdiff(f, lift(x)); }

SubVal subdiff(const ConvexFn& f, const QS2Vector& x) {
  const auto& n = N(f);
  require_dim(x.size(), n.dim, "subdiff");
  switch (n.kind) {
    case FnKind::Indicator:
      return normal_cone_exact(n.poly, x);
    case FnKind::Support: {
      Builder b(true);
      auto s = support_value(n.vpoly, x);
      if (!s) return b.done();
      for (const auto& p : n.vpoly.points)
        if (qdot(p, x) == *s) b.point(lift(p));
      for (const auto& r : n.vpoly.rays)
        if (qdot(r, x) == QS2(0)) b.ray(lift(r));
      for (const auto& l : n.vpoly.lineality) {
        b.ray(lift(l));
        b.ray(lift(scale(-1, l)));
      }
      return b.done();
    }
    case FnKind::GaugeRecip: {
      Builder b(true);
      QS2Vector y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= QS2(n.x0[i]);
      std::vector<QS2> vals;
      QS2 rho(0);
      for (std::size_t i = 0; i < n.poly.lt.size(); ++i) {
        vals.push_back(qdot(n.poly.lt[i].a, y) / QS2(n.beta[i]));
        rho = std::max(rho, vals.back());
      }
      if (rho >= QS2(1)) return b.done();
      const QS2 w = (QS2(1) - rho) * (QS2(1) - rho);
      if (rho.sign() == 0) b.point(QS2Vector(n.dim, QS2(0)));
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == rho) {
          QS2Vector g = lift(scale(1 / n.beta[i], n.poly.lt[i].a));
          for (auto& v : g) v = v / w;
          b.point(g);
        }
      return b.done();
    }
    case FnKind::Interval1D:
      return interval_subdiff(n, x[0]);
    case FnKind::Rockafellar: {
      bool near = false;
      const int c = rock_case<ExactOps>(n.alpha, x[0], x[1], near);
      Builder b(true);
      if (c == 14) b.point(qv(0, x[1].sign()));
      else rock_generators(b, c, n.alpha, x[0]);
      return b.done();
    }
    case FnKind::Halfstrip: {
      bool near = false;
      const int c = strip_case<ExactOps>(n.alpha, x[0], x[1], near);
      Builder b(true);
      strip_generators(b, c, x[0]);
      return b.done();
    }
    case FnKind::Precomposed: {
      QS2Vector y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= n.shift[i];
      SubVal in = subdiff(n.inner, mul(n.m, y));
      SubVal out;
      out.near_boundary = in.near_boundary;
      out.has_exact = in.has_exact;
      for (const auto& p : in.points) out.points.push_back(mul_t(n.md, p));
      for (const auto& r : in.rays) out.rays.push_back(mul_t(n.md, r));
      for (const auto& p : in.exact_points) out.exact_points.push_back(mul_t(n.m, p));
      for (const auto& r : in.exact_rays) out.exact_rays.push_back(mul_t(n.m, r));
      if (out.has_exact) {
        out.points.clear();
        out.rays.clear();
        for (const auto& p : out.exact_points) out.points.push_back(to_double(p));
        for (const auto& r : out.exact_rays) out.rays.push_back(to_double(r));
      }
      return out;
    }
    case FnKind::Sum: {
      SubVal acc = subdiff(n.terms.front(), x);
      for (std::size_t i = 1; i < n.terms.size() && !acc.empty(); ++i) acc = minkowski(acc, subdiff(n.terms[i], x));
      return acc;
    }
  }
  return {};
}

SubVal subdiff(const ConvexFn& f, const DVec& x) {
  const auto& n = N(f);
  require_dim(x.size(), n.dim, "subdiff");
  switch (n.kind) {
    case FnKind::Indicator:
      return normal_cone_num(n.dpoly, x, n.dim);
    case FnKind::Support: {
      SubVal s;
      const double v = eval(f, x);
      if (v == kInf) return s;
      for (const auto& p : n.dpoints)
        if (std::abs(ddot(p, x) - v) <= kGuard * (1 + std::abs(v))) s.points.push_back(p);
      for (const auto& r : n.drays)
        if (std::abs(ddot(r, x)) <= kGuard) s.rays.push_back(r);
      for (const auto& l : n.dlin) {
        s.rays.push_back(l);
        DVec m = l;
        for (auto& c : m) c = -c;
        s.rays.push_back(m);
      }
      return s;
    }
    case FnKind::GaugeRecip: {
      SubVal s;
      std::vector<double> vals;
      double rho = 0;
      for (std::size_t i = 0; i < n.dpoly.lt.size(); ++i) {
        double d = 0;
        for (std::size_t j = 0; j < x.size(); ++j) d += n.dpoly.lt[i].a[j] * (x[j] - n.dx0[j]);
        vals.push_back(d / n.dbeta[i]);
        rho = std::max(rho, vals.back());
      }
      if (rho >= 1) return s;
      const double w = (1 - rho) * (1 - rho);
      if (rho <= kGuard) s.points.push_back(DVec(n.dim, 0.0));
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i] - rho) <= kGuard) {
          DVec g = n.dpoly.lt[i].a;
          for (auto& v : g) v /= n.dbeta[i] * w;
          s.points.push_back(g);
        }
      return s;
    }
    case FnKind::Interval1D:
      return interval_subdiff_num(n, x[0]);
    case FnKind::Rockafellar: {
      SubVal s;
      bool near = false;
      const int c = rock_case<NumOps>(n.dalpha, x[0], x[1], near);
      Builder b(false);
      if (c == 14) b.point(DVec{0.0, x[1] > 0 ? 1.0 : -1.0});
      else rock_generators(b, c, n.dalpha, x[0]);
      s = b.done();
      s.near_boundary = near;
      return s;
    }
    case FnKind::Halfstrip: {
      bool near = false;
      const int c = strip_case<NumOps>(n.dalpha, x[0], x[1], near);
      Builder b(false);
      strip_generators(b, c, x[0]);
      SubVal s = b.done();
      s.near_boundary = near;
      return s;
    }
    case FnKind::Precomposed: {
      DVec y(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - n.dshift[i];
      SubVal in = subdiff(n.inner, mul(n.md, y));
      SubVal out;
      out.near_boundary = in.near_boundary;
      for (const auto& p : in.points) out.points.push_back(mul_t(n.md, p));
      for (const auto& r : in.rays) out.rays.push_back(mul_t(n.md, r));
      return out;
    }
    case FnKind::Sum: {
      SubVal acc = subdiff(n.terms.front(), x);
      for (std::size_t i = 1; i < n.terms.size() && !acc.empty(); ++i) acc = minkowski(acc, subdiff(n.terms[i], x));
      return acc;
    }
  }
  return {};
}

// ---- conjugates ----

Value conjugate_eval(const ConvexFn& f, const RationalVector& xs) { return conjugate_eval(f, lift(xs)); }

Value conjugate_eval(const ConvexFn& f, const QS2Vector& xs) {
  const auto& n = N(f);
  require_dim(xs.size(), n.dim, "conjugate_eval");
  switch (n.kind) {
    case FnKind::Indicator: {
      auto s = support_value(dd_convert(n.poly), xs);
      return s ? Value::of(*s) : Value::inf();
    }
    case FnKind::Support:
      return in_poly(n.poly, xs) ? Value::of(QS2(0)) : Value::inf();
    case FnKind::Rockafellar: {
      auto v = rock_conj<QS2>(n.alpha, xs[0], xs[1]);
      return v ? Value::of(*v) : Value::inf();
    }
    case FnKind::Precomposed: {
      // h*(y) = f*(M^{-T} y) + <y, t>
      Value v = conjugate_eval(n.inner, mul_t(n.minv, xs));
      if (v.infinite) return v;
      const QS2 lin = dot(xs, n.shift);
      if (v.exact) return Value::of(*v.exact + lin);
      return Value::num(v.approx + lin.to_double());
    }
    default:
      fail(ErrorCode::NoClosedForm, std::string("no closed-form conjugate for ") + kind_name(n.kind));
  }
}

double conjugate_eval(const ConvexFn& f, const DVec& xs) {
  const auto& n = N(f);
  require_dim(xs.size(), n.dim, "conjugate_eval");
  switch (n.kind) {
    case FnKind::Rockafellar: {
      auto v = rock_conj<double>(n.dalpha, xs[0], xs[1]);
      return v ? *v : kInf;
    }
    case FnKind::Precomposed: {
      const double v = conjugate_eval(n.inner, mul_t(n.dminv, xs));
      return v == kInf ? v : v + ddot(xs, n.dshift);
    }
    case FnKind::Indicator:
    case FnKind::Support: {
      QS2Vector q;
      for (double d : xs) q.emplace_back(from_double(d));
      Value v = conjugate_eval(f, q);
      return v.infinite ? kInf : v.approx;
    }
    default:
      fail(ErrorCode::NoClosedForm, std::string("no closed-form conjugate for ") + kind_name(n.kind));
  }
}

}  // namespace ncx
