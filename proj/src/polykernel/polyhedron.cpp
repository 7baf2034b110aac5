#include <algorithm>
#include <map>
#include <set>

#include "ncx/error.hpp"
#include "ncx/polykernel.hpp"

namespace ncx {

LinMap::LinMap(std::vector<RationalVector> m, std::size_t n, RationalVector off)
    : matrix(std::move(m)), offset(std::move(off)), cols(n) {
  for (const auto& r : matrix) require_dim(r.size(), cols, "LinMap row");
  if (!offset.empty()) require_dim(offset.size(), matrix.size(), "LinMap offset");
}

RationalVector LinMap::apply_linear(const RationalVector& x) const {
  require_dim(x.size(), cols, "LinMap::apply");
  RationalVector y(rows());
  for (std::size_t i = 0; i < rows(); ++i) y[i] = dot(matrix[i], x);
  return y;
}

RationalVector LinMap::apply(const RationalVector& x) const {
  auto y = apply_linear(x);
  if (!offset.empty()) y = add(y, offset);
  return y;
}

RationalVector LinMap::adjoint(const RationalVector& y) const {
  require_dim(y.size(), rows(), "LinMap::adjoint");
  auto x = zeros(cols);
  for (std::size_t i = 0; i < rows(); ++i)
    if (y[i] != 0)
      for (std::size_t j = 0; j < cols; ++j) x[j] += y[i] * matrix[i][j];
  return x;
}

LinMap LinMap::identity(std::size_t n) {
  std::vector<RationalVector> m;
  for (std::size_t i = 0; i < n; ++i) m.push_back(unit(n, i));
  return LinMap(std::move(m), n);
}

HRep empty_hrep(std::size_t n) {
  HRep h;
  h.dim = n;
  h.le.push_back({zeros(n), Rational(-1)});
  return h;
}

HRep universe(std::size_t n) {
  HRep h;
  h.dim = n;
  return h;
}

HRep singleton(const RationalVector& x) {
  HRep h;
  h.dim = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) h.eq.push_back({unit(x.size(), i), x[i]});
  return h;
}

HRep box(const RationalVector& lo, const RationalVector& hi) {
  require_dim(hi.size(), lo.size(), "box");
  HRep h;
  h.dim = lo.size();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    h.le.push_back({unit(h.dim, i), hi[i]});
    h.le.push_back({scale(-1, unit(h.dim, i)), Rational(-lo[i])});
  }
  return h;
}

HRep intersect(const HRep& a, const HRep& b) {
  require_dim(b.dim, a.dim, "intersect");
  HRep h = a;
  h.eq.insert(h.eq.end(), b.eq.begin(), b.eq.end());
  h.le.insert(h.le.end(), b.le.begin(), b.le.end());
  h.lt.insert(h.lt.end(), b.lt.begin(), b.lt.end());
  return h;
}

HRep product(const HRep& a, const HRep& b) {
  HRep h;
  h.dim = a.dim + b.dim;
  auto pad = [&](const LinearRow& r, bool first) {
    RationalVector v = zeros(h.dim);
    const std::size_t off = first ? 0 : a.dim;
    for (std::size_t i = 0; i < r.a.size(); ++i) v[off + i] = r.a[i];
    return LinearRow{v, r.b};
  };
  for (const auto& r : a.eq) h.eq.push_back(pad(r, true));
  for (const auto& r : a.le) h.le.push_back(pad(r, true));
  for (const auto& r : a.lt) h.lt.push_back(pad(r, true));
  for (const auto& r : b.eq) h.eq.push_back(pad(r, false));
  for (const auto& r : b.le) h.le.push_back(pad(r, false));
  for (const auto& r : b.lt) h.lt.push_back(pad(r, false));
  return h;
}

bool contains(const HRep& h, const RationalVector& x) {
  require_dim(x.size(), h.dim, "contains");
  for (const auto& r : h.eq)
    if (dot(r.a, x) != r.b) return false;
  for (const auto& r : h.le)
    if (dot(r.a, x) > r.b) return false;
  for (const auto& r : h.lt)
    if (dot(r.a, x) >= r.b) return false;
  return true;
}

std::optional<RationalVector> strict_feasible(const HRep& h) {
  const std::size_t n = h.dim;
  for (const auto& r : h.eq) require_dim(r.a.size(), n, "strict_feasible eq");
  for (const auto& r : h.le) require_dim(r.a.size(), n, "strict_feasible le");
  for (const auto& r : h.lt) require_dim(r.a.size(), n, "strict_feasible lt");
  // Rows that are constant decide themselves.
  for (const auto& r : h.eq)
    if (is_zero(r.a) && r.b != 0) return std::nullopt;
  for (const auto& r : h.le)
    if (is_zero(r.a) && r.b < 0) return std::nullopt;
  for (const auto& r : h.lt)
    if (is_zero(r.a) && r.b <= 0) return std::nullopt;

  auto keep = [](const std::vector<LinearRow>& rows) {
    std::vector<LinearRow> out;
    for (const auto& r : rows)
      if (!is_zero(r.a)) out.push_back(r);
    return out;
  };
  auto eq = keep(h.eq), le = keep(h.le), lt = keep(h.lt);
  if (lt.empty()) {
    auto res = lp::maximize(zeros(n), le, eq, n);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    return res.x;
  }
  // maximize t subject to  a x + t <= b  (strict rows), t <= 1.
  std::vector<LinearRow> rows, eqs;
  for (const auto& r : le) {
    auto a = r.a;
    a.push_back(0);
    rows.push_back({a, r.b});
  }
  for (const auto& r : lt) {
    auto a = r.a;
    a.push_back(1);
    rows.push_back({a, r.b});
  }
  auto cap = zeros(n + 1);
  cap[n] = 1;
  rows.push_back({cap, Rational(1)});
  for (const auto& r : eq) {
    auto a = r.a;
    a.push_back(0);
    eqs.push_back({a, r.b});
  }
  auto res = lp::maximize(cap, rows, eqs, n + 1);
  if (res.status != lp::Status::Optimal || res.value <= 0) return std::nullopt;
  res.x.pop_back();
  return res.x;
}

bool is_empty(const HRep& h) { return !strict_feasible(h).has_value(); }

lp::Result maximize_over(const HRep& h, const RationalVector& c) {
  auto cl = closure_rows(h);
  return lp::maximize(c, cl.le, cl.eq, h.dim);
}

HRep closure_rows(const HRep& h) {
  HRep c = h;
  c.le.insert(c.le.end(), c.lt.begin(), c.lt.end());
  c.lt.clear();
  return c;
}

LinearRow normalize_row(const LinearRow& r) {
  RationalVector v = r.a;
  v.push_back(r.b);
  v = primitive(v);
  Rational b = v.back();
  v.pop_back();
  return {v, b};
}

namespace {

LinearRow negate(const LinearRow& r) { return {scale(-1, r.a), Rational(-r.b)}; }

// Row scaled so that its direction is primitive; used to compare parallel rows.
LinearRow direction_normal(const LinearRow& r) {
  auto p = primitive(r.a);
  std::size_t i = 0;
  while (r.a[i] == 0) ++i;
  Rational f = p[i] / r.a[i];
  return {p, f * r.b};
}

bool row_less(const LinearRow& x, const LinearRow& y) {
  int c = compare(x.a, y.a);
  if (c != 0) return c < 0;
  return x.b < y.b;
}

// Implicit equalities among the weak rows of a nonempty h.
std::vector<bool> implicit_equalities(const HRep& h) {
  std::vector<bool> tight(h.le.size(), false);
  for (std::size_t i = 0; i < h.le.size(); ++i) {
    HRep probe = h;
    probe.lt.push_back(h.le[i]);
    tight[i] = is_empty(probe);
  }
  return tight;
}

// RREF basis of an equality system, each row coprime with positive pivot.
std::vector<LinearRow> canonical_equalities(const std::vector<LinearRow>& eqs, std::size_t n) {
  std::vector<RationalVector> m;
  for (const auto& r : eqs) {
    auto v = r.a;
    v.push_back(r.b);
    m.push_back(v);
  }
  rref(m, n);
  std::vector<LinearRow> out;
  for (auto& v : m) {
    auto p = primitive(v);
    Rational b = p.back();
    p.pop_back();
    out.push_back({p, b});
  }
  return out;
}

// Removes the components along the equality pivots (rows are in RREF with pivot 1 before scaling).
LinearRow reduce_modulo(LinearRow r, const std::vector<LinearRow>& eqs) {
  for (const auto& e : eqs) {
    std::size_t p = 0;
    while (e.a[p] == 0) ++p;
    if (r.a[p] == 0) continue;
    Rational f = r.a[p] / e.a[p];
    for (std::size_t j = 0; j < r.a.size(); ++j) r.a[j] -= f * e.a[j];
    r.b -= f * e.b;
  }
  return r;
}

}  // namespace

HRep canonicalize(const HRep& h) {
  const std::size_t n = h.dim;
  if (is_empty(h)) return empty_hrep(n);
  auto tight = implicit_equalities(h);
  std::vector<LinearRow> eqs = h.eq;
  for (std::size_t i = 0; i < h.le.size(); ++i)
    if (tight[i]) eqs.push_back(h.le[i]);
  HRep out;
  out.dim = n;
  out.eq = canonical_equalities(eqs, n);

  // Parallel rows: keep the tightest, strict wins ties.
  struct Entry {
    LinearRow row;
    bool strict;
  };
  std::map<RationalVector, Entry, decltype([](const RationalVector& a, const RationalVector& b) {
             return compare(a, b) < 0;
           })>
      best;
  auto offer = [&](const LinearRow& raw, bool strict) {
    auto r = reduce_modulo(raw, out.eq);
    if (is_zero(r.a)) return;  // constant row, satisfied because h is nonempty
    r = direction_normal(r);
    auto it = best.find(r.a);
    if (it == best.end()) {
      best.emplace(r.a, Entry{r, strict});
    } else if (r.b < it->second.row.b || (r.b == it->second.row.b && strict)) {
      it->second = Entry{r, strict};
    }
  };
  for (std::size_t i = 0; i < h.le.size(); ++i)
    if (!tight[i]) offer(h.le[i], false);
  for (const auto& r : h.lt) offer(r, true);

  std::vector<Entry> rows;
  for (auto& [k, e] : best) rows.push_back(e);
  // Drop rows implied by the rest.
  for (std::size_t i = 0; i < rows.size();) {
    HRep rest;
    rest.dim = n;
    rest.eq = out.eq;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i) continue;
      (rows[j].strict ? rest.lt : rest.le).push_back(rows[j].row);
    }
    // rest subset of row  <=>  rest intersect not(row) is empty
    HRep probe = rest;
    if (rows[i].strict) probe.le.push_back(negate(rows[i].row));
    else probe.lt.push_back(negate(rows[i].row));
    if (is_empty(probe)) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  for (auto& e : rows) (e.strict ? out.lt : out.le).push_back(normalize_row(e.row));
  std::sort(out.le.begin(), out.le.end(), row_less);
  std::sort(out.lt.begin(), out.lt.end(), row_less);
  return out;
}

AffineHull affine_hull(const HRep& h) {
  if (is_empty(h)) fail(ErrorCode::EmptySet, "affine_hull of the empty set");
  auto c = canonicalize(h);
  return {h.dim - c.eq.size(), c.eq};
}

int affine_dim(const HRep& h) {
  if (is_empty(h)) return -1;
  return static_cast<int>(affine_hull(h).dim);
}

HRep relative_interior(const HRep& h) {
  auto c = canonicalize(closure_rows(h));
  if (is_empty(c)) return c;
  c.lt = std::move(c.le);
  c.le.clear();
  return c;
}

bool is_relatively_open(const HRep& h) { return poly_equal(h, relative_interior(h)); }

bool subset(const HRep& a, const HRep& b) {
  require_dim(b.dim, a.dim, "subset");
  if (is_empty(a)) return true;
  auto outside = [&](const LinearRow& r, bool strict_violation) {
    HRep probe = a;
    if (strict_violation) probe.lt.push_back(negate(r));
    else probe.le.push_back(negate(r));
    return !is_empty(probe);
  };
  for (const auto& r : b.eq)
    if (outside(r, true) || outside(negate(r), true)) return false;
  for (const auto& r : b.le)
    if (outside(r, true)) return false;
  for (const auto& r : b.lt)
    if (outside(r, false)) return false;
  return true;
}

bool poly_equal(const HRep& a, const HRep& b) { return subset(a, b) && subset(b, a); }

std::vector<HRep> subtract(const HRep& a, const HRep& b) {
  require_dim(b.dim, a.dim, "subtract");
  std::vector<HRep> out;
  if (is_empty(a)) return out;
  if (is_empty(intersect(a, b))) return {a};
  HRep current = a;
  auto emit = [&](HRep piece) {
    if (!is_empty(piece)) out.push_back(std::move(piece));
  };
  auto step = [&](auto&& add_violation, auto&& add_row) {
    HRep v = current;
    add_violation(v);
    emit(std::move(v));
    add_row(current);
    return !is_empty(current);
  };
  for (const auto& r : b.eq) {
    HRep below = current, above = current;
    below.lt.push_back(r);
    above.lt.push_back(negate(r));
    emit(std::move(below));
    emit(std::move(above));
    current.eq.push_back(r);
    if (is_empty(current)) return out;
  }
  for (const auto& r : b.le)
    if (!step([&](HRep& v) { v.lt.push_back(negate(r)); }, [&](HRep& c) { c.le.push_back(r); })) return out;
  for (const auto& r : b.lt)
    if (!step([&](HRep& v) { v.le.push_back(negate(r)); }, [&](HRep& c) { c.lt.push_back(r); })) return out;
  return out;
}

HRep preimage(const HRep& h, const LinMap& a) {
  require_dim(a.rows(), h.dim, "preimage");
  HRep out;
  out.dim = a.cols;
  auto pull = [&](const LinearRow& r) {
    Rational b = r.b;
    if (!a.offset.empty()) b -= dot(r.a, a.offset);
    return LinearRow{a.adjoint(r.a), b};
  };
  for (const auto& r : h.eq) out.eq.push_back(pull(r));
  for (const auto& r : h.le) out.le.push_back(pull(r));
  for (const auto& r : h.lt) out.lt.push_back(pull(r));
  return out;
}

VRep linear_image(const VRep& v, const LinMap& a) {
  require_dim(v.dim, a.cols, "linear_image");
  VRep out;
  out.dim = a.rows();
  if (v.empty()) return out;
  for (const auto& p : v.points) out.points.push_back(a.apply(p));
  for (const auto& r : v.rays) {
    auto y = a.apply_linear(r);
    if (!is_zero(y)) out.rays.push_back(y);
  }
  for (const auto& l : v.lineality) {
    auto y = a.apply_linear(l);
    if (!is_zero(y)) out.lineality.push_back(y);
  }
  return dd_convert(vrep_to_hrep(out));
}

VRep minkowski_sum(const VRep& a, const VRep& b) {
  require_dim(b.dim, a.dim, "minkowski_sum");
  VRep out;
  out.dim = a.dim;
  if (a.empty() || b.empty()) return out;
  for (const auto& p : a.points)
    for (const auto& q : b.points) out.points.push_back(add(p, q));
  out.rays = a.rays;
  out.rays.insert(out.rays.end(), b.rays.begin(), b.rays.end());
  out.lineality = a.lineality;
  out.lineality.insert(out.lineality.end(), b.lineality.begin(), b.lineality.end());
  return dd_convert(vrep_to_hrep(out));
}

HRep recession(const HRep& h) {
  if (is_empty(h)) fail(ErrorCode::EmptySet, "recession cone of the empty set");
  HRep c;
  c.dim = h.dim;
  for (const auto& r : h.eq) c.eq.push_back({r.a, Rational(0)});
  for (const auto& r : h.le) c.le.push_back({r.a, Rational(0)});
  for (const auto& r : h.lt) c.le.push_back({r.a, Rational(0)});
  return canonicalize(c);
}

std::vector<RationalVector> lineality(const HRep& h) {
  if (is_empty(h)) fail(ErrorCode::EmptySet, "lineality space of the empty set");
  std::vector<RationalVector> rows;
  for (const auto* list : {&h.eq, &h.le, &h.lt})
    for (const auto& r : *list) rows.push_back(r.a);
  auto basis = nullspace(rows, h.dim);
  rref(basis, h.dim);
  for (auto& b : basis) b = primitive(b);
  return basis;
}

namespace {

// Face of a canonical closed polyhedron given by the set of its tight weak rows.
HRep face_of(const HRep& c, const std::vector<bool>& tight) {
  HRep f;
  f.dim = c.dim;
  f.eq = c.eq;
  for (std::size_t i = 0; i < c.le.size(); ++i) (tight[i] ? f.eq : f.le).push_back(c.le[i]);
  return f;
}

std::vector<bool> tight_rows(const HRep& c, const HRep& face, std::vector<bool> known) {
  for (std::size_t i = 0; i < c.le.size(); ++i) {
    if (known[i]) continue;
    HRep probe = face;
    probe.lt.push_back(c.le[i]);
    known[i] = is_empty(probe);
  }
  return known;
}

std::vector<std::pair<std::vector<bool>, HRep>> face_lattice(const HRep& c) {
  std::vector<std::pair<std::vector<bool>, HRep>> found;
  std::set<std::vector<bool>> seen;
  std::vector<bool> root(c.le.size(), false);
  found.push_back({root, c});
  seen.insert(root);
  for (std::size_t k = 0; k < found.size(); ++k) {
    const auto tight = found[k].first;
    for (std::size_t i = 0; i < c.le.size(); ++i) {
      if (tight[i]) continue;
      auto t = tight;
      t[i] = true;
      HRep g = face_of(c, t);
      if (is_empty(g)) continue;
      t = tight_rows(c, g, t);
      if (!seen.insert(t).second) continue;
      found.push_back({t, face_of(c, t)});
    }
  }
  return found;
}

}  // namespace

std::vector<HRep> faces(const HRep& h) {
  if (!h.lt.empty()) fail(ErrorCode::DimensionMismatch, "faces needs a closed polyhedron");
  if (is_empty(h)) fail(ErrorCode::EmptySet, "faces of the empty set");
  auto c = canonicalize(h);
  auto lattice = face_lattice(c);
  std::vector<std::pair<int, HRep>> out;
  for (std::size_t k = 1; k < lattice.size(); ++k) {
    auto f = canonicalize(lattice[k].second);
    out.push_back({static_cast<int>(h.dim - f.eq.size()), std::move(f)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<HRep> res;
  for (auto& [d, f] : out) res.push_back(std::move(f));
  return res;
}

std::vector<HRep> strata(const HRep& h) {
  std::vector<HRep> out;
  if (is_empty(h)) return out;
  auto c = canonicalize(closure_rows(h));
  for (auto& [tight, face] : face_lattice(c)) {
    auto ri = relative_interior(face);
    auto w = strict_feasible(ri);
    if (w && contains(h, *w)) out.push_back(std::move(ri));
  }
  return out;
}

}  // namespace ncx
