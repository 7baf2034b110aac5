#include "ncx/error.hpp"
#include "ncx/subdiff.hpp"
#include "subdiff_internal.hpp"

namespace ncx {

namespace {

enum class Rel { Eq, Le, Lt };

struct QRow {
  QS2Vector a;
  QS2 b;
  Rel rel;
};

struct QPiece {
  std::vector<QRow> rows;
};

QRow qrow(std::initializer_list<QS2> a, const QS2& b, Rel rel) { return {QS2Vector(a), b, rel}; }

std::vector<QPiece> lift_pieces(const NCSet& e) {
  std::vector<QPiece> out;
  for (const auto& p : e.pieces) {
    QPiece q;
    for (const auto& r : p.eq) q.rows.push_back({lift(r.a), QS2(r.b), Rel::Eq});
    for (const auto& r : p.le) q.rows.push_back({lift(r.a), QS2(r.b), Rel::Le});
    for (const auto& r : p.lt) q.rows.push_back({lift(r.a), QS2(r.b), Rel::Lt});
    out.push_back(std::move(q));
  }
  return out;
}

// Scale so the first nonzero coefficient is +-1, then demand rational entries.
LinearRow rationalize(const QRow& r) {
  std::size_t k = 0;
  while (k < r.a.size() && r.a[k].sign() == 0) ++k;
  LinearRow out;
  out.a = zeros(r.a.size());
  if (k == r.a.size()) {
    out.b = r.b.sign();
    return out;
  }
  const QS2 s = abs(r.a[k]);
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    QS2 c = r.a[i] / s;
    if (!c.is_rational()) fail(ErrorCode::IrrationalBoundary, "subdifferential domain has a boundary outside Q^n");
    out.a[i] = c.a;
  }
  QS2 b = r.b / s;
  if (!b.is_rational()) fail(ErrorCode::IrrationalBoundary, "subdifferential domain has a boundary outside Q^n");
  out.b = b.a;
  return out;
}

std::vector<QPiece> dom_q(const ConvexFn& f);

NCSet to_ncset(std::size_t n, const std::vector<QPiece>& ps) {
  NCSet e{n, {}};
  for (const auto& p : ps) {
    HRep h;
    h.dim = n;
    for (const auto& r : p.rows) {
      LinearRow row = rationalize(r);
      (r.rel == Rel::Eq ? h.eq : r.rel == Rel::Le ? h.le : h.lt).push_back(std::move(row));
    }
    e.pieces.push_back(std::move(h));
  }
  return e;
}

std::vector<QPiece> dom_q(const ConvexFn& f) {
  const auto& n = f.node();
  const QS2 z(0), one(1);
  switch (n.kind) {
    case FnKind::Indicator:
    case FnKind::GaugeRecip:
      return lift_pieces(nc_from(n.poly));
    case FnKind::Support: {
      // polar of rec C
      QPiece p;
      for (const auto& r : n.vpoly.rays) p.rows.push_back({lift(r), z, Rel::Le});
      for (const auto& l : n.vpoly.lineality) p.rows.push_back({lift(l), z, Rel::Eq});
      return {p};
    }
    case FnKind::Interval1D: {
      QPiece p;
      const bool closed_lo = n.ikind == IntervalKind::Closed || n.ikind == IntervalKind::HalfOpenLeft;
      const bool closed_hi = n.ikind == IntervalKind::Closed || n.ikind == IntervalKind::HalfOpen;
      if (n.lo) p.rows.push_back(qrow({QS2(-1)}, QS2(-*n.lo), closed_lo ? Rel::Le : Rel::Lt));
      if (n.hi) p.rows.push_back(qrow({one}, QS2(*n.hi), closed_hi ? Rel::Le : Rel::Lt));
      return {p};
    }
    case FnKind::Rockafellar:
      return {QPiece{{qrow({QS2(-1), z}, z, Rel::Lt)}},
              QPiece{{qrow({one, z}, z, Rel::Eq), qrow({z, QS2(-1)}, -n.alpha, Rel::Le)}},
              QPiece{{qrow({one, z}, z, Rel::Eq), qrow({z, one}, -n.alpha, Rel::Le)}}};
    case FnKind::Halfstrip:
      return {QPiece{{qrow({QS2(-1), z}, z, Rel::Lt)}},
              QPiece{{qrow({one, z}, z, Rel::Eq), qrow({z, QS2(-1)}, -n.alpha, Rel::Le)}}};
    case FnKind::Precomposed: {
      // a.xi rel b with xi = M(x - t)  becomes  (M^T a).x rel b + (M^T a).t
      auto inner = dom_q(n.inner);
      for (auto& p : inner)
        for (auto& r : p.rows) {
          QS2Vector a(n.dim);
          for (std::size_t i = 0; i < n.m.size(); ++i)
            for (std::size_t j = 0; j < n.dim; ++j) a[j] += n.m[i][j] * r.a[i];
          r.b += dot(a, n.shift);
          r.a = std::move(a);
        }
      return inner;
    }
    case FnKind::Sum:
      return lift_pieces(dom_subdiff(f));
  }
  return {};
}

}  // namespace

NCSet dom_subdiff(const ConvexFn& f) {
  const auto& n = f.node();
  if (n.kind == FnKind::Sum) {
    std::vector<NCSet> ds;
    for (const auto& g : n.terms) ds.push_back(dom_subdiff(g));
    return canonicalize(nc_intersect_raw(ds));
  }
  return canonicalize(to_ncset(n.dim, dom_q(f)));
}

}  // namespace ncx
