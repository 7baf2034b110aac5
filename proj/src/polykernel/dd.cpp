// Double description method for cones {z : A z <= 0}, and the H <-> V conversions built on it.

#include <algorithm>

#include "ncx/error.hpp"
#include "ncx/polykernel.hpp"

namespace ncx {
namespace {

struct DdRay {
  RationalVector v;
  std::vector<bool> zero;  // row i of the processed rows is tight on v
};

bool covers(const std::vector<bool>& big, const std::vector<bool>& small) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

std::vector<bool> meet(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

std::size_t popcount(const std::vector<bool>& a) {
  return static_cast<std::size_t>(std::count(a.begin(), a.end(), true));
}

// Orthogonal projection onto the complement of span(basis).
RationalVector project_out(const RationalVector& x, const std::vector<RationalVector>& orth_basis) {
  RationalVector out = x;
  for (const auto& q : orth_basis) {
    Rational c = dot(out, q) / dot(q, q);
    if (c != 0)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * q[i];
  }
  return out;
}

std::vector<RationalVector> gram_schmidt(const std::vector<RationalVector>& basis) {
  std::vector<RationalVector> out;
  for (const auto& b : basis) {
    auto v = project_out(b, out);
    if (!is_zero(v)) out.push_back(v);
  }
  return out;
}

void sort_unique(std::vector<RationalVector>& vs) {
  std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return compare(a, b) < 0; });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace

ConeGenerators cone_generators(const std::vector<RationalVector>& rows, std::size_t d) {
  std::vector<RationalVector> lin;
  for (std::size_t i = 0; i < d; ++i) lin.push_back(unit(d, i));
  std::vector<DdRay> rays;
  std::size_t processed = 0;

  for (const auto& a : rows) {
    require_dim(a.size(), d, "cone row");
    if (is_zero(a)) continue;

    auto pos = std::find_if(lin.begin(), lin.end(), [&](const auto& l) { return dot(a, l) != 0; });
    if (pos != lin.end()) {
      RationalVector l = *pos;
      lin.erase(pos);
      Rational s = dot(a, l);
      if (s > 0) {
        l = scale(-1, l);
        s = -s;
      }
      for (auto& other : lin) {
        Rational c = dot(a, other) / s;
        if (c != 0) other = primitive(sub(other, scale(c, l)));
      }
      for (auto& r : rays) {
        Rational c = dot(a, r.v) / s;
        if (c != 0) r.v = primitive(sub(r.v, scale(c, l)));
        r.zero.push_back(true);
      }
      DdRay nr{primitive(l), std::vector<bool>(processed, true)};
      nr.zero.push_back(false);
      rays.push_back(std::move(nr));
      ++processed;
      continue;
    }

    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> plus, minus;
    std::vector<DdRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) plus.push_back(i);
      else if (val[i] < 0) minus.push_back(i);
    }
    const std::size_t pointed_dim = d - lin.size();
    for (std::size_t ip : plus)
      for (std::size_t in : minus) {
        auto common = meet(rays[ip].zero, rays[in].zero);
        if (pointed_dim >= 2 && popcount(common) + 2 < pointed_dim) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == ip || k == in) continue;
          if (covers(rays[k].zero, common)) adjacent = false;
        }
        if (!adjacent) continue;
        RationalVector v = sub(scale(val[ip], rays[in].v), scale(val[in], rays[ip].v));
        common.push_back(true);
        next.push_back({primitive(v), std::move(common)});
      }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) continue;
      DdRay r = rays[i];
      r.zero.push_back(val[i] == 0);
      next.push_back(std::move(r));
    }
    rays = std::move(next);
    ++processed;
  }

  ConeGenerators out;
  for (auto& l : lin) out.lineality.push_back(primitive(l));
  for (auto& r : rays) out.rays.push_back(r.v);
  return out;
}

}  // namespace ncx

namespace ncx {

VRep dd_convert(const HRep& h) {
  if (!h.lt.empty()) fail(ErrorCode::DimensionMismatch, "dd_convert needs a closed polyhedron (no strict rows)");
  const std::size_t n = h.dim, d = n + 1;
  std::vector<RationalVector> rows;
  auto homog = [&](const LinearRow& r, bool negate) {
    require_dim(r.a.size(), n, "dd_convert row");
    RationalVector z(d);
    for (std::size_t i = 0; i < n; ++i) z[i] = negate ? Rational(-r.a[i]) : r.a[i];
    z[n] = negate ? r.b : Rational(-r.b);
    return z;
  };
  auto t_row = zeros(d);
  t_row[n] = -1;
  rows.push_back(t_row);
  for (const auto& r : h.eq) {
    rows.push_back(homog(r, false));
    rows.push_back(homog(r, true));
  }
  for (const auto& r : h.le) rows.push_back(homog(r, false));

  auto gens = cone_generators(rows, d);
  VRep v;
  v.dim = n;
  for (const auto& g : gens.rays) {
    RationalVector x(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n));
    if (g[n] > 0) v.points.push_back(scale(1 / g[n], x));
    else v.rays.push_back(x);
  }
  if (v.points.empty()) return VRep{n, {}, {}, {}};
  for (const auto& g : gens.lineality)
    v.lineality.emplace_back(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n));
  return canonicalize(v);
}

VRep canonicalize(const VRep& v) {
  VRep out;
  out.dim = v.dim;
  if (v.points.empty()) return out;
  auto lin = v.lineality;
  for (auto& l : lin) require_dim(l.size(), v.dim, "lineality");
  rref(lin, v.dim);
  for (auto& l : lin) out.lineality.push_back(primitive(l));
  auto orth = gram_schmidt(out.lineality);
  for (const auto& p : v.points) out.points.push_back(project_out(p, orth));
  for (const auto& r : v.rays) {
    auto pr = project_out(r, orth);
    if (!is_zero(pr)) out.rays.push_back(primitive(pr));
  }
  sort_unique(out.points);
  sort_unique(out.rays);
  return out;
}

HRep vrep_to_hrep(const VRep& v) {
  const std::size_t n = v.dim, d = n + 1;
  if (v.points.empty()) return empty_hrep(n);
  std::vector<RationalVector> gens;
  auto lift = [&](const RationalVector& x, int t) {
    require_dim(x.size(), n, "vrep_to_hrep generator");
    RationalVector z = x;
    z.push_back(Rational(t));
    return z;
  };
  for (const auto& p : v.points) gens.push_back(lift(p, 1));
  for (const auto& r : v.rays) gens.push_back(lift(r, 0));
  for (const auto& l : v.lineality) {
    gens.push_back(lift(l, 0));
    gens.push_back(lift(scale(-1, l), 0));
  }
  auto polar = cone_generators(gens, d);
  HRep h;
  h.dim = n;
  auto split = [&](const RationalVector& z) {
    return LinearRow{RationalVector(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)), Rational(-z[n])};
  };
  for (const auto& z : polar.rays) {
    auto row = split(z);
    if (!is_zero(row.a)) h.le.push_back(row);
  }
  for (const auto& z : polar.lineality) h.eq.push_back(split(z));
  return canonicalize(h);
}

}  // namespace ncx
