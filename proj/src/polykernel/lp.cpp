#include "ncx/lp.hpp"

#include "ncx/error.hpp"

namespace ncx::lp {
namespace {

struct Tableau {
  std::vector<RationalVector> rows;  // each row: coefficients..., rhs
  std::vector<std::size_t> basis;
  RationalVector reduced;  // reduced costs, last entry = -objective value
  std::size_t ncols = 0;

  void pivot(std::size_t p, std::size_t q) {
    auto& pr = rows[p];
    const Rational inv = 1 / pr[q];
    for (auto& v : pr)
      if (v != 0) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == p || rows[i][q] == 0) continue;
      const Rational f = rows[i][q];
      auto& r = rows[i];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (pr[j] != 0) r[j] -= f * pr[j];
    }
    if (reduced[q] != 0) {
      const Rational f = reduced[q];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (pr[j] != 0) reduced[j] -= f * pr[j];
    }
    basis[p] = q;
  }

  void price(const RationalVector& cost) {
    reduced.assign(ncols + 1, Rational(0));
    for (std::size_t j = 0; j < ncols; ++j) reduced[j] = cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= ncols; ++j)
        if (rows[i][j] != 0) reduced[j] -= cb * rows[i][j];
    }
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t q = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (allowed[j] && reduced[j] > 0) {
          q = j;
          break;
        }
      if (q == ncols) return true;
      std::size_t p = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][q] <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][q];
        if (p == rows.size() || ratio < best || (ratio == best && basis[i] < basis[p])) {
          p = i;
          best = ratio;
        }
      }
      if (p == rows.size()) return false;
      pivot(p, q);
    }
  }

  Rational value_of(std::size_t col) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (basis[i] == col) return rows[i][ncols];
    return 0;
  }
};

}  // namespace

Result maximize(const RationalVector& c, std::span<const LinearRow> le, std::span<const LinearRow> eq,
                std::size_t n) {
  require_dim(c.size(), n, "lp objective");
  const std::size_t m_le = le.size(), m_eq = eq.size();
  std::size_t n_art = m_eq;
  for (const auto& r : le)
    if (r.b < 0) ++n_art;
  const std::size_t slack0 = 2 * n, art0 = 2 * n + m_le;
  Tableau t;
  t.ncols = art0 + n_art;
  std::size_t art = art0;
  auto make_row = [&](const LinearRow& r, bool negate) {
    require_dim(r.a.size(), n, "lp row");
    RationalVector row(t.ncols + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = negate ? Rational(-r.a[j]) : r.a[j];
      row[n + j] = -row[j];
    }
    row[t.ncols] = negate ? Rational(-r.b) : r.b;
    return row;
  };
  for (std::size_t i = 0; i < m_le; ++i) {
    const bool neg = le[i].b < 0;
    auto row = make_row(le[i], neg);
    row[slack0 + i] = neg ? -1 : 1;
    if (neg) {
      row[art] = 1;
      t.basis.push_back(art++);
    } else {
      t.basis.push_back(slack0 + i);
    }
    t.rows.push_back(std::move(row));
  }
  for (const auto& r : eq) {
    auto row = make_row(r, r.b < 0);
    row[art] = 1;
    t.basis.push_back(art++);
    t.rows.push_back(std::move(row));
  }

  std::vector<bool> allowed(t.ncols, true);
  if (n_art > 0) {
    RationalVector phase1(t.ncols, Rational(0));
    for (std::size_t j = art0; j < t.ncols; ++j) phase1[j] = -1;
    t.price(phase1);
    t.optimize(allowed);
    if (t.reduced[t.ncols] != 0) return {Status::Infeasible, {}, 0};
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t q = art0;
      for (std::size_t j = 0; j < art0; ++j)
        if (t.rows[i][j] != 0) {
          q = j;
          break;
        }
      if (q == art0) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      t.pivot(i, q);
      ++i;
    }
    for (std::size_t j = art0; j < t.ncols; ++j) allowed[j] = false;
  }

  RationalVector cost(t.ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  t.price(cost);
  const bool bounded = t.optimize(allowed);

  Result res;
  res.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) res.x[j] = t.value_of(j) - t.value_of(n + j);
  res.value = dot(c, res.x);
  res.status = bounded ? Status::Optimal : Status::Unbounded;
  return res;
}

}  // namespace ncx::lp
