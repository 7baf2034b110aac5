#include "ncx/rational.hpp"

#include <cmath>
#include <numeric>

#include "ncx/error.hpp"

namespace ncx {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EMPTY_SET";
    case ErrorCode::NotNearlyConvex: return "NOT_NEARLY_CONVEX";
    case ErrorCode::CqViolated: return "CQ_VIOLATED";
    case ErrorCode::IrrationalBoundary: return "IRRATIONAL_BOUNDARY";
    case ErrorCode::NoClosedForm: return "NO_CLOSED_FORM";
    case ErrorCode::X0NotInterior: return "X0_NOT_INTERIOR";
    case ErrorCode::Unnormalizable: return "UNNORMALIZABLE";
    case ErrorCode::BadInterval: return "BAD_INTERVAL";
    case ErrorCode::NotFullDim: return "NOT_FULL_DIM";
    case ErrorCode::Not2D: return "NOT_2D";
    case ErrorCode::InfiniteAtX: return "INFINITE_AT_X";
    case ErrorCode::EmptySample: return "EMPTY_SAMPLE";
    case ErrorCode::NotInterior: return "NOT_INTERIOR";
    case ErrorCode::NotInDom: return "NOT_IN_DOM";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) fail(ErrorCode::Parse, "empty rational");
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail(ErrorCode::Parse, "bad rational '" + s + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) fail(ErrorCode::Parse, "zero denominator in '" + s + "'");
    out = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(ErrorCode::Parse, "bad decimal '" + s + "'");
    mpz_class n{std::string(ip.empty() ? "0" : ip) + std::string(fp)};
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
    out = Rational(n, d);
  } else {
    if (!all_digits(body)) fail(ErrorCode::Parse, "bad rational '" + s + "'");
    out = Rational(mpz_class(std::string(body)));
  }
  out.canonicalize();
  return neg ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_den() == 1 ? v[i].get_num().get_str() : v[i].get_str();
  }
  return s + ")";
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::Parse, "non-finite value cannot be made rational");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  require_dim(b.size(), a.size(), "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  require_dim(b.size(), a.size(), "add");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  require_dim(b.size(), a.size(), "sub");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalVector scale(const Rational& s, const RationalVector& a) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

RationalVector zeros(std::size_t n) { return RationalVector(n, Rational(0)); }

RationalVector unit(std::size_t n, std::size_t i) {
  auto v = zeros(n);
  v[i] = 1;
  return v;
}

bool is_zero(const RationalVector& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

RationalVector primitive(const RationalVector& v) {
  mpz_class l = 1, g = 0;
  for (const auto& q : v) {
    if (q == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  for (const auto& q : v) {
    mpz_class z = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    ints.push_back(z);
  }
  RationalVector out(v.size());
  if (g == 0) return zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::vector<std::size_t> rref(std::vector<RationalVector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(std::vector<RationalVector> rows, std::size_t ncols) { return rref(rows, ncols).size(); }

std::vector<RationalVector> nullspace(std::vector<RationalVector> rows, std::size_t ncols) {
  auto pivots = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    auto v = unit(ncols, free);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::optional<RationalVector> solve(std::vector<RationalVector> m, RationalVector rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  auto pivots = rref(m, n);
  if (pivots.size() < n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

int compare(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

}  // namespace ncx
