#include "ncx/qsqrt2.hpp"

#include <cmath>

#include "ncx/error.hpp"

namespace ncx {

int QS2::sign() const {
  const int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 2 b^2
  const int c = cmp(a * a, 2 * b * b);
  return c == 0 ? 0 : (c > 0 ? sa : sb);
}

double QS2::to_double() const { return ncx::to_double(a) + ncx::to_double(b) * std::sqrt(2.0); }

QS2 operator/(const QS2& x, const QS2& y) {
  const Rational n = y.norm();
  if (n == 0) fail(ErrorCode::Internal, "division by zero in Q(sqrt2)");
  QS2 num = x * y.conj();
  return {num.a / n, num.b / n};
}

QS2 abs(const QS2& x) { return x.sign() < 0 ? -x : x; }

std::optional<QS2> sqrt_opt(const QS2& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.b == 0) {
    if (auto s = exact_sqrt(x.a)) return QS2(*s);
    if (auto s = exact_sqrt(x.a / 2)) return QS2(0, *s);
    return std::nullopt;
  }
  // (p + q sqrt2)^2 = p^2 + 2 q^2 + 2 p q sqrt2
  auto d = exact_sqrt(x.norm());
  if (!d) return std::nullopt;
  for (const Rational& p2 : {Rational((x.a + *d) / 2), Rational((x.a - *d) / 2)}) {
    auto p = exact_sqrt(p2);
    if (!p || *p == 0) continue;
    QS2 r(*p, x.b / (2 * *p));
    if (r.sign() < 0) r = -r;
    if (r * r == x) return r;
  }
  return std::nullopt;
}

std::string to_string(const QS2& x) {
  if (x.b == 0) return to_string(x.a);
  std::string out;
  if (x.a != 0) out = to_string(x.a) + (x.b > 0 ? "+" : "");
  return out + to_string(x.b) + "*sqrt2";
}

namespace {

Rational parse_coef(std::string_view s) {
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  if (s.back() == '*') s.remove_suffix(1);
  return parse_rational(s);
}

}  // namespace

QS2 parse_qs2(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  for (auto pos = s.find("\xe2\x88\x9a"); pos != std::string::npos; pos = s.find("\xe2\x88\x9a"))
    s.replace(pos, 3, "sqrt");
  const auto root = s.find("sqrt2");
  if (root == std::string::npos) return QS2(parse_rational(s));
  if (root + 5 != s.size()) fail(ErrorCode::Parse, "bad Q(sqrt2) literal '" + std::string(text) + "'");
  std::string_view head(s.data(), root);
  // split "a+b*" at the last sign that starts the sqrt2 coefficient
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 0;)
    if ((head[i] == '+' || head[i] == '-') && i > 0) {
      split = i;
      break;
    }
  if (split == std::string_view::npos) return QS2(0, parse_coef(head));
  return QS2(parse_rational(head.substr(0, split)), parse_coef(head.substr(split)));
}

QS2Vector lift(const RationalVector& v) {
  QS2Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::vector<double> to_double(const QS2Vector& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

QS2 dot(const QS2Vector& x, const QS2Vector& y) {
  QS2 s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace ncx
