#pragma once

// Exact arithmetic in Q(sqrt 2): values a + b*sqrt2 with rational a, b.

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "ncx/rational.hpp"

namespace ncx {

struct QS2 {
  Rational a;
  Rational b;

  QS2() = default;
  QS2(Rational ra, Rational rb = 0) : a(std::move(ra)), b(std::move(rb)) {}
  QS2(long x) : a(x), b(0) {}

  static QS2 sqrt2() { return {0, 1}; }

  bool is_rational() const { return b == 0; }
  int sign() const;
  QS2 conj() const { return {a, -b}; }
  /// a^2 - 2 b^2, the field norm.
  Rational norm() const { return a * a - 2 * b * b; }
  double to_double() const;

  friend QS2 operator+(const QS2& x, const QS2& y) { return {x.a + y.a, x.b + y.b}; }
  friend QS2 operator-(const QS2& x, const QS2& y) { return {x.a - y.a, x.b - y.b}; }
  friend QS2 operator-(const QS2& x) { return {-x.a, -x.b}; }
  friend QS2 operator*(const QS2& x, const QS2& y) { return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a}; }
  friend QS2 operator/(const QS2& x, const QS2& y);
  QS2& operator+=(const QS2& y) { return *this = *this + y; }
  QS2& operator-=(const QS2& y) { return *this = *this - y; }
  QS2& operator*=(const QS2& y) { return *this = *this * y; }

  friend bool operator==(const QS2& x, const QS2& y) { return x.a == y.a && x.b == y.b; }
  friend std::strong_ordering operator<=>(const QS2& x, const QS2& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

QS2 abs(const QS2& x);

/// Square root inside Q(sqrt 2) when it exists there (x >= 0).
std::optional<QS2> sqrt_opt(const QS2& x);

/// "a" when rational, else "a+b*sqrt2" with a, b in p/q form.
std::string to_string(const QS2& x);

/// Accepts "p/q", decimals, "sqrt2", "b*sqrt2", "a+b*sqrt2", "a-sqrt2"; the unicode root sign is also read.
QS2 parse_qs2(std::string_view text);

using QS2Vector = std::vector<QS2>;

QS2Vector lift(const RationalVector& v);
std::vector<double> to_double(const QS2Vector& v);
QS2 dot(const QS2Vector& x, const QS2Vector& y);

}  // namespace ncx
