#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncx {

using Rational = mpq_class;

/// Exact point or direction in Q^n.
using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "1.25" or "-0.5" exactly.
Rational parse_rational(std::string_view text);

/// Canonical text form, always "p/q" (integers as "p/1").
std::string to_string(const Rational& q);

std::string to_string(const RationalVector& v);

double to_double(const Rational& q);
std::vector<double> to_double(const RationalVector& v);

/// Exact conversion of a finite double (binary expansion is exact in Q).
Rational from_double(double x);

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rational& s, const RationalVector& a);
RationalVector zeros(std::size_t n);
RationalVector unit(std::size_t n, std::size_t i);
bool is_zero(const RationalVector& v);

/// Rescales by a positive factor to coprime integer entries.  Zero stays zero.
RationalVector primitive(const RationalVector& v);

/// Exact square root if q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(std::vector<RationalVector>& rows, std::size_t ncols);

std::size_t rank(std::vector<RationalVector> rows, std::size_t ncols);

/// Basis of {x : rows * x = 0}.
std::vector<RationalVector> nullspace(std::vector<RationalVector> rows, std::size_t ncols);

/// Solves the square system m x = rhs; nullopt when singular.
std::optional<RationalVector> solve(std::vector<RationalVector> m, RationalVector rhs);

/// Lexicographic comparison used for deterministic orderings.
int compare(const RationalVector& a, const RationalVector& b);

}  // namespace ncx
