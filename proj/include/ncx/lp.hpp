#pragma once

#include <span>

#include "ncx/rational.hpp"

namespace ncx {

/// One linear row <a, x> (op) b; the relation is implied by the list that holds it.
struct LinearRow {
  RationalVector a;
  Rational b;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

namespace lp {

enum class Status { Optimal, Unbounded, Infeasible };

struct Result {
  Status status = Status::Infeasible;
  RationalVector x;  // optimal point (Optimal) or a feasible point (Unbounded)
  Rational value;
};

/// Exact two-phase simplex with Bland's rule over free variables:
/// maximize <c, x> subject to le rows <a,x> <= b and eq rows <a,x> = b.
Result maximize(const RationalVector& c, std::span<const LinearRow> le, std::span<const LinearRow> eq,
                std::size_t n);

}  // namespace lp
}  // namespace ncx
