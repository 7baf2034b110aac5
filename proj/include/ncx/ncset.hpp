#pragma once

// Finite unions of (relatively open or mixed) polyhedral pieces and the calculus of nearly convex sets.

#include <optional>
#include <utility>
#include <vector>

#include "ncx/polykernel.hpp"

namespace ncx {

/// The union of its pieces.  May be any finitely presented set; near convexity is decided separately.
struct NCSet {
  std::size_t dim = 0;
  std::vector<ROPoly> pieces;

  bool empty() const { return pieces.empty(); }
  friend bool operator==(const NCSet&, const NCSet&) = default;
};

NCSet nc_empty(std::size_t n);
NCSet nc_from(const HRep& piece);
NCSet nc_union(const NCSet& a, const NCSet& b);

bool nc_contains(const NCSet& e, const RationalVector& x);

/// Nonempty canonical pieces, none covered by the union of the others, deterministically ordered.
NCSet canonicalize(const NCSet& e);

/// piece minus the union of `others`, as disjoint pieces.
std::vector<HRep> difference(const HRep& piece, const std::vector<HRep>& others);
NCSet nc_difference(const NCSet& a, const NCSet& b);

bool nc_subset(const NCSet& a, const NCSet& b);
/// Point-set equality.
bool nc_equal(const NCSet& a, const NCSet& b);

/// cl conv E, from the V-representations of the piece closures.
HRep closure(const NCSet& e);

/// ri E = ri cl E; NOT_NEARLY_CONVEX otherwise.
HRep rel_interior(const NCSet& e);

struct NearConvexityCertificate {
  bool verdict = true;
  std::optional<RationalVector> witness;  // in ri conv E but not in E
  HRep core;                              // C with C in E in cl C
};

/// Exact: ri(conv E) minus E is computed as a disjoint piece list and tested for emptiness.
NearConvexityCertificate is_nearly_convex(const NCSet& e);

bool nearly_equal(const NCSet& a, const NCSet& b);

struct Decomposition {
  HRep core;       // ri E
  NCSet boundary;  // E minus ri E, as relatively open pieces
};
Decomposition decompose(const NCSet& e);

/// int E; the empty set when cl E is not full dimensional.
HRep interior_core(const NCSet& e);

// -- calculus --
NCSet nc_scale(const NCSet& e, const Rational& lambda);
NCSet nc_product(const std::vector<NCSet>& es);
NCSet nc_sum(const NCSet& a, const NCSet& b);
NCSet nc_image(const NCSet& e, const LinMap& a);

/// CQ_VIOLATED when A^{-1}(ri E) is empty.
NCSet nc_preimage(const NCSet& e, const LinMap& a);

/// CQ_VIOLATED when the relative interiors have empty intersection.
NCSet nc_intersect(const std::vector<NCSet>& es);

/// Plain piecewise intersection, no qualification check.
NCSet nc_intersect_raw(const std::vector<NCSet>& es);

// -- recession --
bool is_bounded(const NCSet& e);

/// Whether x + t y stays in E for every x in E and every t >= 0.
bool rec_membership(const NCSet& e, const RationalVector& y);

struct RecessionReport {
  HRep rec_cl;
  std::vector<RationalVector> lineality;
  bool span_condition = false;
  HRep inner_bound;  // ri rec(cl E)
  std::vector<std::pair<RationalVector, bool>> membership_answers;
};
RecessionReport rec_classify(const NCSet& e);

/// Whether every z in rec(cl E) with A z = 0 lies in the lineality space of cl E.
/// When it does, cl A(E) = A(cl E) is asserted.
bool closedness_check(const NCSet& e, const LinMap& a);

/// The same set, each piece split into relative interiors of faces of its closure.
NCSet stratify(const NCSet& e);

}  // namespace ncx
