#pragma once

// Exact rational polyhedral geometry on single (possibly relatively open) polyhedra.

#include <optional>
#include <vector>

#include "ncx/lp.hpp"
#include "ncx/rational.hpp"

namespace ncx {

/// {x : eq rows hold with equality, le rows weakly, lt rows strictly}.
/// A closed polyhedron has an empty lt list.
struct HRep {
  std::size_t dim = 0;
  std::vector<LinearRow> eq;
  std::vector<LinearRow> le;
  std::vector<LinearRow> lt;

  bool is_closed_form() const { return lt.empty(); }
  friend bool operator==(const HRep&, const HRep&) = default;
};

/// A relatively open polyhedron (or any mixed piece) used as one piece of a union.
using ROPoly = HRep;

/// conv(points) + cone(rays) + span(lineality); empty iff points is empty.
struct VRep {
  std::size_t dim = 0;
  std::vector<RationalVector> points;
  std::vector<RationalVector> rays;
  std::vector<RationalVector> lineality;

  bool empty() const { return points.empty(); }
  friend bool operator==(const VRep&, const VRep&) = default;
};

/// x -> matrix * x + offset, matrix is m x n (rows).  offset may be left empty for zero.
struct LinMap {
  std::vector<RationalVector> matrix;
  RationalVector offset;
  std::size_t cols = 0;

  LinMap() = default;
  LinMap(std::vector<RationalVector> m, std::size_t n, RationalVector off = {});

  std::size_t rows() const { return matrix.size(); }
  RationalVector apply(const RationalVector& x) const;
  RationalVector apply_linear(const RationalVector& x) const;
  RationalVector adjoint(const RationalVector& y) const;

  static LinMap identity(std::size_t n);
};

struct AffineHull {
  std::size_t dim = 0;
  std::vector<LinearRow> eq;  // reduced row echelon, coprime integer rows
};

// -- construction helpers --
HRep empty_hrep(std::size_t n);
HRep universe(std::size_t n);
HRep singleton(const RationalVector& x);
HRep box(const RationalVector& lo, const RationalVector& hi);
HRep intersect(const HRep& a, const HRep& b);
HRep product(const HRep& a, const HRep& b);

bool contains(const HRep& h, const RationalVector& x);

// -- feasibility --

/// A point satisfying every row (strict rows strictly), or nullopt when none exists.
std::optional<RationalVector> strict_feasible(const HRep& h);
bool is_empty(const HRep& h);

/// Maximizes <c, x> over the closure of h.
lp::Result maximize_over(const HRep& h, const RationalVector& c);

// -- structure --
AffineHull affine_hull(const HRep& h);
int affine_dim(const HRep& h);  // -1 for the empty set

/// Weak version of every strict row; for nonempty h this is cl h.
HRep closure_rows(const HRep& h);

/// ri of the closure: implicit equalities become eq rows, all other rows strict.
HRep relative_interior(const HRep& h);

bool is_relatively_open(const HRep& h);

/// Irredundant, normalized, sorted representation of the same point set.
HRep canonicalize(const HRep& h);

// -- comparison and difference --
bool subset(const HRep& a, const HRep& b);
bool poly_equal(const HRep& a, const HRep& b);

/// Pairwise-disjoint pieces covering a \ b.
std::vector<HRep> subtract(const HRep& a, const HRep& b);

/// Partition of h into relative interiors of faces of cl h that lie in h.
std::vector<HRep> strata(const HRep& h);

// -- representation conversion (closed polyhedra only) --
VRep dd_convert(const HRep& h);
HRep vrep_to_hrep(const VRep& v);
VRep canonicalize(const VRep& v);

/// Extreme rays and lineality basis of the cone {z : rows z <= 0}.
struct ConeGenerators {
  std::vector<RationalVector> rays;
  std::vector<RationalVector> lineality;
};
ConeGenerators cone_generators(const std::vector<RationalVector>& rows, std::size_t d);

// -- operations --
VRep linear_image(const VRep& v, const LinMap& a);
HRep preimage(const HRep& h, const LinMap& a);
VRep minkowski_sum(const VRep& a, const VRep& b);

/// {y : a y <= 0 for le rows, a y = 0 for eq rows}; EMPTY_SET on empty input.
HRep recession(const HRep& h);
std::vector<RationalVector> lineality(const HRep& h);

/// All nonempty proper faces of a closed polyhedron, each with its tight rows as equalities,
/// ordered by increasing dimension.
std::vector<HRep> faces(const HRep& h);

/// Normalizes a row by a positive factor to coprime integers.
LinearRow normalize_row(const LinearRow& r);

}  // namespace ncx
