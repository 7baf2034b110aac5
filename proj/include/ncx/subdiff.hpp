#pragma once

// Closed-form convex functions with known subdifferentials, their combinators, and the polygon assembler.

#include <memory>
#include <optional>
#include <vector>

#include "ncx/ncset.hpp"
#include "ncx/qsqrt2.hpp"

namespace ncx {

using DVec = std::vector<double>;

/// Extended real value; `exact` is filled when the value lies in Q(sqrt2) and was computed without rounding.
struct Value {
  bool infinite = false;
  double approx = 0;
  std::optional<QS2> exact;

  static Value inf() { return {true, 0, std::nullopt}; }
  static Value of(const QS2& q) { return {false, q.to_double(), q}; }
  static Value num(double d) { return {false, d, std::nullopt}; }
};

/// conv(points) + cone(rays); empty iff points is empty.
struct SubVal {
  std::vector<DVec> points;
  std::vector<DVec> rays;
  bool has_exact = false;  // exact generators below are valid
  std::vector<QS2Vector> exact_points;
  std::vector<QS2Vector> exact_rays;
  bool near_boundary = false;  // a case decision fell inside the numeric guard band

  bool empty() const { return points.empty(); }
};

enum class FnKind { Indicator, Support, GaugeRecip, Interval1D, Rockafellar, Halfstrip, Precomposed, Sum };
enum class IntervalKind { Closed, Open, Ray, HalfOpen, HalfOpenLeft };

const char* kind_name(FnKind k);
const char* interval_kind_name(IntervalKind k);

struct FnNode;

/// Immutable handle to a catalog function or combinator.
class ConvexFn {
 public:
  ConvexFn() = default;
  explicit ConvexFn(std::shared_ptr<const FnNode> node) : node_(std::move(node)) {}

  const FnNode& node() const { return *node_; }
  FnKind kind() const;
  std::size_t dim() const;
  bool valid() const { return node_ != nullptr; }

 private:
  std::shared_ptr<const FnNode> node_;
};

using QMatrix = std::vector<QS2Vector>;

struct FnNode {
  FnKind kind = FnKind::Indicator;
  std::size_t dim = 0;
  HRep poly;                    // indicator, support, gauge (open C)
  VRep vpoly;                   // support: generators of C
  RationalVector x0;            // gauge interior point
  std::vector<Rational> beta;   // gauge: rhs of C - x0, all positive
  IntervalKind ikind = IntervalKind::Closed;
  std::optional<Rational> lo, hi;  // interval ends; nullopt = infinite
  QS2 alpha;                    // rockafellar, halfstrip
  ConvexFn inner;               // precomposed
  QMatrix m;                    // precomposed: h(x) = inner(m (x - shift))
  QS2Vector shift;
  std::vector<ConvexFn> terms;  // sum
};

// -- catalog --
ConvexFn make_indicator(const HRep& c);
ConvexFn make_support(const HRep& c);
/// 1/(1 - rho(x - x0)) on the open polyhedron C; X0_NOT_INTERIOR unless x0 lies in C.
ConvexFn make_gauge_recip(const HRep& c_open, const RationalVector& x0);
/// Missing ends are infinite.  BAD_INTERVAL when a >= b or the ends do not fit the kind.
ConvexFn make_interval_fn(IntervalKind kind, std::optional<Rational> a, std::optional<Rational> b);
/// max{alpha - sqrt(x1), |x2|} on x1 >= 0; alpha > 0.
ConvexFn make_rockafellar(const QS2& alpha);
/// max{alpha - sqrt(x1), x2} on x1 >= 0; alpha >= 0.
ConvexFn make_halfstrip(const QS2& alpha);

// -- combinators --
/// h(x) = f(c R_theta (x - t)) with R_theta = [cos -sin; sin cos]; cos^2 + sin^2 must equal 1.
ConvexFn precompose(const ConvexFn& f, const QS2& cos, const QS2& sin, const QS2Vector& t, const QS2& c);
/// h(x) = f(M (x - t)) for an invertible M.
ConvexFn precompose_matrix(const ConvexFn& f, const QMatrix& m, const QS2Vector& t);
/// CQ_VIOLATED when the domains fail the sum-rule qualification.
ConvexFn sum_fn(const std::vector<ConvexFn>& fs);

/// Indicator, support, and affine precompositions or sums of them.
bool is_polyhedral(const ConvexFn& f);

// -- evaluation --
Value eval(const ConvexFn& f, const QS2Vector& x);
Value eval(const ConvexFn& f, const RationalVector& x);
double eval(const ConvexFn& f, const DVec& x);  // +inf outside the domain

SubVal subdiff(const ConvexFn& f, const QS2Vector& x);
SubVal subdiff(const ConvexFn& f, const RationalVector& x);
SubVal subdiff(const ConvexFn& f, const DVec& x);

/// dom of the subdifferential as an exact NCSet; IRRATIONAL_BOUNDARY if a row leaves Q.
NCSet dom_subdiff(const ConvexFn& f);

/// Closed-form conjugate; NO_CLOSED_FORM for kinds without one.
Value conjugate_eval(const ConvexFn& f, const QS2Vector& xs);
Value conjugate_eval(const ConvexFn& f, const RationalVector& xs);
double conjugate_eval(const ConvexFn& f, const DVec& xs);

/// Which row of the Rockafellar subdifferential table applies at x (1..13, 14 for x1 = alpha^2, x2 != 0).
int rockafellar_case(const QS2& alpha, const QS2Vector& x);

// -- polygon assembler --

/// Open segment ]p, q[ or open ray {p + s v : s > 0} on the boundary of a polygon.
struct EdgeRemoval {
  bool is_ray = false;
  RationalVector p;
  RationalVector q_or_dir;
};

/// The edges of a 2D polyhedron: bounded edges as segments, unbounded ones as rays from their vertex.
/// A boundary line without vertices yields the two rays leaving its point nearest to the origin.
std::vector<EdgeRemoval> polygon_edges(const HRep& c);

struct AssembledFn {
  ConvexFn f;
  NCSet predicted_dom;
};

/// f = iota_C plus one precomposed catalog function per removed edge; NOT_2D or NOT_FULL_DIM on bad C.
AssembledFn assemble_polygon_fn(const HRep& c, const std::vector<EdgeRemoval>& remove);

/// All points of C at minimal distance from x.
std::vector<RationalVector> project_finite(const std::vector<RationalVector>& c, const RationalVector& x);
std::vector<DVec> project_finite(const std::vector<DVec>& c, const DVec& x);

}  // namespace ncx
