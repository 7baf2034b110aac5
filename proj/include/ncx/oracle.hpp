#pragma once

// Independent numerical checks of the closed forms in subdiff.

#include <cstdint>
#include <string>
#include <utility>

#include "ncx/subdiff.hpp"

namespace ncx::oracle {

inline constexpr double kTolExact = 1e-9;
inline constexpr double kTolGrid = 1e-5;
inline constexpr double kTolStruct = 1e-3;

struct Axis {
  double lo = 0, hi = 0;
  int steps = 2;
};

/// Tensor grid; axis i has (steps - 1) * 2^level + 1 points, so refinements are nested.
struct Grid {
  std::vector<Axis> axes;
  int level = 0;

  static Grid box(const DVec& lo, const DVec& hi, int steps, int level = 0);
  /// Cube of half-width `radius` around x.
  static Grid around(const DVec& x, double radius, int steps);

  std::size_t dim() const { return axes.size(); }
  std::size_t per_axis(std::size_t i) const;
  std::size_t size() const;
  DVec point(std::size_t index) const;
  double coord(std::size_t axis, std::size_t k) const;
};

struct OracleReport {
  std::string name;
  double max_violation = 0;
  DVec witness;
  bool passed = true;
  std::size_t samples_used = 0;
  double tolerance = 0;
};

struct ConjEstimate {
  double value = 0;  // +inf when the slope test certifies unboundedness
  bool infinite = false;
  DVec argmax;
  std::size_t samples_used = 0;
};

/// sup <x*, x> - f(x) by grid search with zoom refinement; nondecreasing in grid.level.
ConjEstimate conj_oracle(const ConvexFn& f, const DVec& xs, const Grid& grid);

/// max_y <y - x, u> + f(x) - f(y) over the grid; INFINITE_AT_X when f(x) = +inf.
OracleReport subgrad_check(const ConvexFn& f, const DVec& x, const DVec& u, const Grid& grid);
/// Same, with f(x) from the exact evaluator.
OracleReport subgrad_check(const ConvexFn& f, const RationalVector& x, const DVec& u, const Grid& grid);

using GraphSample = std::vector<std::pair<DVec, DVec>>;

/// Pairs (x, u) with u drawn from conv(points) + cone(rays) of subdiff(f, x) at each probe with nonempty value.
GraphSample graph_sample(const ConvexFn& f, const std::vector<DVec>& probes, std::uint64_t seed, int per_point = 2);

/// min over pairs of <x - y, u - v>; EMPTY_SAMPLE on no pairs.
OracleReport monotone_check(const GraphSample& sample);

/// Central differences, Richardson extrapolated; NOT_INTERIOR unless f is finite on a ball around x.
DVec fd_gradient(const ConvexFn& f, const DVec& x, double h = 1e-3);

/// Gradient limits near x (hull) plus the normal cone of cl dom at x.  Empty when every sampled gradient
/// diverges as the radius shrinks; NOT_IN_DOM when f(x) = +inf.
SubVal structure_reconstruct(const ConvexFn& f, const DVec& x, double radius = 1e-4, int samples = 256,
                             std::uint64_t seed = 1);

/// Hausdorff distance of conv(points) + cone(rays) with every ray cut at length `window`.
double hausdorff(const SubVal& a, const SubVal& b, double window = 1.0);

}  // namespace ncx::oracle
