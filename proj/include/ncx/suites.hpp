#pragma once

// Named verification suites and worked examples.  Shared by `ncx verify`, `ncx reproduce` and the
// acceptance tests, so both run exactly the same checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncx/io.hpp"

namespace ncx::suites {

struct Options {
  int level = 0;              // grid refinement
  std::optional<double> tol;  // overrides each check's default tolerance
  std::uint64_t seed = 1;
};

/// One line of a JSON-lines report.
struct Check {
  std::string suite;
  std::string name;
  io::ojson params = io::ojson::object();
  double max_violation = 0;
  bool passed = true;
  std::size_t samples = 0;
  double tolerance = 0;
  io::ojson result;  // optional payload, e.g. the computed set
};

io::ojson to_json(const Check& c);
bool all_passed(const std::vector<Check>& cs);

/// Embedded golden documents by name (c2, c2_sum, two_rays, strip, ncpolygon, ncpolygon_fn, ...).
const io::json& golden(const std::string& name);
NCSet golden_set(const std::string& name);

/// Probe points of the Rockafellar case table, grouped by case id 1..14.  Rational when alpha is.
std::vector<std::pair<int, QS2Vector>> rockafellar_probes(const QS2& alpha);

/// Case dispatch, subgradient inequality at every probe, exact dom and range of the subdifferential.
std::vector<Check> rockafellar_subdiff(const QS2& alpha, const Options& o);
/// Three probes in each region of the conjugate table plus random samples inside and outside ran df.
std::vector<Check> rockafellar_conjugate(const QS2& alpha, const Options& o, int inside = 500, int outside = 50);
/// structure_reconstruct against subdiff at each probe point.
std::vector<Check> rockafellar_structure(const QS2& alpha, const Options& o);
std::vector<Check> halfstrip_cases(const QS2& alpha, const Options& o);
/// Monotonicity of every catalog subdifferential, of sums under a valid CQ, and of finite projections.
std::vector<Check> monotonicity(const Options& o);

std::vector<Check> sec2_sum();
std::vector<Check> sec2_intersect();
std::vector<Check> strip_recession();
/// The four-term sum, its dom of the subdifferential, and the polygon assembler on the same quadrilateral.
std::vector<Check> ncpolygon();

/// Subgradient and monotonicity checks for a user supplied function, probed on a grid over `box`.
std::vector<Check> function_checks(const ConvexFn& f, const DVec& lo, const DVec& hi, const Options& o);

}  // namespace ncx::suites
