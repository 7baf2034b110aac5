#pragma once

// SVG 1.1 figures of planar sets: shaded pieces, dashed open edges, solid closed edges, dots for points.

#include <array>
#include <optional>
#include <string>

#include "ncx/subdiff.hpp"

namespace ncx {

struct FigureSpec {
  /// {xmin, ymin, xmax, ymax}; chosen from the data when empty.
  std::optional<std::array<double, 4>> viewport;
  int size = 480;  // pixels along the longer side
  double dot_radius = 3.5;
  double stroke_width = 1.6;
  std::string fill = "#c9d6ea";
  std::string stroke = "#1d3557";
  std::string title;
  bool axes = true;
};

/// NOT_2D unless e.dim == 2.  Output depends only on (e, spec).
std::string render_svg(const NCSet& e, const FigureSpec& spec = {});
/// The set dom of the subdifferential of f.
std::string render_svg(const ConvexFn& f, const FigureSpec& spec = {});

}  // namespace ncx
