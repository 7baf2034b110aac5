#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ncx/error.hpp"
#include "ncx/svg.hpp"

namespace ncx {

namespace {

struct Frame {
  double x0, y0, x1, y1, scale, margin;
  double px(double x) const { return margin + (x - x0) * scale; }
  double py(double y) const { return margin + (y1 - y) * scale; }
  int width() const { return static_cast<int>(std::lround(2 * margin + (x1 - x0) * scale)); }
  int height() const { return static_cast<int>(std::lround(2 * margin + (y1 - y0) * scale)); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::array<double, 4> auto_viewport(const NCSet& e) {
  double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
  bool unbounded = false;
  for (const auto& p : e.pieces) {
    const VRep v = dd_convert(closure_rows(p));
    unbounded = unbounded || !v.rays.empty() || !v.lineality.empty();
    for (const auto& q : v.points)
      for (int i = 0; i < 2; ++i) {
        lo[i] = std::min(lo[i], to_double(q[i]));
        hi[i] = std::max(hi[i], to_double(q[i]));
      }
  }
  if (!std::isfinite(lo[0])) return {-1, -1, 1, 1};
  const double pad = unbounded ? 2 : 1;
  return {std::floor(lo[0]) - pad, std::floor(lo[1]) - pad, std::ceil(hi[0]) + pad, std::ceil(hi[1]) + pad};
}

HRep box_rows(const std::array<double, 4>& v) {
  return box(RationalVector{from_double(v[0]), from_double(v[1])}, RationalVector{from_double(v[2]), from_double(v[3])});
}

bool same_row(const LinearRow& a, const LinearRow& b) {
  const LinearRow na = normalize_row(a), nb = normalize_row(b);
  return na.a == nb.a && na.b == nb.b;
}

bool on_box(const HRep& bx, const RationalVector& x) {
  return std::any_of(bx.le.begin(), bx.le.end(), [&](const LinearRow& r) { return dot(r.a, x) == r.b; });
}

struct Layers {
  std::ostringstream fills, edges, lines, rings, dots;
};

void draw_polygon(const HRep& piece, const HRep& bx, const Frame& fr, const FigureSpec& spec, Layers& out) {
  const HRep clipped = canonicalize(intersect(closure_rows(piece), bx));
  if (affine_dim(clipped) != 2) return;
  const VRep v = dd_convert(clipped);
  std::vector<std::pair<double, double>> pts;
  double cx = 0, cy = 0;
  for (const auto& q : v.points) {
    pts.emplace_back(to_double(q[0]), to_double(q[1]));
    cx += pts.back().first;
    cy += pts.back().second;
  }
  cx /= pts.size();
  cy /= pts.size();
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  out.fills << "  <path d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.fills << (i ? " L " : "M ") << fmt(fr.px(pts[i].first)) << ' ' << fmt(fr.py(pts[i].second));
  out.fills << " Z\" fill=\"" << spec.fill << "\" stroke=\"none\"/>\n";

  const HRep pc = canonicalize(piece);
  for (const auto& r : clipped.le) {
    std::vector<const RationalVector*> ends;
    for (const auto& q : v.points)
      if (dot(r.a, q) == r.b) ends.push_back(&q);
    if (ends.size() != 2) continue;
    bool open = false, closed = false;
    for (const auto& s : pc.lt) open = open || same_row(s, r);
    for (const auto& s : pc.le) closed = closed || same_row(s, r);
    if (!open && !closed) continue;  // viewport clip
    out.edges << "  <line x1=\"" << fmt(fr.px(to_double((*ends[0])[0]))) << "\" y1=\""
              << fmt(fr.py(to_double((*ends[0])[1]))) << "\" x2=\"" << fmt(fr.px(to_double((*ends[1])[0])))
              << "\" y2=\"" << fmt(fr.py(to_double((*ends[1])[1]))) << "\" stroke=\"" << spec.stroke
              << "\" stroke-width=\"" << fmt(spec.stroke_width) << '"'
              << (open ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
  }
}

void mark(std::ostringstream& os, const RationalVector& q, const Frame& fr, const FigureSpec& spec, bool filled) {
  os << "  <circle cx=\"" << fmt(fr.px(to_double(q[0]))) << "\" cy=\"" << fmt(fr.py(to_double(q[1]))) << "\" r=\""
     << fmt(spec.dot_radius) << "\" fill=\"" << (filled ? spec.stroke : "#ffffff") << "\" stroke=\"" << spec.stroke
     << "\" stroke-width=\"" << fmt(spec.stroke_width) << "\"/>\n";
}

void draw_segment(const HRep& piece, const HRep& bx, const Frame& fr, const FigureSpec& spec, Layers& out) {
  const VRep v = dd_convert(canonicalize(intersect(closure_rows(piece), bx)));
  if (v.points.size() == 2) {
    const auto &a = v.points[0], &b = v.points[1];
    out.lines << "  <line x1=\"" << fmt(fr.px(to_double(a[0]))) << "\" y1=\"" << fmt(fr.py(to_double(a[1])))
              << "\" x2=\"" << fmt(fr.px(to_double(b[0]))) << "\" y2=\"" << fmt(fr.py(to_double(b[1])))
              << "\" stroke=\"" << spec.stroke << "\" stroke-width=\"" << fmt(2 * spec.stroke_width) << "\"/>\n";
  }
  // ends cut by the viewport are not vertices of the piece
  const auto verts = dd_convert(closure_rows(piece)).points;
  for (const auto& q : v.points) {
    if (on_box(bx, q) && std::find(verts.begin(), verts.end(), q) == verts.end()) continue;
    mark(contains(piece, q) ? out.dots : out.rings, q, fr, spec, contains(piece, q));
  }
}

}  // namespace

std::string render_svg(const NCSet& e_in, const FigureSpec& spec) {
  if (e_in.dim != 2) fail(ErrorCode::Not2D, "render_svg draws sets in R^2");
  const NCSet e = canonicalize(e_in);
  const auto vp = spec.viewport ? *spec.viewport : auto_viewport(e);
  if (!(vp[2] > vp[0] && vp[3] > vp[1])) fail(ErrorCode::Parse, "empty viewport");
  const double margin = 12;
  const Frame fr{vp[0], vp[1], vp[2], vp[3], (spec.size - 2 * margin) / std::max(vp[2] - vp[0], vp[3] - vp[1]),
                 margin};
  const HRep bx = box_rows(vp);

  Layers L;
  for (const auto& p : e.pieces) {
    switch (affine_dim(p)) {
      case 2:
        draw_polygon(p, bx, fr, spec, L);
        break;
      case 1:
        draw_segment(p, bx, fr, spec, L);
        break;
      case 0: {
        const auto q = dd_convert(p).points.front();
        if (contains(bx, q)) mark(L.dots, q, fr, spec, true);
        break;
      }
      default:
        break;
    }
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fr.width() << "\" height=\""
     << fr.height() << "\" viewBox=\"0 0 " << fr.width() << ' ' << fr.height() << "\">\n";
  if (!spec.title.empty()) os << "  <title>" << escape(spec.title) << "</title>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << fr.width() << "\" height=\"" << fr.height() << "\" fill=\"#ffffff\"/>\n";
  if (spec.axes) {
    if (vp[1] <= 0 && 0 <= vp[3])
      os << "  <line x1=\"" << fmt(fr.px(vp[0])) << "\" y1=\"" << fmt(fr.py(0)) << "\" x2=\"" << fmt(fr.px(vp[2]))
         << "\" y2=\"" << fmt(fr.py(0)) << "\" stroke=\"#b0b0b0\" stroke-width=\"0.8\"/>\n";
    if (vp[0] <= 0 && 0 <= vp[2])
      os << "  <line x1=\"" << fmt(fr.px(0)) << "\" y1=\"" << fmt(fr.py(vp[1])) << "\" x2=\"" << fmt(fr.px(0))
         << "\" y2=\"" << fmt(fr.py(vp[3])) << "\" stroke=\"#b0b0b0\" stroke-width=\"0.8\"/>\n";
  }
  os << L.fills.str() << L.edges.str() << L.lines.str() << L.rings.str() << L.dots.str() << "</svg>\n";
  return os.str();
}

std::string render_svg(const ConvexFn& f, const FigureSpec& spec) { return render_svg(dom_subdiff(f), spec); }

}  // namespace ncx
