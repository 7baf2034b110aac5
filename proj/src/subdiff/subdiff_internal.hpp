#pragma once

// Node with cached floating-point copies for the numeric evaluation path.

#include "ncx/subdiff.hpp"

namespace ncx::detail {

/// Width of the band in which numeric case decisions are treated as ties.
inline constexpr double kGuard = 1e-12;

struct DRow {
  DVec a;
  double b = 0;
};

struct DPoly {
  std::vector<DRow> eq, le, lt;
};

struct Node : FnNode {
  DPoly dpoly;
  std::vector<DVec> dpoints, drays, dlin;
  DVec dx0, dbeta;
  double dlo = 0, dhi = 0, dalpha = 0;
  QMatrix minv;
  std::vector<DVec> md, dminv;
  DVec dshift;
};

std::vector<DVec> dmatrix(const QMatrix& m);

}  // namespace ncx::detail
