#pragma once

#include <initializer_list>
#include <random>

#include "ncx/polykernel.hpp"

namespace ncx::test {

using Pts = std::vector<RationalVector>;

inline RationalVector V(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RationalVector VQ(std::initializer_list<const char*> xs) {
  RationalVector v;
  for (auto x : xs) v.push_back(parse_rational(x));
  return v;
}

inline LinearRow R(std::initializer_list<long> a, long b) { return {V(a), Rational(b)}; }

inline HRep H(std::size_t n, std::vector<LinearRow> eq, std::vector<LinearRow> le, std::vector<LinearRow> lt = {}) {
  HRep h;
  h.dim = n;
  h.eq = std::move(eq);
  h.le = std::move(le);
  h.lt = std::move(lt);
  return h;
}

inline Rational rand_q(std::mt19937_64& g, int lo, int hi, int den = 1) {
  std::uniform_int_distribution<int> d(lo * den, hi * den);
  return Rational(d(g), den);
}

inline RationalVector rand_point(std::mt19937_64& g, std::size_t n, int lo, int hi, int den = 4) {
  RationalVector v(n);
  for (auto& x : v) {
    x = rand_q(g, lo, hi, den);
    x.canonicalize();
  }
  return v;
}

}  // namespace ncx::test
