#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace bjortho {

struct GoldenMin {
  double x;
  double value;
};

/// Golden-section minimization of a unimodal (typically convex) function on
/// [lo, hi]. Runs until the bracket is below xtol or max_iter shrink steps.
/// Returns the best point evaluated anywhere, endpoints included, so flat
/// regions and kinks are handled without extra assumptions.
template <class F>
GoldenMin golden_min(F&& f, double lo, double hi, double xtol, int max_iter = 240) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  GoldenMin best{a, f(a)};
  double fb_end = f(b);
  if (fb_end < best.value) best = {b, fb_end};

  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  if (f1 < best.value) best = {x1, f1};
  if (f2 < best.value) best = {x2, f2};

  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
      if (f1 < best.value) best = {x1, f1};
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
      if (f2 < best.value) best = {x2, f2};
    }
  }
  return best;
}

/// Golden-section maximization; returns the best point with its (maximal) value.
template <class F>
GoldenMin golden_max(F&& f, double lo, double hi, double xtol, int max_iter = 240) {
  auto neg = [&](double t) { return -f(t); };
  GoldenMin r = golden_min(neg, lo, hi, xtol, max_iter);
  return {r.x, -r.value};
}

}  // namespace bjortho
