#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace latticewave {

// Newton iteration secured by a bisection bracket [lo, hi] with
// f(lo) <= 0 <= f(hi) (or the reverse). Falls back to bisection whenever
// the Newton step leaves the bracket or the derivative degenerates.
template <class F, class DF>
double newton_bisect(const F& f, const DF& df, double lo, double hi,
                     double tol = 1e-14, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("newton_bisect: no sign change in bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "]");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    const double d = df(x);
    double next = x - fx / d;
    if (!(std::isfinite(next)) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= tol * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

// Plain bisection to absolute tolerance on x.
template <class F>
double bisect(const F& f, double lo, double hi, double xtol = 1e-13,
              int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("bisect: no sign change in bracket");
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double m = 0.5 * (lo + hi);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = m;
      fhi = fm;
    } else {
      lo = m;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace latticewave
