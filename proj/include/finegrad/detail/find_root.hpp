#pragma once

#include <cmath>
#include <stdexcept>

namespace finegrad {

template <class F, class DF>
double find_root(F f, DF df, double lo, double hi, double step, double bisect_tol,
                 double newton_tol)
{
  double a = lo;
  double fa = f(a);
  double b = a;
  bool found = false;
  while (a < hi) {
    b = std::fmin(a + step, hi);
    const double fb = f(b);
    if (fa == 0)
      return a;
    if ((fa < 0) != (fb < 0)) {
      found = true;
      break;
    }
    a = b;
    fa = fb;
    if (b >= hi)
      break;
  }
  if (!found)
    throw std::runtime_error("bracket not found");

  while (b - a > bisect_tol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }

  double x = 0.5 * (a + b);
  for (int i = 0; i < 50; ++i) {
    const double dx = f(x) / df(x);
    x -= dx;
    if (std::fabs(dx) <= newton_tol)
      break;
  }
  return x;
}

} // namespace finegrad
