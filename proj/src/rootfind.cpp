#include "micropump/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "micropump/errors.hpp"

namespace micropump {

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double f_tol,
                               double x_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, fa, 0, true};
  if (fb == 0.0) return {b, fb, 0, true};
  if (std::signbit(fa) == std::signbit(fb))
    throw NonConvergence("root bracket does not straddle a sign change",
                         std::min(std::abs(fa), std::abs(fb)));

  // Classic Brent: keep b the best iterate, a its counterpart, c the
  // previous b.  Falls back to bisection whenever interpolation misbehaves.
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if (std::signbit(fb) == std::signbit(fc)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1)
      return {b, fb, it, true};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Attempt inverse quadratic interpolation (secant if a == c).
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return {b, fb, max_iter, false};
}

RootResult find_root_expanding(const std::function<double(double)>& f,
                               double x0, double initial_halfwidth,
                               double f_tol, double x_tol, int max_iter) {
  const double f0 = f(x0);
  if (std::abs(f0) <= f_tol) return {x0, f0, 0, true};

  double h = initial_halfwidth;
  double lo = x0 - h, hi = x0 + h;
  double flo = f(lo), fhi = f(hi);
  for (int k = 0; k < 200; ++k) {
    if (std::signbit(flo) != std::signbit(fhi) || flo == 0.0 || fhi == 0.0)
      return find_root_bracketed(f, lo, hi, f_tol, x_tol, max_iter);
    h *= 2.0;
    lo = x0 - h;
    hi = x0 + h;
    flo = f(lo);
    fhi = f(hi);
  }
  throw NonConvergence("bracket expansion found no sign change",
                       std::min(std::abs(flo), std::abs(fhi)));
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace micropump
