#pragma once

#include <functional>

namespace micropump {

struct RootResult {
  double x = 0.0;        // abscissa of the root
  double f = 0.0;        // residual at x
  int iterations = 0;
  bool converged = false;
};

// Brent's method on a bracketing interval [lo, hi] (f(lo) and f(hi) must
// have opposite signs, zero counts as either).  Derivative-free on purpose:
// the element flow law has infinite slope at zero pressure difference.
// Stops when |f| <= f_tol or the bracket width falls below x_tol.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi, double f_tol,
                               double x_tol, int max_iter = 200);

// Expands a symmetric bracket around x0 by doubling until the sign changes,
// then hands over to find_root_bracketed.  Suitable for monotone residuals
// with an unknown scale; throws NonConvergence if no sign change is found.
RootResult find_root_expanding(const std::function<double(double)>& f,
                               double x0, double initial_halfwidth,
                               double f_tol, double x_tol, int max_iter = 200);

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Returns the abscissa of the maximum to within x_tol.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double x_tol);

}  // namespace micropump
