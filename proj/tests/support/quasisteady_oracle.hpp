#pragma once

// Independent oracle for the single-chamber quasi-steady pumping cycle.
//
// Deliberately shares NOTHING with the network solver: it integrates the
// instantaneous chamber balance with a fine fixed step and a plain bisection
// on the chamber pressure, assuming
//   - one chamber, lossless interior (the chamber pressure is THE pressure),
//   - sinusoidal commanded volume with negligible membrane lag (f << fc),
//   - both boundary elements in forward orientation at 0 gauge reservoirs.
// Per cycle it returns the net and gross outlet volumes, to be compared both
// against the closed-form ((eta-1)/(eta+1))*V_gross ratio and against the
// production simulator.

#include <cmath>
#include <stdexcept>

#include "micropump/diffuser.hpp"
#include "micropump/fluids.hpp"
#include "micropump/units.hpp"

namespace oracle {

struct CycleVolumes {
  double net_m3 = 0.0;
  double gross_m3 = 0.0;
};

// Signed flow from the pressure node through one boundary element, taken
// positive in the forward-pumping direction.  `into_chamber` selects the
// inlet element (reservoir -> chamber) vs the outlet element
// (chamber -> reservoir); both see the same chamber pressure p.
inline double element_flow_forward(const micropump::DiffuserElement& elem,
                                   double p_chamber,
                                   const micropump::FluidProperties& fluid,
                                   bool into_chamber) {
  const double dp = into_chamber ? (0.0 - p_chamber) : (p_chamber - 0.0);
  return micropump::directional_flow(elem, dp, fluid);
}

// Net element inflow minus the required chamber volume rate; the root in p
// is the quasi-steady chamber pressure.
inline double continuity_residual(double p,
                                  const micropump::DiffuserElement& inlet,
                                  const micropump::DiffuserElement& outlet,
                                  const micropump::FluidProperties& fluid,
                                  double dv_dt) {
  const double q_in = element_flow_forward(inlet, p, fluid, true);
  const double q_out = element_flow_forward(outlet, p, fluid, false);
  return q_in - q_out - dv_dt;
}

// Plain bisection; the residual is strictly decreasing in p.
inline double solve_pressure(const micropump::DiffuserElement& inlet,
                             const micropump::DiffuserElement& outlet,
                             const micropump::FluidProperties& fluid,
                             double dv_dt) {
  double lo = -1.0, hi = 1.0;
  for (int k = 0; k < 200; ++k) {
    if (continuity_residual(lo, inlet, outlet, fluid, dv_dt) > 0.0 &&
        continuity_residual(hi, inlet, outlet, fluid, dv_dt) < 0.0)
      break;
    lo *= 2.0;
    hi *= 2.0;
    if (k == 199) throw std::runtime_error("oracle: no pressure bracket");
  }
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (continuity_residual(mid, inlet, outlet, fluid, dv_dt) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Integrates one steady cycle of v(t) = -(S/2) sin(2 pi f t) with
// `fine_steps` equal slices, returning net and gross outlet volume.
inline CycleVolumes integrate_cycle(const micropump::DiffuserElement& inlet,
                                    const micropump::DiffuserElement& outlet,
                                    const micropump::FluidProperties& fluid,
                                    double stroke_m3, double frequency_hz,
                                    int fine_steps = 20000) {
  const double period = 1.0 / frequency_hz;
  const double dt = period / fine_steps;
  CycleVolumes out;
  for (int k = 0; k < fine_steps; ++k) {
    // Midpoint rule on the commanded volume rate (lag is neglected).
    const double t_mid = (k + 0.5) * dt;
    const double dv_dt = -0.5 * stroke_m3 * 2.0 * micropump::kPi *
                         frequency_hz *
                         std::cos(2.0 * micropump::kPi * frequency_hz * t_mid);
    const double p = solve_pressure(inlet, outlet, fluid, dv_dt);
    const double q_out = element_flow_forward(outlet, p, fluid, false);
    out.net_m3 += q_out * dt;
    out.gross_m3 += std::abs(q_out) * dt;
  }
  return out;
}

}  // namespace oracle
