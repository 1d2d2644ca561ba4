#pragma once

#include "micropump/fluids.hpp"
#include "micropump/geometry.hpp"

namespace micropump {

// Fraction of throat dynamic pressure recovered as static pressure across
// the expanding section.  Always < 1.
struct PressureRecovery {
  double cp = 0.0;
};

// Dimensionless pressure-loss coefficients for the two traversal directions
// of one element: xi_d along the expansion (diffuser direction), xi_n along
// the contraction (nozzle direction).  Flow rectification needs xi_n > xi_d.
struct LossCoefficients {
  double xi_diffuser = 0.0;
  double xi_nozzle = 0.0;

  void validate() const;
};

// Which physical port-to-port direction is the element's expanding
// (low-loss) direction.
enum class Orientation { inlet_to_outlet, outlet_to_inlet };

// A directional flow element: geometry plus its loss coefficients plus the
// orientation of its diffuser direction in the network.
struct DiffuserElement {
  DiffuserGeometry geometry;
  LossCoefficients losses;
  Orientation forward_orientation = Orientation::inlet_to_outlet;
};

// --- Frozen empirical pressure-recovery model -------------------------------
//
// Planar-diffuser design charts give C_p as a ridge in the (2theta, L/W1)
// plane: recovery peaks near the onset of transitory stall and collapses for
// wide angles.  We model the recovered fraction of the ideal Borda-Carnot
// recovery with a smooth unimodal effectiveness curve:
//
//   C_p(2theta, L/W1) = eta_d * C_p_ideal
//   C_p_ideal         = 1 - (A_in/A_out)^2
//   eta_d             = 0.83 * (x * exp(1 - x))^2.6,  x = 2theta / 2theta_peak
//   2theta_peak [deg] = 33.7 / sqrt(L/W1)
//
// The three constants below were chosen once so that the induced loss
// coefficient K = 1 - (A_in/A_out)^2 - C_p has its minimum inside [5, 20]
// degrees and its maximum inside [20, 40] degrees at L/W1 = 11.33, and are
// frozen by golden tests.  Valid for opening angles in (0, 60] degrees.
inline constexpr double kCpEffectivenessMax = 0.83;
inline constexpr double kCpShapeExponent = 2.6;
inline constexpr double kCpPeakAngleCoeffDeg = 33.7;
inline constexpr double kMaxOpeningAngleDeg = 60.0;

// Default base (friction) term added to the recovery-derived loss when
// deriving loss coefficients from geometry.
inline constexpr double kXiBaseDefault = 0.45;

// Evaluates the frozen C_p model.  Throws ValidationError for opening
// angles outside (0, 60] degrees, the model's anchored validity range.
PressureRecovery pressure_recovery_cp(const DiffuserGeometry& geom);

// Diffuser-direction loss coefficient K = 1 - (A_in/A_out)^2 - cp.
double loss_coefficient_k(const DiffuserGeometry& geom, PressureRecovery cp);

// Narrow-mouth velocity V = sqrt(2*dp / (rho*xi)) for a non-negative
// pressure drop magnitude.  Callers handle sign.
double throat_velocity(double delta_p_pa, const FluidProperties& fluid,
                       double xi);

// Volume flow Phi = A * V.
double volume_flow(double area_m2, double velocity_m_s);

// Signed element flow for a signed pressure difference taken along the
// element's diffuser direction: positive dp drives flow through the
// expansion (loss xi_d), negative dp through the contraction (loss xi_n).
// The reference area is the narrow mouth for both directions.  Continuous
// and exactly zero at dp = 0.
double directional_flow(const DiffuserElement& elem, double delta_p_signed_pa,
                        const FluidProperties& fluid);

// Same-|dp| forward/backward flow ratio eta = sqrt(xi_n / xi_d).
double rectification_ratio(const LossCoefficients& losses);

// Derives both loss coefficients from geometry:
//   xi_d = xi_base + K(geom, C_p(geom))          (expansion)
//   xi_n = xi_base + 0.5 * (1 - (A_in/A_out)^2)^0.75   (contraction)
// The nozzle term is a standard sharp-contraction correlation; xi_base is a
// flat friction allowance shared by both directions.
LossCoefficients derive_loss_coefficients(const DiffuserGeometry& geom,
                                          double xi_base = kXiBaseDefault);

}  // namespace micropump
