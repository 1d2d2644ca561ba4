#pragma once

namespace micropump {

// Working-fluid properties.  Defaults are water at 25 C; the pumped medium
// is an aqueous dye solution, close enough to water for a lumped model.
struct FluidProperties {
  double density_kg_m3 = 997.0;
  double dynamic_viscosity_pa_s = 8.9e-4;
  double gravity_m_s2 = 9.81;

  // Throws ValidationError when a field is physically inadmissible.
  void validate() const;
};

inline FluidProperties water_25c() { return FluidProperties{}; }

// One cross-section of a channel for energy-balance checks.
struct ChannelStation {
  double pressure_pa = 0.0;
  double velocity_m_s = 0.0;
  double height_m = 0.0;
};

// Energy imbalance between two stations in Pa:
//   (P1 + rho*V1^2/2 [+ rho*g*Z1]) - (P2 + rho*V2^2/2 [+ rho*g*Z2]).
// Zero iff the stations satisfy the loss-free Bernoulli balance; gravity
// terms are included only when include_gravity is set (channels are planar,
// so the default analyses drop them).  Antisymmetric under swapping s1/s2.
double bernoulli_residual(const ChannelStation& s1, const ChannelStation& s2,
                          const FluidProperties& fluid, bool include_gravity);

}  // namespace micropump
