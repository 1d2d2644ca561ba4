#include "micropump/fluids.hpp"

#include <cmath>

#include "micropump/errors.hpp"

namespace micropump {

void FluidProperties::validate() const {
  if (!(density_kg_m3 > 0.0) || !std::isfinite(density_kg_m3))
    throw ValidationError("fluid.density must be > 0");
  if (!(dynamic_viscosity_pa_s > 0.0) || !std::isfinite(dynamic_viscosity_pa_s))
    throw ValidationError("fluid.viscosity must be > 0");
  if (!(gravity_m_s2 >= 0.0) || !std::isfinite(gravity_m_s2))
    throw ValidationError("fluid.gravity must be >= 0");
}

double bernoulli_residual(const ChannelStation& s1, const ChannelStation& s2,
                          const FluidProperties& fluid, bool include_gravity) {
  const double rho = fluid.density_kg_m3;
  double head1 = s1.pressure_pa + 0.5 * rho * s1.velocity_m_s * s1.velocity_m_s;
  double head2 = s2.pressure_pa + 0.5 * rho * s2.velocity_m_s * s2.velocity_m_s;
  if (include_gravity) {
    head1 += rho * fluid.gravity_m_s2 * s1.height_m;
    head2 += rho * fluid.gravity_m_s2 * s2.height_m;
  }
  return head1 - head2;
}

}  // namespace micropump
