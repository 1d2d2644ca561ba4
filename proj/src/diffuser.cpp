#include "micropump/diffuser.hpp"

#include <cmath>

#include "micropump/errors.hpp"
#include "micropump/units.hpp"

namespace micropump {

void LossCoefficients::validate() const {
  if (!(xi_diffuser > 0.0) || !std::isfinite(xi_diffuser))
    throw ValidationError("losses.xi_diffuser must be > 0");
  if (!(xi_nozzle > 0.0) || !std::isfinite(xi_nozzle))
    throw ValidationError("losses.xi_nozzle must be > 0");
}

PressureRecovery pressure_recovery_cp(const DiffuserGeometry& geom) {
  geom.validate();
  const double angle_deg = rad_to_deg(geom.opening_angle_rad);
  if (!(angle_deg > 0.0) || angle_deg > kMaxOpeningAngleDeg)
    throw ValidationError(
        "pressure recovery model is only valid for opening angles in "
        "(0, 60] degrees");

  const double peak_deg = kCpPeakAngleCoeffDeg / std::sqrt(slenderness(geom));
  const double x = angle_deg / peak_deg;
  const double effectiveness =
      kCpEffectivenessMax * std::pow(x * std::exp(1.0 - x), kCpShapeExponent);

  const Areas a = areas(geom);
  const double area_ratio = a.inlet_m2 / a.outlet_m2;
  const double cp_ideal = 1.0 - area_ratio * area_ratio;
  return PressureRecovery{effectiveness * cp_ideal};
}

double loss_coefficient_k(const DiffuserGeometry& geom, PressureRecovery cp) {
  const Areas a = areas(geom);
  const double area_ratio = a.inlet_m2 / a.outlet_m2;
  return 1.0 - area_ratio * area_ratio - cp.cp;
}

double throat_velocity(double delta_p_pa, const FluidProperties& fluid,
                       double xi) {
  return std::sqrt(2.0 * delta_p_pa / (fluid.density_kg_m3 * xi));
}

double volume_flow(double area_m2, double velocity_m_s) {
  return area_m2 * velocity_m_s;
}

double directional_flow(const DiffuserElement& elem, double delta_p_signed_pa,
                        const FluidProperties& fluid) {
  if (delta_p_signed_pa == 0.0) return 0.0;
  const double area = throat_area(elem.geometry);
  const double magnitude = std::abs(delta_p_signed_pa);
  if (delta_p_signed_pa > 0.0) {
    return volume_flow(
        area, throat_velocity(magnitude, fluid, elem.losses.xi_diffuser));
  }
  return -volume_flow(area,
                      throat_velocity(magnitude, fluid, elem.losses.xi_nozzle));
}

double rectification_ratio(const LossCoefficients& losses) {
  return std::sqrt(losses.xi_nozzle / losses.xi_diffuser);
}

LossCoefficients derive_loss_coefficients(const DiffuserGeometry& geom,
                                          double xi_base) {
  if (!(xi_base >= 0.0) || !std::isfinite(xi_base))
    throw ValidationError("elements.xi_base must be >= 0");
  const PressureRecovery cp = pressure_recovery_cp(geom);
  const Areas a = areas(geom);
  const double area_ratio = a.inlet_m2 / a.outlet_m2;
  const double contraction = 1.0 - area_ratio * area_ratio;

  LossCoefficients losses;
  losses.xi_diffuser = xi_base + loss_coefficient_k(geom, cp);
  losses.xi_nozzle = xi_base + 0.5 * std::pow(contraction, 0.75);
  losses.validate();
  return losses;
}

}  // namespace micropump
