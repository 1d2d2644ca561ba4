#include "micropump/geometry.hpp"

#include <cmath>

#include "micropump/errors.hpp"
#include "micropump/units.hpp"

namespace micropump {

void DiffuserGeometry::validate() const {
  if (!(throat_width_m > 0.0) || !std::isfinite(throat_width_m))
    throw ValidationError("geometry.throat_width must be > 0");
  if (!(length_m > 0.0) || !std::isfinite(length_m))
    throw ValidationError("geometry.length must be > 0");
  if (!(depth_m > 0.0) || !std::isfinite(depth_m))
    throw ValidationError("geometry.depth must be > 0");
  if (!(opening_angle_rad > 0.0) || !(opening_angle_rad < kPi / 2.0))
    throw ValidationError(
        "geometry.opening_angle must lie in (0, 90) degrees");
}

double exit_width(const DiffuserGeometry& geom) {
  return geom.throat_width_m +
         2.0 * geom.length_m * std::tan(geom.opening_angle_rad / 2.0);
}

Areas areas(const DiffuserGeometry& geom) {
  return Areas{geom.throat_width_m * geom.depth_m,
               exit_width(geom) * geom.depth_m};
}

double throat_area(const DiffuserGeometry& geom) {
  return geom.throat_width_m * geom.depth_m;
}

double slenderness(const DiffuserGeometry& geom) {
  return geom.length_m / geom.throat_width_m;
}

void ChamberSpec::validate() const {
  if (!(diameter_m > 0.0)) throw ValidationError("chamber.diameter must be > 0");
  if (!(connecting_channel_width_m > 0.0))
    throw ValidationError("chamber.link_width must be > 0");
  if (!(connecting_channel_depth_m > 0.0))
    throw ValidationError("chamber.link_depth must be > 0");
  if (!(connecting_channel_length_m > 0.0))
    throw ValidationError("chamber.link_length must be > 0");
}

}  // namespace micropump
