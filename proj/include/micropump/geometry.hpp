#pragma once

namespace micropump {

// Planar diffuser/nozzle channel: a trapezoid of constant depth that widens
// from throat width W1 to exit width W2 = W1 + 2*L*tan(theta) over length L
// (the full opening angle is 2*theta).
struct DiffuserGeometry {
  double throat_width_m = 0.3e-3;    // W1
  double length_m = 3.4e-3;          // L
  double opening_angle_rad = 0.0;    // full angle 2*theta
  double depth_m = 0.35e-3;          // channel depth b

  void validate() const;
};

// Throat-side and exit-side cross-section areas.
struct Areas {
  double inlet_m2 = 0.0;   // A_in  = W1 * depth (narrow mouth)
  double outlet_m2 = 0.0;  // A_out = W2 * depth (wide mouth)
};

// Exit width W2 = W1 + 2*L*tan(2theta/2).
double exit_width(const DiffuserGeometry& geom);

// Narrow- and wide-mouth areas for a rectangular cross-section.
Areas areas(const DiffuserGeometry& geom);

// Narrow-mouth area alone (the reference area of the flow laws).
double throat_area(const DiffuserGeometry& geom);

// Slenderness ratio L/W1.
double slenderness(const DiffuserGeometry& geom);

// One membrane-actuated chamber and the plain channel that links it to the
// next network node.
struct ChamberSpec {
  double diameter_m = 10e-3;
  double connecting_channel_width_m = 0.35e-3;
  double connecting_channel_depth_m = 0.3e-3;
  double connecting_channel_length_m = 2.0e-3;

  void validate() const;
};

}  // namespace micropump
