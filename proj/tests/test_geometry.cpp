#include <array>

#include "doctest.h"
#include "micropump/errors.hpp"
#include "micropump/geometry.hpp"
#include "micropump/units.hpp"

using namespace micropump;

namespace {

DiffuserGeometry reference_geometry(double angle_deg) {
  return DiffuserGeometry{0.3e-3, 3.4e-3, deg_to_rad(angle_deg), 0.35e-3};
}

// The four canonical opening angles and their reference exit widths (mm).
constexpr std::array<double, 4> kAnglesDeg{5.0, 10.0, 15.0, 20.0};
constexpr std::array<double, 4> kReferenceW2Mm{0.597, 0.895, 1.195, 1.5};

// Frozen exact values of the W2 formula for the same four angles.
constexpr std::array<double, 4> kGoldenW2M{
    0.0005968944117778819, 0.0008949229119762832, 0.0011952369835942916,
    0.0014990234688175617};

}  // namespace

TEST_CASE("exit width reproduces the reference four-angle table") {
  for (std::size_t i = 0; i < kAnglesDeg.size(); ++i) {
    const double w2 = exit_width(reference_geometry(kAnglesDeg[i]));
    CHECK(w2 == doctest::Approx(kGoldenW2M[i]).epsilon(1e-14));
    CHECK(m_to_mm(w2) ==
          doctest::Approx(kReferenceW2Mm[i]).epsilon(5e-3));  // 0.5%
  }
}

TEST_CASE("exit width approaches the throat width for a straight channel") {
  DiffuserGeometry geom = reference_geometry(10.0);
  geom.opening_angle_rad = 1e-9;
  CHECK(exit_width(geom) - geom.throat_width_m < 1e-11);
  CHECK(exit_width(geom) >= geom.throat_width_m);
}

TEST_CASE("exit width grows with angle and with length") {
  double prev = 0.0;
  for (double a : {2.0, 6.0, 11.0, 17.0, 25.0, 40.0}) {
    const double w2 = exit_width(reference_geometry(a));
    CHECK(w2 > prev);
    prev = w2;
  }
  DiffuserGeometry longer = reference_geometry(10.0);
  longer.length_m *= 2.0;
  CHECK(exit_width(longer) > exit_width(reference_geometry(10.0)));
}

TEST_CASE("cross-section areas") {
  const DiffuserGeometry geom = reference_geometry(10.0);
  const Areas a = areas(geom);
  CHECK(a.inlet_m2 == doctest::Approx(1.05e-7).epsilon(1e-12));
  CHECK(throat_area(geom) == a.inlet_m2);
  // Reference W2 of 0.895 mm at 0.35 mm depth.
  CHECK(a.outlet_m2 == doctest::Approx(3.1325e-7).epsilon(5e-3));
  CHECK(a.inlet_m2 < a.outlet_m2);

  // Uniform depth: the area ratio equals the width ratio exactly.
  CHECK(a.inlet_m2 / a.outlet_m2 ==
        doctest::Approx(geom.throat_width_m / exit_width(geom))
            .epsilon(1e-15));

  const DiffuserGeometry square{1e-3, 3.4e-3, deg_to_rad(10.0), 1e-3};
  CHECK(areas(square).inlet_m2 == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("slenderness ratio") {
  CHECK(slenderness(reference_geometry(10.0)) ==
        doctest::Approx(11.33).epsilon(1e-3));
  CHECK(slenderness(DiffuserGeometry{1e-3, 1e-3, deg_to_rad(5.0), 1e-3}) ==
        doctest::Approx(1.0));
  CHECK(slenderness(DiffuserGeometry{0.3e-3, 6.8e-3, deg_to_rad(5.0), 1e-3}) ==
        doctest::Approx(22.67).epsilon(1e-3));
}

TEST_CASE("geometry validation rejects degenerate inputs") {
  CHECK_NOTHROW(reference_geometry(10.0).validate());

  DiffuserGeometry geom = reference_geometry(10.0);
  geom.throat_width_m = 0.0;
  CHECK_THROWS_AS(geom.validate(), ValidationError);

  geom = reference_geometry(10.0);
  geom.length_m = -1.0;
  CHECK_THROWS_AS(geom.validate(), ValidationError);

  geom = reference_geometry(10.0);
  geom.opening_angle_rad = 0.0;
  CHECK_THROWS_AS(geom.validate(), ValidationError);

  geom = reference_geometry(10.0);
  geom.opening_angle_rad = deg_to_rad(95.0);
  CHECK_THROWS_AS(geom.validate(), ValidationError);

  geom = reference_geometry(10.0);
  geom.depth_m = 0.0;
  CHECK_THROWS_AS(geom.validate(), ValidationError);
}

TEST_CASE("chamber validation") {
  ChamberSpec chamber;
  CHECK_NOTHROW(chamber.validate());
  chamber.connecting_channel_width_m = 0.0;
  CHECK_THROWS_AS(chamber.validate(), ValidationError);
}
