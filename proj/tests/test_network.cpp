#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "micropump/diffuser.hpp"
#include "micropump/errors.hpp"
#include "micropump/network.hpp"
#include "micropump/units.hpp"
#include "support/quasisteady_oracle.hpp"

using namespace micropump;

namespace {

DiffuserElement make_element(double angle_deg = 10.0,
                             bool forward = true,
                             double xi_base = kXiBaseDefault) {
  DiffuserGeometry geom{0.3e-3, 3.4e-3, deg_to_rad(angle_deg), 0.35e-3};
  return DiffuserElement{geom, derive_loss_coefficients(geom, xi_base),
                         forward ? Orientation::inlet_to_outlet
                                 : Orientation::outlet_to_inlet};
}

PumpConfig baseline_config(std::size_t n = 3,
                           LinkModel link = LinkModel::linear_resistance) {
  PumpConfig cfg;
  cfg.inlet_element = make_element();
  cfg.outlet_element = make_element();
  cfg.chambers.assign(n, ChamberSpec{});
  cfg.interior_link_model = link;
  cfg.fluid = water_25c();
  cfg.membrane = MembraneModel{0.65e-9, 24.0, 70.0};
  cfg.plan = default_phase_plan(n);
  return cfg;
}

DriveConfig baseline_drive(std::size_t n = 3, double freq = 50.0,
                           Waveform w = Waveform::square) {
  return DriveConfig{24.0, freq, w, uniform_phase_offsets(n)};
}

double run_net(const PumpConfig& cfg, const DriveConfig& drive, int cycles,
               int divisor, double* gross = nullptr) {
  // Fixed cycle count (cycle_tol = 0 never triggers early exit) so paired
  // runs see identical transients.
  const FlowRecord rec =
      run_cycles(cfg, drive, cycles, 1.0 / (drive.frequency_hz * divisor),
                 /*record_samples=*/false, /*cycle_tol=*/0.0);
  if (gross) *gross = rec.cycles.back().gross_volume_m3;
  return rec.cycles.back().net_volume_m3;
}

}  // namespace

TEST_CASE("rectangular-channel hydraulic resistance matches the frozen value") {
  const ChamberSpec chamber;  // 0.35 x 0.30 x 2.0 mm channel
  const FluidProperties fluid = water_25c();
  CHECK(link_hydraulic_resistance(chamber, fluid) ==
        doctest::Approx(4913733609.385783).epsilon(1e-12));

  // h is the shorter side regardless of which field holds it.
  ChamberSpec swapped = chamber;
  std::swap(swapped.connecting_channel_width_m,
            swapped.connecting_channel_depth_m);
  CHECK(link_hydraulic_resistance(swapped, fluid) ==
        doctest::Approx(link_hydraulic_resistance(chamber, fluid))
            .epsilon(1e-15));

  // Resistance rises steeply as the channel shrinks.
  ChamberSpec half = chamber;
  half.connecting_channel_depth_m *= 0.5;
  CHECK(link_hydraulic_resistance(half, fluid) >
        4.0 * link_hydraulic_resistance(chamber, fluid));
}

TEST_CASE("mean channel velocity is flow over the rectangular area") {
  const ChamberSpec chamber;
  CHECK(mean_channel_velocity(1.05e-7, chamber) == doctest::Approx(1.0));
  CHECK(mean_channel_velocity(0.0, chamber) == 0.0);
  CHECK(mean_channel_velocity(-1.05e-7, chamber) == doctest::Approx(-1.0));
}

TEST_CASE("pump config validation catches mismatched plans") {
  PumpConfig cfg = baseline_config();
  CHECK_NOTHROW(cfg.validate());

  cfg.plan = default_phase_plan(2);  // three chambers, two-chamber plan
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = baseline_config();
  cfg.chambers.clear();
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = baseline_config();
  cfg.membrane.response_cutoff_hz = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("initial state rests at the mean boundary pressure") {
  PumpConfig cfg = baseline_config();
  cfg.inlet_pressure_pa = 100.0;
  cfg.outlet_pressure_pa = 200.0;
  const PumpState s = initial_state(cfg);
  CHECK(s.time_s == 0.0);
  REQUIRE(s.chamber_volumes_m3.size() == 3);
  for (double v : s.chamber_volumes_m3) CHECK(v == 0.0);
  for (double p : s.chamber_pressures_pa) CHECK(p == doctest::Approx(150.0));
}

TEST_CASE("step rejects a time step too coarse for the waveform") {
  const PumpConfig cfg = baseline_config();
  const DriveConfig drive = baseline_drive();
  const PumpState s = initial_state(cfg);
  CHECK_THROWS_AS(step(s, cfg, drive, (1.0 / 50.0) / 100.0), ValidationError);
  CHECK_THROWS_AS(step(s, cfg, drive, 0.0), ValidationError);
  CHECK_NOTHROW(step(s, cfg, drive, (1.0 / 50.0) / 240.0));
}

TEST_CASE("run_cycles rejects a dt that does not divide the period") {
  const PumpConfig cfg = baseline_config();
  const DriveConfig drive = baseline_drive();
  CHECK_THROWS_AS(run_cycles(cfg, drive, 10, 1.0 / 50.0 / 240.5),
                  ValidationError);
  CHECK_THROWS_AS(run_cycles(cfg, drive, 10, 1.0 / 50.0 / 120.0),
                  ValidationError);  // only 120 steps per cycle
  CHECK_THROWS_AS(run_cycles(cfg, drive, 1, 1.0 / 50.0 / 240.0),
                  ValidationError);  // needs two cycles to compare
}

TEST_CASE("zero drive voltage pumps nothing and converges immediately") {
  const PumpConfig cfg = baseline_config();
  DriveConfig drive = baseline_drive();
  drive.voltage_v = 0.0;
  const FlowRecord rec = run_cycles(cfg, drive, 50, 1.0 / 50.0 / 240.0);
  CHECK(rec.converged);
  // Three consecutive settled cycle pairs are required, so the earliest
  // possible convergence is after cycle 4.
  CHECK(rec.cycles.size() == 4);
  CHECK(rec.cycles.back().net_volume_m3 == doctest::Approx(0.0));
  CHECK(rec.cycles.back().gross_volume_m3 == doctest::Approx(0.0));
  CHECK(net_flow_rate_ul_min(rec) == doctest::Approx(0.0));
}

TEST_CASE("flow rate query requires a converged record") {
  CHECK_THROWS_AS(net_flow_rate_ul_min(FlowRecord{}), NotConverged);
}

TEST_CASE("baseline pump delivers forward flow in a plausible range") {
  const PumpConfig cfg = baseline_config();
  const DriveConfig drive = baseline_drive();
  const FlowRecord rec = run_cycles(cfg, drive, 50, 1.0 / 50.0 / 240.0);
  REQUIRE(rec.converged);
  CHECK(rec.max_residual_rel < 1e-9);
  const double flow = net_flow_rate_ul_min(rec);
  CHECK(flow > 10.0);
  CHECK(flow < 1000.0);

  // Sample bookkeeping: one sample per step, strictly increasing time, all
  // chamber pressures recorded.
  const std::size_t steps_per_cycle = 240;
  REQUIRE(rec.samples.size() == rec.cycles.size() * steps_per_cycle);
  for (std::size_t k = 1; k < rec.samples.size(); ++k)
    CHECK(rec.samples[k].time_s > rec.samples[k - 1].time_s);
  for (const auto& s : rec.samples) CHECK(s.chamber_pressures_pa.size() == 3);
  for (const auto& c : rec.cycles)
    CHECK(c.gross_volume_m3 >= std::abs(c.net_volume_m3));
}

TEST_CASE("boundary flow integrals balance the stored chamber volume") {
  // Per step the pressure solve enforces q_in - q_out = sum_i dV_i/dt, so the
  // discrete integral of the boundary flow difference equals the total stored
  // volume change from rest.
  const PumpConfig cfg = baseline_config();
  const DriveConfig drive = baseline_drive();
  const double dt = 1.0 / 50.0 / 240.0;

  PumpState state = initial_state(cfg);
  double integral = 0.0, gross = 0.0;
  for (int k = 0; k < 3 * 240; ++k) {
    state = step(state, cfg, drive, dt);
    const BoundaryFlows flows = boundary_flows(state, cfg);
    integral += (flows.inlet_m3s - flows.outlet_m3s) * dt;
    gross += std::abs(flows.outlet_m3s) * dt;
  }
  double stored = 0.0;
  for (double v : state.chamber_volumes_m3) stored += v;
  CHECK(std::abs(integral - stored) < 1e-6 * gross);
}

TEST_CASE("symmetric elements produce no net flow") {
  // Equal loss in both directions removes the rectification mechanism; the
  // half-period antisymmetry of the travelling-wave plan then cancels the
  // cycle integral to roundoff.
  PumpConfig cfg = baseline_config();
  cfg.inlet_element.losses = LossCoefficients{0.6, 0.6};
  cfg.outlet_element.losses = LossCoefficients{0.6, 0.6};
  const DriveConfig drive = baseline_drive();
  const FlowRecord rec = run_cycles(cfg, drive, 50, 1.0 / 50.0 / 240.0);
  REQUIRE(rec.converged);
  const auto& last = rec.cycles.back();
  CHECK(last.gross_volume_m3 > 0.0);
  CHECK(std::abs(last.net_volume_m3) < 1e-9 * last.gross_volume_m3);
}

TEST_CASE("single symmetric chamber: boundary flows mirror exactly") {
  PumpConfig cfg = baseline_config(1);
  cfg.inlet_element.losses = LossCoefficients{0.7, 0.7};
  cfg.outlet_element.losses = LossCoefficients{0.7, 0.7};
  DriveConfig drive = baseline_drive(1, 50.0, Waveform::sine);

  const double dt = 1.0 / 50.0 / 240.0;
  PumpState state = initial_state(cfg);
  for (int k = 0; k < 480; ++k) {
    state = step(state, cfg, drive, dt);
    const BoundaryFlows flows = boundary_flows(state, cfg);
    const double scale = std::max(std::abs(flows.inlet_m3s), 1e-12);
    CHECK(std::abs(flows.inlet_m3s + flows.outlet_m3s) <= 1e-9 * scale);
  }
}

TEST_CASE("reversing both element orientations reverses the pump") {
  PumpConfig forward = baseline_config();
  PumpConfig reversed = baseline_config();
  reversed.inlet_element.forward_orientation = Orientation::outlet_to_inlet;
  reversed.outlet_element.forward_orientation = Orientation::outlet_to_inlet;
  const DriveConfig drive = baseline_drive();

  double gross_f = 0.0;
  const double net_f = run_net(forward, drive, 12, 240, &gross_f);
  const double net_r = run_net(reversed, drive, 12, 240);

  CHECK(net_f > 0.0);
  CHECK(net_r < 0.0);
  // Resistive interior links see the wave from the other side, so reversal is
  // a near-mirror, not an exact one.
  CHECK(std::abs(net_f + net_r) < 0.05 * std::abs(net_f));

  // With lossless interior links the reversal is exact to solver precision.
  PumpConfig fwd_ll = baseline_config(3, LinkModel::lossless);
  PumpConfig rev_ll = baseline_config(3, LinkModel::lossless);
  rev_ll.inlet_element.forward_orientation = Orientation::outlet_to_inlet;
  rev_ll.outlet_element.forward_orientation = Orientation::outlet_to_inlet;
  double gross_ll = 0.0;
  const double net_fl = run_net(fwd_ll, drive, 12, 240, &gross_ll);
  const double net_rl = run_net(rev_ll, drive, 12, 240);
  CHECK(net_fl > 0.0);
  CHECK(std::abs(net_fl + net_rl) <= 1e-9 * gross_ll);
}

TEST_CASE("quasi-steady single chamber matches the independent oracle") {
  // Slow sine drive, negligible membrane lag, lossless interior: the network
  // solver must reproduce the quasi-steady cycle integral and the closed-form
  // rectification ratio (eta - 1)/(eta + 1).
  const double eta = 2.0;
  const double xi_d = 0.6;
  const LossCoefficients losses{xi_d, eta * eta * xi_d};

  PumpConfig cfg = baseline_config(1, LinkModel::lossless);
  cfg.inlet_element.losses = losses;
  cfg.outlet_element.losses = losses;
  cfg.membrane = MembraneModel{0.65e-9, 24.0, 5000.0};
  DriveConfig drive = baseline_drive(1, 1.0, Waveform::sine);

  const FlowRecord rec = run_cycles(cfg, drive, 30, 1.0 / 2000.0,
                                    /*record_samples=*/false, 1e-4);
  REQUIRE(rec.converged);
  const double net = rec.cycles.back().net_volume_m3;
  const double gross = rec.cycles.back().gross_volume_m3;

  const double closed_form = (eta - 1.0) / (eta + 1.0);
  CHECK(net / gross == doctest::Approx(closed_form).epsilon(0.01));

  const oracle::CycleVolumes ref = oracle::integrate_cycle(
      cfg.inlet_element, cfg.outlet_element, cfg.fluid,
      cfg.membrane.stroke_volume_ref_m3, drive.frequency_hz, 4000);
  CHECK(net == doctest::Approx(ref.net_m3).epsilon(0.01));
  CHECK(gross == doctest::Approx(ref.gross_m3).epsilon(0.01));
}

TEST_CASE("flow rate rises to the response peak and falls past it") {
  PumpConfig cfg = baseline_config();
  cfg.membrane.response_cutoff_hz = 80.0;
  auto flow_at = [&](double f) {
    DriveConfig drive = baseline_drive(3, f);
    const FlowRecord rec = run_cycles(cfg, drive, 50, 1.0 / (f * 240.0),
                                      /*record_samples=*/false);
    REQUIRE(rec.converged);
    return net_flow_rate_ul_min(rec);
  };
  const double f10 = flow_at(10.0);
  const double f50 = flow_at(50.0);
  const double f400 = flow_at(400.0);
  CHECK(f50 > f10);
  CHECK(f50 > f400);
  CHECK(f10 > 0.0);
  CHECK(f400 > 0.0);
}

TEST_CASE("backpressure at the outlet reduces delivery") {
  const DriveConfig drive = baseline_drive();
  PumpConfig free_delivery = baseline_config();
  PumpConfig loaded = baseline_config();
  loaded.outlet_pressure_pa = 50.0;

  const double net_free = run_net(free_delivery, drive, 10, 240);
  const double net_loaded = run_net(loaded, drive, 10, 240);
  CHECK(net_loaded < net_free);
}
