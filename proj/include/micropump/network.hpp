#pragma once

#include <cstddef>
#include <vector>

#include "micropump/actuation.hpp"
#include "micropump/diffuser.hpp"
#include "micropump/fluids.hpp"
#include "micropump/geometry.hpp"

namespace micropump {

// Interior chamber-to-chamber connection model.  `lossless` pins all
// chambers to one pressure node (used by oracle comparisons);
// `linear_resistance` applies the laminar rectangular-duct resistance of
// each chamber's connecting channel.
enum class LinkModel { lossless, linear_resistance };

// Laminar hydraulic resistance of the chamber's rectangular connecting
// channel: R = 12*mu*L / (w*h^3*(1 - 0.63*h/w)), h the shorter side.
double link_hydraulic_resistance(const ChamberSpec& chamber,
                                 const FluidProperties& fluid);

// Static description of the assembled pump.
struct PumpConfig {
  DiffuserElement inlet_element;
  DiffuserElement outlet_element;
  std::vector<ChamberSpec> chambers;
  LinkModel interior_link_model = LinkModel::linear_resistance;
  FluidProperties fluid;
  MembraneModel membrane;
  PhasePlan plan;
  double inlet_pressure_pa = 0.0;   // reservoir gauge pressures
  double outlet_pressure_pa = 0.0;

  void validate() const;
};

// Instantaneous simulation state.  chamber_volumes are membrane-displaced
// volumes about neutral (positive = expanded); membrane_stage_volumes is the
// internal stage of the two-stage response cascade (see step()).
struct PumpState {
  double time_s = 0.0;
  std::vector<double> chamber_volumes_m3;
  std::vector<double> membrane_stage_volumes_m3;
  std::vector<double> chamber_pressures_pa;
  double boundary_pressure_inlet_pa = 0.0;
  double boundary_pressure_outlet_pa = 0.0;
  double last_residual_rel = 0.0;  // continuity residual of the last solve
};

// One recorded instant: boundary flows are signed positive in the
// forward-pumping direction (inlet flow enters chamber 1, outlet flow leaves
// the last chamber).
struct FlowSample {
  double time_s = 0.0;
  double inlet_flow_m3s = 0.0;
  double outlet_flow_m3s = 0.0;
  std::vector<double> chamber_pressures_pa;
};

struct CycleSummary {
  int index = 0;               // 1-based
  double net_volume_m3 = 0.0;  // net outlet volume over the cycle
  double gross_volume_m3 = 0.0;
};

struct FlowRecord {
  std::vector<FlowSample> samples;
  std::vector<CycleSummary> cycles;
  double frequency_hz = 0.0;
  bool converged = false;
  double max_residual_rel = 0.0;
};

// Fresh state at rest: zero displaced volumes, chamber pressures at the
// average boundary pressure.
PumpState initial_state(const PumpConfig& config);

// Advances one time step:
//  1. membranes move toward their commanded volumes through two cascaded
//     first-order lags (a critically-damped second-order response) -- a
//     single lag cannot reproduce the measured rise-then-fall of flow rate
//     versus frequency, see README;
//  2. chamber pressures solve the quasi-static continuity system (element
//     inflow = volume rate at every chamber) by chain elimination to a
//     single strictly-decreasing scalar residual in the first chamber
//     pressure, root-found with a safeguarded bracketing method.
// Requires dt <= T/200.  Throws NonConvergence if the continuity residual
// cannot be brought below 1e-9 of the stroke flow scale.
PumpState step(const PumpState& state, const PumpConfig& config,
               const DriveConfig& drive, double dt_s);

// Signed boundary flows of a solved state (forward-pumping positive).
struct BoundaryFlows {
  double inlet_m3s = 0.0;
  double outlet_m3s = 0.0;
};
BoundaryFlows boundary_flows(const PumpState& state, const PumpConfig& config);

// Steps the pump from rest for up to max_cycles periods; stops once
// successive cycle-net volumes agree to cycle_tol relative for three
// consecutive cycle pairs (a single agreeing pair can sit on the extremum of
// the start-up transient).  dt must divide the period evenly (the square-wave
// plan is sampled exactly on the resulting grid).  Set record_samples=false
// to keep only cycle summaries.
FlowRecord run_cycles(const PumpConfig& config, const DriveConfig& drive,
                      int max_cycles, double dt_s, bool record_samples = true,
                      double cycle_tol = 1e-3);

// Flow rate of the final converged cycle in ul/min.  Throws NotConverged when
// the record never reached cycle convergence.
double net_flow_rate_ul_min(const FlowRecord& record);

// Mean velocity in the chamber's connecting channel for a given flow.
double mean_channel_velocity(double flow_m3s, const ChamberSpec& chamber);

}  // namespace micropump
