#include "micropump/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "micropump/errors.hpp"
#include "micropump/rootfind.hpp"
#include "micropump/units.hpp"

namespace micropump {

double link_hydraulic_resistance(const ChamberSpec& chamber,
                                 const FluidProperties& fluid) {
  const double w = std::max(chamber.connecting_channel_width_m,
                            chamber.connecting_channel_depth_m);
  const double h = std::min(chamber.connecting_channel_width_m,
                            chamber.connecting_channel_depth_m);
  return 12.0 * fluid.dynamic_viscosity_pa_s *
         chamber.connecting_channel_length_m /
         (w * h * h * h * (1.0 - 0.63 * h / w));
}

void PumpConfig::validate() const {
  fluid.validate();
  inlet_element.geometry.validate();
  inlet_element.losses.validate();
  outlet_element.geometry.validate();
  outlet_element.losses.validate();
  if (chambers.empty())
    throw ValidationError("pump requires at least one chamber");
  for (const auto& c : chambers) c.validate();
  membrane.validate();
  plan.validate();
  if (plan.chamber_count() != chambers.size())
    throw ValidationError("plan covers " +
                          std::to_string(plan.chamber_count()) +
                          " chambers but the pump has " +
                          std::to_string(chambers.size()));
}

namespace {

// Signed flow through a boundary element in the downstream (forward-pumping)
// direction, given upstream and downstream node pressures.  The element's
// orientation says which way its low-loss expansion points.
double stream_flow(const DiffuserElement& elem, double p_upstream,
                   double p_downstream, const FluidProperties& fluid) {
  if (elem.forward_orientation == Orientation::inlet_to_outlet)
    return directional_flow(elem, p_upstream - p_downstream, fluid);
  return -directional_flow(elem, p_downstream - p_upstream, fluid);
}

struct ChainResult {
  double residual = 0.0;               // inflow excess at the outlet element
  std::vector<double> pressures_pa;    // chamber pressures implied by p1
  double inlet_flow = 0.0;
  double outlet_flow = 0.0;
};

// Eliminates the serial chain: given the first chamber pressure, continuity
// fixes every link flow and hence every downstream pressure; the one
// remaining equation is flow balance at the outlet element.  The residual is
// strictly decreasing in p1, so the root is unique.
ChainResult evaluate_chain(double p1, const PumpConfig& config,
                           const std::vector<double>& volume_rates,
                           double p_in, double p_out,
                           const std::vector<double>& link_resistance) {
  const std::size_t n = config.chambers.size();
  ChainResult r;
  r.pressures_pa.resize(n);
  r.pressures_pa[0] = p1;
  r.inlet_flow = stream_flow(config.inlet_element, p_in, p1, config.fluid);

  double q = r.inlet_flow;  // flow arriving at the current chamber
  double p = p1;
  for (std::size_t i = 0; i < n; ++i) {
    q -= volume_rates[i];  // continuity: what the membrane absorbs
    if (i + 1 < n) {
      if (config.interior_link_model == LinkModel::linear_resistance)
        p -= q * link_resistance[i];
      r.pressures_pa[i + 1] = p;
    }
  }
  r.outlet_flow = stream_flow(config.outlet_element, p, p_out, config.fluid);
  r.residual = q - r.outlet_flow;
  return r;
}

}  // namespace

PumpState initial_state(const PumpConfig& config) {
  config.validate();
  PumpState state;
  state.boundary_pressure_inlet_pa = config.inlet_pressure_pa;
  state.boundary_pressure_outlet_pa = config.outlet_pressure_pa;
  const std::size_t n = config.chambers.size();
  state.chamber_volumes_m3.assign(n, 0.0);
  state.membrane_stage_volumes_m3.assign(n, 0.0);
  state.chamber_pressures_pa.assign(
      n, 0.5 * (config.inlet_pressure_pa + config.outlet_pressure_pa));
  return state;
}

PumpState step(const PumpState& state, const PumpConfig& config,
               const DriveConfig& drive, double dt_s) {
  const std::size_t n = config.chambers.size();
  if (!(dt_s > 0.0)) throw ValidationError("step requires dt > 0");
  if (dt_s * drive.frequency_hz > 1.0 / 200.0 * (1.0 + 1e-9))
    throw ValidationError("step requires dt <= T/200 for waveform resolution");

  PumpState next = state;
  next.time_s = state.time_s + dt_s;

  // Membrane update.  The command is sampled at the step midpoint: the
  // square-wave plan transitions on step boundaries, so the midpoint sample
  // is exact and immune to boundary roundoff.  Two cascaded exponential lag
  // stages give the critically-damped second-order response.
  const double t_mid = state.time_s + 0.5 * dt_s;
  std::vector<double> volume_rates(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double commanded =
        target_volume(t_mid, i, drive, config.membrane, config.plan);
    const double stage = actual_volume_step(
        state.membrane_stage_volumes_m3[i], commanded, dt_s, config.membrane);
    const double achieved = actual_volume_step(state.chamber_volumes_m3[i],
                                               stage, dt_s, config.membrane);
    next.membrane_stage_volumes_m3[i] = stage;
    next.chamber_volumes_m3[i] = achieved;
    volume_rates[i] = (achieved - state.chamber_volumes_m3[i]) / dt_s;
  }

  std::vector<double> link_resistance(n, 0.0);
  if (config.interior_link_model == LinkModel::linear_resistance)
    for (std::size_t i = 0; i < n; ++i)
      link_resistance[i] =
          link_hydraulic_resistance(config.chambers[i], config.fluid);

  const double p_in = state.boundary_pressure_inlet_pa;
  const double p_out = state.boundary_pressure_outlet_pa;

  // Continuity residual scale: the gross stroke flow.
  const double flow_scale =
      std::max(config.membrane.stroke_volume_ref_m3 * 2.0 * kPi *
                   drive.frequency_hz,
               1e-25);

  auto residual = [&](double p1) {
    return evaluate_chain(p1, config, volume_rates, p_in, p_out,
                          link_resistance)
        .residual;
  };

  // x_tol = 0: the element law has unbounded slope where a flow reverses, so
  // the bracket must shrink to machine width for the residual to clear the
  // acceptance threshold when the root sits near such a kink.
  const double p1_guess = state.chamber_pressures_pa[0];
  const double halfwidth = std::max(1.0, 0.25 * std::abs(p1_guess));
  RootResult root;
  try {
    root = find_root_expanding(residual, p1_guess, halfwidth,
                               1e-12 * flow_scale, 0.0, 400);
  } catch (const NonConvergence&) {
    throw NonConvergence("pressure solve failed to bracket at t = " +
                             std::to_string(next.time_s),
                         1.0);
  }
  const double residual_rel = std::abs(root.f) / flow_scale;
  if (!root.converged || residual_rel > 1e-9)
    throw NonConvergence("pressure solve stalled at relative residual " +
                             std::to_string(residual_rel),
                         residual_rel);

  const ChainResult chain = evaluate_chain(root.x, config, volume_rates, p_in,
                                           p_out, link_resistance);
  next.chamber_pressures_pa = chain.pressures_pa;
  next.last_residual_rel = residual_rel;
  return next;
}

BoundaryFlows boundary_flows(const PumpState& state,
                             const PumpConfig& config) {
  BoundaryFlows flows;
  flows.inlet_m3s =
      stream_flow(config.inlet_element, state.boundary_pressure_inlet_pa,
                  state.chamber_pressures_pa.front(), config.fluid);
  flows.outlet_m3s =
      stream_flow(config.outlet_element, state.chamber_pressures_pa.back(),
                  state.boundary_pressure_outlet_pa, config.fluid);
  return flows;
}

FlowRecord run_cycles(const PumpConfig& config, const DriveConfig& drive,
                      int max_cycles, double dt_s, bool record_samples,
                      double cycle_tol) {
  config.validate();
  drive.validate(config.chambers.size());
  if (max_cycles < 2) throw ValidationError("run_cycles needs max_cycles >= 2");

  const double period = 1.0 / drive.frequency_hz;
  const double steps_exact = period / dt_s;
  const int steps_per_cycle = static_cast<int>(std::lround(steps_exact));
  if (steps_per_cycle < 200 ||
      std::abs(steps_exact - steps_per_cycle) > 1e-9 * steps_exact)
    throw ValidationError(
        "dt must divide the drive period into at least 200 equal steps");

  FlowRecord record;
  record.frequency_hz = drive.frequency_hz;

  PumpState state = initial_state(config);
  double prev_net = 0.0;
  int settled_streak = 0;
  for (int cycle = 1; cycle <= max_cycles; ++cycle) {
    double net = 0.0, gross = 0.0;
    for (int k = 0; k < steps_per_cycle; ++k) {
      state = step(state, config, drive, dt_s);
      record.max_residual_rel =
          std::max(record.max_residual_rel, state.last_residual_rel);
      const BoundaryFlows flows = boundary_flows(state, config);
      net += flows.outlet_m3s * dt_s;
      gross += std::abs(flows.outlet_m3s) * dt_s;
      if (record_samples)
        record.samples.push_back({state.time_s, flows.inlet_m3s,
                                  flows.outlet_m3s,
                                  state.chamber_pressures_pa});
    }
    record.cycles.push_back({cycle, net, gross});

    // Converged once the cycle-net volume stops moving for three consecutive
    // cycle pairs.  A single small difference is not enough: the start-up
    // transient of the cascaded membrane stages makes the per-cycle net
    // non-monotone, and its extremum has a vanishing successive difference
    // while still far from the periodic value.  The floor keeps a legitimate
    // zero net (symmetric elements, zero voltage) convergent.
    if (cycle >= 2) {
      const double floor = 1e-6 * gross +
                           1e-15 * config.membrane.stroke_volume_ref_m3;
      if (std::abs(net - prev_net) <=
          cycle_tol * std::max(std::abs(net), floor))
        ++settled_streak;
      else
        settled_streak = 0;
      if (settled_streak >= 3) {
        record.converged = true;
        break;
      }
    }
    prev_net = net;
  }
  return record;
}

double net_flow_rate_ul_min(const FlowRecord& record) {
  if (!record.converged || record.cycles.empty())
    throw NotConverged("flow rate requested from a non-converged run");
  return m3s_to_ul_min(record.cycles.back().net_volume_m3 *
                       record.frequency_hz);
}

double mean_channel_velocity(double flow_m3s, const ChamberSpec& chamber) {
  const double area = chamber.connecting_channel_width_m *
                      chamber.connecting_channel_depth_m;
  return flow_m3s / area;
}

}  // namespace micropump
