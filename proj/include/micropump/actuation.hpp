#pragma once

#include <cstddef>
#include <vector>

namespace micropump {

enum class Waveform { square, sine };

// Electrical drive shared by all chamber actuators.  phase_offsets holds one
// angle (rad) per chamber; the default assignment staggers chambers
// uniformly over the period (i * 2*pi/n), producing a travelling wave.
struct DriveConfig {
  double voltage_v = 24.0;
  double frequency_hz = 50.0;
  Waveform waveform = Waveform::square;
  std::vector<double> phase_offsets_rad;

  void validate(std::size_t n_chambers) const;
};

// Uniform peristaltic offsets {0, 2*pi/n, ...} for n chambers.
std::vector<double> uniform_phase_offsets(std::size_t n_chambers);

// Lumped membrane actuator: displaced volume scales linearly with voltage,
// and the membrane follows its command with a first-order lag whose time
// constant is set by the response cutoff frequency.
struct MembraneModel {
  double stroke_volume_ref_m3 = 0.65e-9;  // peak-to-peak stroke at voltage_ref
  double voltage_ref_v = 24.0;
  double response_cutoff_hz = 70.0;

  void validate() const;

  // Peak-to-peak displaced volume at the given drive voltage.
  double stroke_at(double voltage_v) const {
    return stroke_volume_ref_m3 * (voltage_v / voltage_ref_v);
  }

  // Lag time constant tau = 1/(2*pi*fc).
  double time_constant_s() const;
};

// Membrane position command: down pushes into the chamber (compressing,
// negative displaced volume), up pulls away (expanding, positive).
enum class MembraneState { down, up };

// One period of the actuation sequence as an ordered table of per-chamber
// membrane states; each step occupies the same fraction of the period.
struct PhasePlan {
  std::vector<std::vector<MembraneState>> steps;
  double step_fraction = 0.0;

  void validate() const;
  std::size_t chamber_count() const {
    return steps.empty() ? 0 : steps.front().size();
  }
};

// The travelling-compression-wave plan realized by n 50%-duty square waves
// offset by 1/n of a period: 2n steps, each 1/(2n) of the period.  For
// n = 3 the "down" region advances one chamber every two steps and adjacent
// steps differ in exactly one chamber; n = 1 degenerates to [down; up].
PhasePlan default_phase_plan(std::size_t n_chambers);

// Commanded displaced volume of one chamber at time t: +-stroke/2 following
// the plan's state (square wave), or the matching-amplitude sinusoid
// -(stroke/2)*sin(2*pi*f*t - offset) whose zero crossings coincide with the
// square transitions (sine wave).
double target_volume(double t_s, std::size_t chamber, const DriveConfig& drive,
                     const MembraneModel& membrane, const PhasePlan& plan);

// Advances the first-order membrane lag dV/dt = (v_target - V)/tau by the
// exact exponential update V' = v_target + (V - v_target)*exp(-dt/tau).
// Unconditionally stable; V' always lies between V and v_target.
double actual_volume_step(double v_current_m3, double v_target_m3, double dt_s,
                          const MembraneModel& membrane);

}  // namespace micropump
