#include "micropump/actuation.hpp"

#include <cmath>
#include <string>

#include "micropump/errors.hpp"
#include "micropump/units.hpp"

namespace micropump {

void DriveConfig::validate(std::size_t n_chambers) const {
  if (!(voltage_v >= 0.0) || !std::isfinite(voltage_v))
    throw ValidationError("drive.voltage must be >= 0");
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
    throw ValidationError("drive.frequency must be > 0");
  if (phase_offsets_rad.size() != n_chambers)
    throw ValidationError("drive.phase_offsets must list one angle per chamber (" +
                          std::to_string(n_chambers) + " expected, " +
                          std::to_string(phase_offsets_rad.size()) + " given)");
}

std::vector<double> uniform_phase_offsets(std::size_t n_chambers) {
  std::vector<double> offsets(n_chambers);
  for (std::size_t i = 0; i < n_chambers; ++i)
    offsets[i] = 2.0 * kPi * static_cast<double>(i) /
                 static_cast<double>(n_chambers);
  return offsets;
}

void MembraneModel::validate() const {
  if (!(stroke_volume_ref_m3 > 0.0) || !std::isfinite(stroke_volume_ref_m3))
    throw ValidationError("membrane.stroke_volume must be > 0");
  if (!(voltage_ref_v > 0.0) || !std::isfinite(voltage_ref_v))
    throw ValidationError("membrane.voltage_ref must be > 0");
  if (!(response_cutoff_hz > 0.0) || !std::isfinite(response_cutoff_hz))
    throw ValidationError("membrane.response_cutoff must be > 0");
}

double MembraneModel::time_constant_s() const {
  return 1.0 / (2.0 * kPi * response_cutoff_hz);
}

void PhasePlan::validate() const {
  if (steps.empty()) throw ValidationError("plan.steps must be non-empty");
  const std::size_t n = steps.front().size();
  if (n == 0) throw ValidationError("plan.steps rows must be non-empty");
  for (const auto& row : steps)
    if (row.size() != n)
      throw ValidationError("plan.steps rows must all cover the same chambers");
  if (!(step_fraction > 0.0))
    throw ValidationError("plan.step_fraction must be > 0");
  const double total = step_fraction * static_cast<double>(steps.size());
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("plan step fractions must sum to 1 over the period");
}

PhasePlan default_phase_plan(std::size_t n_chambers) {
  if (n_chambers == 0)
    throw ValidationError("plan requires at least one chamber");
  const std::size_t n_steps = 2 * n_chambers;
  PhasePlan plan;
  plan.step_fraction = 1.0 / static_cast<double>(n_steps);
  plan.steps.assign(n_steps, std::vector<MembraneState>(n_chambers));
  for (std::size_t k = 0; k < n_steps; ++k) {
    // Sample each chamber's offset square wave at the step midpoint; the
    // midpoint never coincides with a transition, so the table is exact.
    const double phase_mid =
        (static_cast<double>(k) + 0.5) / static_cast<double>(n_steps);
    for (std::size_t i = 0; i < n_chambers; ++i) {
      double local = phase_mid - static_cast<double>(i) /
                                     static_cast<double>(n_chambers);
      local -= std::floor(local);
      plan.steps[k][i] =
          local < 0.5 ? MembraneState::down : MembraneState::up;
    }
  }
  plan.validate();
  return plan;
}

double target_volume(double t_s, std::size_t chamber, const DriveConfig& drive,
                     const MembraneModel& membrane, const PhasePlan& plan) {
  const double stroke = membrane.stroke_at(drive.voltage_v);
  if (drive.waveform == Waveform::sine) {
    const double offset = chamber < drive.phase_offsets_rad.size()
                              ? drive.phase_offsets_rad[chamber]
                              : 0.0;
    return -0.5 * stroke *
           std::sin(2.0 * kPi * drive.frequency_hz * t_s - offset);
  }
  // Square wave: look up the plan step containing t.  Chamber offsets are
  // already baked into the step table.
  double phase = t_s * drive.frequency_hz;
  phase -= std::floor(phase);
  const std::size_t n_steps = plan.steps.size();
  std::size_t idx = static_cast<std::size_t>(phase / plan.step_fraction);
  if (idx >= n_steps) idx = n_steps - 1;
  return plan.steps[idx][chamber] == MembraneState::down ? -0.5 * stroke
                                                         : 0.5 * stroke;
}

double actual_volume_step(double v_current_m3, double v_target_m3, double dt_s,
                          const MembraneModel& membrane) {
  const double tau = membrane.time_constant_s();
  return v_target_m3 + (v_current_m3 - v_target_m3) * std::exp(-dt_s / tau);
}

}  // namespace micropump
