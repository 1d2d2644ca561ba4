#pragma once

#include <array>
#include <vector>

#include "micropump/actuation.hpp"
#include "micropump/geometry.hpp"
#include "micropump/network.hpp"

namespace micropump {

// Time-stepping controls shared by the experiment drivers.  dt is derived
// per run as T/dt_divisor so every frequency gets the same waveform
// resolution.
struct SolverSettings {
  int dt_divisor = 240;   // steps per drive period (>= 200)
  int max_cycles = 50;    // cycle budget before giving up on convergence
  double cycle_tol = 1e-3;

  void validate() const;
};

// --- Angle sweep (quasi-1D element study) -----------------------------------

struct AngleSweepRow {
  double two_theta_deg = 0.0;
  double w2_mm = 0.0;
  double l_over_w1 = 0.0;
  double v_inlet_mm_s = 0.0;
  double v_max_mm_s = 0.0;
  double v_out_mm_s = 0.0;
  double loss_rate = 0.0;
};

// Default ratio of peak (centerline) to mean inlet velocity for the laminar
// profile; configurable in [1.2, 1.6].
inline constexpr double kProfileFactorDefault = 1.37;

// CFD reference exit velocities (mm/s) for the canonical four-angle study at
// v_inlet = 0.35 mm/s, used only for deviation reporting; the quasi-1D model
// reproduces their rank order, not their values.
inline constexpr std::array<double, 4> kCfdReferenceAnglesDeg{5, 10, 15, 20};
inline constexpr std::array<double, 4> kCfdReferenceVoutMmS{0.261, 0.192,
                                                            0.153, 0.120};

// Evaluates the diffuser geometry over a list of opening angles (degrees,
// each in (0, 60]) with a fixed quasi-1D inlet velocity: exit width and
// slenderness from the geometry, v_out from continuity on the mean flow,
// v_max from the laminar profile factor, loss_rate = (v_in - v_out)/v_in.
std::vector<AngleSweepRow> angle_sweep(const DiffuserGeometry& base,
                                       const std::vector<double>& angles_deg,
                                       double v_inlet_mm_s,
                                       double profile_factor =
                                           kProfileFactorDefault);

// --- Frequency sweep ---------------------------------------------------------

struct FrequencySweepRow {
  double frequency_hz = 0.0;
  double flow_rate_ul_min = 0.0;
  bool converged = false;
};

// Runs the pump at each frequency with everything else fixed.  A row that
// fails to converge (cycle budget or solver failure) is recorded with
// converged = false instead of aborting the sweep.
std::vector<FrequencySweepRow> frequency_sweep(const PumpConfig& config,
                                               const DriveConfig& drive_base,
                                               const std::vector<double>&
                                                   freqs_hz,
                                               const SolverSettings& solver);

// --- Calibration -------------------------------------------------------------

struct CalibrationBounds {
  double fc_min_hz = 5.0;
  double fc_max_hz = 5000.0;
  double stroke_min_m3 = 1e-12;  // 0.001 ul
  double stroke_max_m3 = 5e-8;   // 50 ul

  void validate() const;
};

struct CalibrationResult {
  double stroke_volume_ref_m3 = 0.0;
  double response_cutoff_hz = 0.0;
  double achieved_peak_flow_ul_min = 0.0;
  double achieved_peak_frequency_hz = 0.0;
  double residual_rel = 0.0;  // |flow(target_f) - target| / target
};

// Fits the two free membrane parameters to an observed operating point in
// two alternated stages exploiting near-separability:
//   1. response cutoff fc: moves the flow-vs-frequency argmax onto
//      target_freq (bisection; the argmax grows monotonically with fc);
//   2. stroke volume at target_voltage: matches the flow at target_freq
//      (bracketed root-find; flow is monotone in stroke).
// With resistive interior links the argmax shifts weakly with stroke, so the
// pair is iterated until the measured peak settles on the target.  The fitted
// membrane has voltage_ref = target_voltage.  The drive template supplies
// waveform and phase offsets; its voltage/frequency are overridden by the
// targets.  Throws CalibrationFailed, with the bracketing evidence, when the
// bounds exclude a solution.
CalibrationResult calibrate(const PumpConfig& config,
                            const DriveConfig& drive_template,
                            double target_flow_ul_min, double target_freq_hz,
                            double target_voltage_v,
                            const CalibrationBounds& bounds,
                            const SolverSettings& solver);

// Applies a calibration result back onto a pump configuration.
PumpConfig with_calibrated_membrane(PumpConfig config,
                                    const CalibrationResult& result,
                                    double target_voltage_v);

// --- Angle optimization -------------------------------------------------------

struct AngleEvaluation {
  double angle_deg = 0.0;
  double flow_rate_ul_min = 0.0;
};

struct AngleOptimum {
  double best_angle_deg = 0.0;
  double best_flow_ul_min = 0.0;
  std::vector<AngleEvaluation> evaluations;  // in evaluation order
};

// Maximizes net flow rate over the element opening angle: a coarse grid
// (step <= grid_step_deg) followed by golden-section refinement around the
// best grid point.  Both boundary elements are rebuilt at each angle with
// loss coefficients derived from the frozen recovery model (xi_base as in
// derive_loss_coefficients).  Deterministic for fixed inputs.
AngleOptimum optimize_angle(const PumpConfig& config, const DriveConfig& drive,
                            double angle_min_deg, double angle_max_deg,
                            double xi_base, double grid_step_deg,
                            const SolverSettings& solver);

}  // namespace micropump
