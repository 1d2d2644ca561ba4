#pragma once

#include <string>
#include <vector>

#include "micropump/actuation.hpp"
#include "micropump/fluids.hpp"
#include "micropump/geometry.hpp"
#include "micropump/network.hpp"
#include "micropump/sweep.hpp"
#include "micropump/units.hpp"

namespace micropump {

// How the element loss coefficients are obtained: derived from the frozen
// pressure-recovery model, or given explicitly in the file.
enum class XiMode { derived, explicit_values };

// Fully resolved run configuration.  The file format is INI-style sections
// mirroring the library modules (see docs in README); values at the file
// boundary use bench units (mm, degrees, V, Hz, ul), fields here are SI
// except where the suffix says otherwise.  Loading resolves every default,
// so an echoed config reproduces the run exactly.
struct RunConfig {
  // [fluid]
  FluidProperties fluid;

  // [geometry] -- shared by both boundary elements
  DiffuserGeometry geometry{0.3e-3, 3.4e-3, deg_to_rad(10.0), 0.35e-3};

  // [chambers]
  int n_chambers = 3;
  ChamberSpec chamber;
  LinkModel link_model = LinkModel::linear_resistance;

  // [elements]
  XiMode xi_mode = XiMode::derived;
  double xi_base = kXiBaseDefault;
  double xi_diffuser = 0.0;  // explicit mode only
  double xi_nozzle = 0.0;    // explicit mode only
  bool inlet_forward = true;
  bool outlet_forward = true;

  // [membrane]
  MembraneModel membrane;

  // [drive]
  double voltage_v = 24.0;
  double frequency_hz = 50.0;
  Waveform waveform = Waveform::square;
  std::vector<double> phase_offsets_deg;  // resolved to one per chamber

  // [plan] -- rows like "DUD", one letter per chamber; resolved at load
  std::vector<std::string> plan_steps;

  // [solver]
  SolverSettings solver;

  // [boundaries]
  double inlet_pressure_pa = 0.0;
  double outlet_pressure_pa = 0.0;

  // [sweep]
  std::vector<double> sweep_angles_deg{5, 10, 15, 20, 30, 40};
  double v_inlet_mm_s = 0.35;
  double profile_factor = kProfileFactorDefault;
  double freq_start_hz = 10.0;
  double freq_stop_hz = 100.0;
  double freq_step_hz = 10.0;

  // [calibration]
  double target_flow_ul_min = 365.0;
  double target_frequency_hz = 50.0;
  double target_voltage_v = 24.0;
  CalibrationBounds calibration_bounds;

  // [optimize]
  double angle_min_deg = 5.0;
  double angle_max_deg = 40.0;
  double grid_step_deg = 2.5;

  // [output]
  std::string output_dir = "out";
};

// Loads and validates a config file.  Throws ParseError with
// "<path>:<line>:" context for malformed input (including unknown sections
// or keys) and ValidationError naming the offending field for inadmissible
// values.  A file without a single section is rejected.  The [run] section
// written by manifests is recognized and skipped, so a manifest re-loads as
// the config it echoes.
RunConfig load_config(const std::string& path);

// Same parser on an in-memory string; `origin` labels error messages.
RunConfig load_config_string(const std::string& text,
                             const std::string& origin = "<string>");

// Canonical INI echo of a resolved config: every section and key, values in
// file units.  load_config_string(echo_config(c)) echoes back the identical
// string (fixed point), which is the round-trip guarantee the manifest
// relies on.
std::string echo_config(const RunConfig& config);

// Assembles the simulation inputs from a resolved config.
PumpConfig build_pump_config(const RunConfig& config);
DriveConfig build_drive(const RunConfig& config);

// The [sweep] frequency grid: freq_start, start+step, ..., up to freq_stop
// inclusive (within rounding).
std::vector<double> sweep_frequencies(const RunConfig& config);

}  // namespace micropump
