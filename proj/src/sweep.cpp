#include "micropump/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "micropump/errors.hpp"
#include "micropump/rootfind.hpp"
#include "micropump/units.hpp"

namespace micropump {

void SolverSettings::validate() const {
  if (dt_divisor < 200)
    throw ValidationError("solver.dt_divisor must be >= 200");
  if (max_cycles < 2) throw ValidationError("solver.max_cycles must be >= 2");
  if (!(cycle_tol > 0.0))
    throw ValidationError("solver.cycle_tol must be > 0");
}

void CalibrationBounds::validate() const {
  if (!(fc_min_hz > 0.0) || !(fc_max_hz > fc_min_hz))
    throw ValidationError("calibration fc bounds must satisfy 0 < min < max");
  if (!(stroke_min_m3 > 0.0) || !(stroke_max_m3 > stroke_min_m3))
    throw ValidationError(
        "calibration stroke bounds must satisfy 0 < min < max");
}

std::vector<AngleSweepRow> angle_sweep(const DiffuserGeometry& base,
                                       const std::vector<double>& angles_deg,
                                       double v_inlet_mm_s,
                                       double profile_factor) {
  if (angles_deg.empty())
    throw ValidationError("angle sweep needs at least one angle");
  if (!(v_inlet_mm_s > 0.0))
    throw ValidationError("sweep.v_inlet must be > 0");
  if (!(profile_factor >= 1.0))
    throw ValidationError("sweep.profile_factor must be >= 1");

  std::vector<AngleSweepRow> rows;
  rows.reserve(angles_deg.size());
  for (double a : angles_deg) {
    if (!(a > 0.0) || a > kMaxOpeningAngleDeg)
      throw ValidationError("sweep angles must lie in (0, 60] degrees");
    DiffuserGeometry geom = base;
    geom.opening_angle_rad = deg_to_rad(a);
    geom.validate();

    AngleSweepRow row;
    row.two_theta_deg = a;
    row.w2_mm = m_to_mm(exit_width(geom));
    row.l_over_w1 = slenderness(geom);
    row.v_inlet_mm_s = v_inlet_mm_s;
    row.v_max_mm_s = profile_factor * v_inlet_mm_s;
    // Continuity on the quasi-1D mean flow: v_out = v_in * (W1/W2).
    const double width_ratio = geom.throat_width_m / exit_width(geom);
    row.v_out_mm_s = v_inlet_mm_s * width_ratio;
    row.loss_rate = 1.0 - width_ratio;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// One pump run reduced to its flow rate; falls back to the last cycle's
// estimate when the cycle budget ran out (callers see the flag via
// frequency_sweep; the optimizers just need a finite value).
double flow_estimate_ul_min(const PumpConfig& config, const DriveConfig& drive,
                            const SolverSettings& solver, bool* converged) {
  const double dt = 1.0 / (drive.frequency_hz * solver.dt_divisor);
  const FlowRecord record =
      run_cycles(config, drive, solver.max_cycles, dt,
                 /*record_samples=*/false, solver.cycle_tol);
  if (converged) *converged = record.converged;
  return m3s_to_ul_min(record.cycles.back().net_volume_m3 *
                       record.frequency_hz);
}

}  // namespace

std::vector<FrequencySweepRow> frequency_sweep(const PumpConfig& config,
                                               const DriveConfig& drive_base,
                                               const std::vector<double>&
                                                   freqs_hz,
                                               const SolverSettings& solver) {
  if (freqs_hz.empty())
    throw ValidationError("frequency sweep needs at least one frequency");
  solver.validate();

  std::vector<FrequencySweepRow> rows;
  rows.reserve(freqs_hz.size());
  for (double f : freqs_hz) {
    if (!(f > 0.0))
      throw ValidationError("sweep frequencies must be > 0");
    DriveConfig drive = drive_base;
    drive.frequency_hz = f;
    FrequencySweepRow row;
    row.frequency_hz = f;
    try {
      row.flow_rate_ul_min =
          flow_estimate_ul_min(config, drive, solver, &row.converged);
    } catch (const NonConvergence&) {
      row.flow_rate_ul_min = 0.0;
      row.converged = false;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Continuous-argmax estimate of flow rate over frequency: coarse logarithmic
// scan of the search window, then golden-section refinement between the
// neighbours of the best coarse point.
double argmax_frequency(const PumpConfig& config, const DriveConfig& drive,
                        const SolverSettings& solver, double f_lo, double f_hi,
                        double x_tol) {
  constexpr int kCoarse = 9;
  std::array<double, kCoarse> fs{}, flows{};
  const double ratio = f_hi / f_lo;
  for (int i = 0; i < kCoarse; ++i) {
    fs[i] = f_lo * std::pow(ratio, static_cast<double>(i) / (kCoarse - 1));
    DriveConfig d = drive;
    d.frequency_hz = fs[i];
    flows[i] = flow_estimate_ul_min(config, d, solver, nullptr);
  }
  const int best = static_cast<int>(
      std::max_element(flows.begin(), flows.end()) - flows.begin());
  const double lo = fs[std::max(0, best - 1)];
  const double hi = fs[std::min(kCoarse - 1, best + 1)];
  if (lo == hi) return lo;

  auto flow_at = [&](double f) {
    DriveConfig d = drive;
    d.frequency_hz = f;
    return flow_estimate_ul_min(config, d, solver, nullptr);
  };
  return golden_section_max(flow_at, lo, hi, x_tol);
}

}  // namespace

CalibrationResult calibrate(const PumpConfig& config,
                            const DriveConfig& drive_template,
                            double target_flow_ul_min, double target_freq_hz,
                            double target_voltage_v,
                            const CalibrationBounds& bounds,
                            const SolverSettings& solver) {
  if (!(target_flow_ul_min > 0.0) || !(target_freq_hz > 0.0) ||
      !(target_voltage_v > 0.0))
    throw ValidationError("calibration targets must be positive");
  bounds.validate();
  solver.validate();

  PumpConfig work = config;
  work.membrane.voltage_ref_v = target_voltage_v;
  DriveConfig drive = drive_template;
  drive.voltage_v = target_voltage_v;
  drive.frequency_hz = target_freq_hz;

  // Frequency window the argmax is searched in; clamping at the window edge
  // still yields the right bisection signs.
  const double f_lo = target_freq_hz / 5.0;
  const double f_hi = target_freq_hz * 5.0;
  const double argmax_tol = 0.005 * target_freq_hz;

  auto peak_at_fc = [&](double fc) {
    PumpConfig c = work;
    c.membrane.response_cutoff_hz = fc;
    return argmax_frequency(c, drive, solver, f_lo, f_hi, argmax_tol);
  };

  auto flow_at_stroke = [&](double stroke) {
    PumpConfig c = work;
    c.membrane.stroke_volume_ref_m3 = stroke;
    return flow_estimate_ul_min(c, drive, solver, nullptr);
  };

  // The two fits are alternated: with resistive interior links the
  // flow-vs-frequency shape is not amplitude-invariant (link drops scale
  // linearly with flow, element drops quadratically), so a cutoff fitted at
  // the starting stroke drifts once the stroke is refitted.  The coupling is
  // mild; a few passes settle the measured peak onto the target.
  double achieved_peak_hz = 0.0;
  const double peak_settle_tol =
      std::max(2.0 * argmax_tol, 0.02 * target_freq_hz);
  for (int pass = 0; pass < 4; ++pass) {
    // Stage 1: bisection on fc at the current stroke.  The peak frequency
    // rises monotonically with fc (less lag -> later rolloff).
    double lo = bounds.fc_min_hz, hi = bounds.fc_max_hz;
    const double peak_lo = peak_at_fc(lo);
    if (peak_lo > target_freq_hz) {
      std::ostringstream msg;
      msg << "calibration cannot reach the target peak frequency: even fc = "
          << lo << " Hz places the flow maximum at " << peak_lo
          << " Hz, above the target " << target_freq_hz << " Hz";
      throw CalibrationFailed(msg.str());
    }
    const double peak_hi = peak_at_fc(hi);
    if (peak_hi < target_freq_hz) {
      std::ostringstream msg;
      msg << "calibration cannot reach the target peak frequency: even fc = "
          << hi << " Hz places the flow maximum at " << peak_hi
          << " Hz, below the target " << target_freq_hz << " Hz";
      throw CalibrationFailed(msg.str());
    }
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (peak_at_fc(mid) < target_freq_hz)
        lo = mid;
      else
        hi = mid;
    }
    work.membrane.response_cutoff_hz = 0.5 * (lo + hi);

    // Stage 2: bracketed root-find on the stroke volume.  Flow at fixed
    // frequency is monotone (nearly linear) in stroke.
    const double flow_min = flow_at_stroke(bounds.stroke_min_m3);
    const double flow_max = flow_at_stroke(bounds.stroke_max_m3);
    if (flow_min > target_flow_ul_min || flow_max < target_flow_ul_min) {
      std::ostringstream msg;
      msg << "calibration cannot reach the target flow: stroke bounds ["
          << m3_to_ul(bounds.stroke_min_m3) << ", "
          << m3_to_ul(bounds.stroke_max_m3) << "] ul deliver ["
          << flow_min << ", " << flow_max << "] ul/min around the target "
          << target_flow_ul_min << " ul/min";
      throw CalibrationFailed(msg.str());
    }
    const RootResult stroke_root = find_root_bracketed(
        [&](double s) { return flow_at_stroke(s) - target_flow_ul_min; },
        bounds.stroke_min_m3, bounds.stroke_max_m3,
        2e-4 * target_flow_ul_min, 1e-6 * bounds.stroke_max_m3);
    work.membrane.stroke_volume_ref_m3 = stroke_root.x;

    achieved_peak_hz =
        argmax_frequency(work, drive, solver, f_lo, f_hi, argmax_tol);
    if (std::abs(achieved_peak_hz - target_freq_hz) <= peak_settle_tol) break;
  }

  CalibrationResult result;
  result.stroke_volume_ref_m3 = work.membrane.stroke_volume_ref_m3;
  result.response_cutoff_hz = work.membrane.response_cutoff_hz;
  result.residual_rel =
      std::abs(flow_at_stroke(work.membrane.stroke_volume_ref_m3) -
               target_flow_ul_min) /
      target_flow_ul_min;
  result.achieved_peak_frequency_hz = achieved_peak_hz;
  DriveConfig peak_drive = drive;
  peak_drive.frequency_hz = result.achieved_peak_frequency_hz;
  result.achieved_peak_flow_ul_min =
      flow_estimate_ul_min(work, peak_drive, solver, nullptr);
  return result;
}

PumpConfig with_calibrated_membrane(PumpConfig config,
                                    const CalibrationResult& result,
                                    double target_voltage_v) {
  config.membrane.stroke_volume_ref_m3 = result.stroke_volume_ref_m3;
  config.membrane.voltage_ref_v = target_voltage_v;
  config.membrane.response_cutoff_hz = result.response_cutoff_hz;
  return config;
}

AngleOptimum optimize_angle(const PumpConfig& config, const DriveConfig& drive,
                            double angle_min_deg, double angle_max_deg,
                            double xi_base, double grid_step_deg,
                            const SolverSettings& solver) {
  if (!(angle_min_deg > 0.0) || angle_max_deg > kMaxOpeningAngleDeg ||
      angle_min_deg > angle_max_deg)
    throw ValidationError(
        "optimizer angle range must lie in (0, 60] degrees with min <= max");
  if (!(grid_step_deg > 0.0) || grid_step_deg > 2.5)
    throw ValidationError("optimizer grid step must lie in (0, 2.5] degrees");
  solver.validate();

  AngleOptimum out;
  auto flow_at_angle = [&](double angle_deg) {
    PumpConfig c = config;
    for (DiffuserElement* elem : {&c.inlet_element, &c.outlet_element}) {
      elem->geometry.opening_angle_rad = deg_to_rad(angle_deg);
      elem->losses = derive_loss_coefficients(elem->geometry, xi_base);
    }
    const double flow = flow_estimate_ul_min(c, drive, solver, nullptr);
    out.evaluations.push_back({angle_deg, flow});
    return flow;
  };

  if (angle_min_deg == angle_max_deg) {
    out.best_angle_deg = angle_min_deg;
    out.best_flow_ul_min = flow_at_angle(angle_min_deg);
    return out;
  }

  // Coarse uniform grid, then golden-section refinement between the
  // neighbours of the best grid point.
  const int n_intervals = std::max(
      1, static_cast<int>(
             std::ceil((angle_max_deg - angle_min_deg) / grid_step_deg)));
  std::vector<double> grid(n_intervals + 1), flows(n_intervals + 1);
  for (int i = 0; i <= n_intervals; ++i) {
    grid[i] = angle_min_deg + (angle_max_deg - angle_min_deg) * i /
                                  n_intervals;
    flows[i] = flow_at_angle(grid[i]);
  }
  const int best = static_cast<int>(
      std::max_element(flows.begin(), flows.end()) - flows.begin());
  const double lo = grid[std::max(0, best - 1)];
  const double hi = grid[std::min(n_intervals, best + 1)];

  const double refined = golden_section_max(
      [&](double a) { return flow_at_angle(a); }, lo, hi, 0.05);
  flow_at_angle(refined);

  // The optimum is the best point actually evaluated (the golden-section
  // midpoint can be an ulp below one of its own interior probes).
  const auto best_eval = std::max_element(
      out.evaluations.begin(), out.evaluations.end(),
      [](const AngleEvaluation& a, const AngleEvaluation& b) {
        return a.flow_rate_ul_min < b.flow_rate_ul_min;
      });
  out.best_angle_deg = best_eval->angle_deg;
  out.best_flow_ul_min = best_eval->flow_rate_ul_min;
  return out;
}

}  // namespace micropump
