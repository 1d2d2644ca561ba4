// pumpsim: lumped-element simulator for a valve-less peristaltic micropump.
//
// Subcommands: simulate, sweep-angle, sweep-freq, calibrate, optimize-angle.
// Exit codes: 0 success, 1 domain error (non-convergence, calibration
// failure, I/O), 2 usage or config error.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "micropump/config.hpp"
#include "micropump/csvio.hpp"
#include "micropump/errors.hpp"
#include "micropump/manifest.hpp"
#include "micropump/network.hpp"
#include "micropump/sweep.hpp"
#include "micropump/units.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;   // overrides [output] directory when non-empty
  int dt_divisor = 0;    // overrides [solver] dt_divisor when > 0
  bool quiet = false;
};

// Shared post-load plumbing: apply flag overrides and prepare the output
// directory.
micropump::RunConfig prepare(const CliOptions& opt) {
  micropump::RunConfig cfg = micropump::load_config(opt.config_path);
  if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
  if (opt.dt_divisor > 0) {
    cfg.solver.dt_divisor = opt.dt_divisor;
    cfg.solver.validate();
  }
  std::filesystem::create_directories(cfg.output_dir);
  return cfg;
}

std::string csv_path(const micropump::RunConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

void emit_manifest(const micropump::RunConfig& cfg,
                   micropump::RunManifest manifest) {
  manifest.finished_utc = micropump::utc_timestamp_now();
  micropump::write_manifest(csv_path(cfg, "manifest.ini"), manifest, cfg);
}

int run_simulate(const CliOptions& opt) {
  const micropump::RunConfig cfg = prepare(opt);
  micropump::RunManifest manifest{"simulate", micropump::utc_timestamp_now(),
                                  "", {}};

  const micropump::PumpConfig pump = micropump::build_pump_config(cfg);
  const micropump::DriveConfig drive = micropump::build_drive(cfg);
  const double dt = 1.0 / (drive.frequency_hz * cfg.solver.dt_divisor);
  const micropump::FlowRecord record =
      micropump::run_cycles(pump, drive, cfg.solver.max_cycles, dt,
                            /*record_samples=*/true, cfg.solver.cycle_tol);

  micropump::write_flow_record_csv(csv_path(cfg, "flow_record.csv"), record);
  micropump::write_cycles_csv(csv_path(cfg, "cycles.csv"), record);

  manifest.summary.emplace_back("converged", record.converged ? "1" : "0");
  manifest.summary.emplace_back("cycles_run",
                                std::to_string(record.cycles.size()));
  manifest.summary.emplace_back(
      "max_residual_rel", micropump::format_double(record.max_residual_rel));

  if (!record.converged) {
    emit_manifest(cfg, manifest);
    std::cerr << "error: run did not converge within "
              << cfg.solver.max_cycles << " cycles\n";
    return 1;
  }

  const double flow = micropump::net_flow_rate_ul_min(record);
  manifest.summary.emplace_back("net_flow_ul_min",
                                micropump::format_double(flow));
  emit_manifest(cfg, manifest);
  if (!opt.quiet)
    std::cout << "net flow rate: " << micropump::format_double(flow)
              << " ul/min (converged in " << record.cycles.size()
              << " cycles)\n";
  return 0;
}

int run_sweep_angle(const CliOptions& opt) {
  const micropump::RunConfig cfg = prepare(opt);
  micropump::RunManifest manifest{"sweep-angle", micropump::utc_timestamp_now(),
                                  "", {}};

  const auto rows = micropump::angle_sweep(cfg.geometry, cfg.sweep_angles_deg,
                                           cfg.v_inlet_mm_s,
                                           cfg.profile_factor);
  micropump::write_angle_sweep_csv(csv_path(cfg, "angle_sweep.csv"), rows);
  micropump::write_angle_deviation_csv(
      csv_path(cfg, "angle_sweep_deviation.csv"), rows);

  manifest.summary.emplace_back("rows", std::to_string(rows.size()));
  emit_manifest(cfg, manifest);
  if (!opt.quiet)
    std::cout << "angle sweep: " << rows.size() << " rows -> "
              << csv_path(cfg, "angle_sweep.csv") << "\n";
  return 0;
}

int run_sweep_freq(const CliOptions& opt) {
  const micropump::RunConfig cfg = prepare(opt);
  micropump::RunManifest manifest{"sweep-freq", micropump::utc_timestamp_now(),
                                  "", {}};

  const micropump::PumpConfig pump = micropump::build_pump_config(cfg);
  const micropump::DriveConfig drive = micropump::build_drive(cfg);
  const auto rows = micropump::frequency_sweep(
      pump, drive, micropump::sweep_frequencies(cfg), cfg.solver);
  micropump::write_frequency_sweep_csv(csv_path(cfg, "frequency_sweep.csv"),
                                       rows);

  std::size_t n_converged = 0;
  for (const auto& r : rows) n_converged += r.converged ? 1 : 0;
  manifest.summary.emplace_back("rows", std::to_string(rows.size()));
  manifest.summary.emplace_back("rows_converged",
                                std::to_string(n_converged));
  emit_manifest(cfg, manifest);
  if (!opt.quiet)
    std::cout << "frequency sweep: " << n_converged << "/" << rows.size()
              << " rows converged -> "
              << csv_path(cfg, "frequency_sweep.csv") << "\n";
  return 0;
}

int run_calibrate(const CliOptions& opt) {
  const micropump::RunConfig cfg = prepare(opt);
  micropump::RunManifest manifest{"calibrate", micropump::utc_timestamp_now(),
                                  "", {}};

  const micropump::PumpConfig pump = micropump::build_pump_config(cfg);
  const micropump::DriveConfig drive = micropump::build_drive(cfg);
  const micropump::CalibrationResult result = micropump::calibrate(
      pump, drive, cfg.target_flow_ul_min, cfg.target_frequency_hz,
      cfg.target_voltage_v, cfg.calibration_bounds, cfg.solver);
  micropump::write_calibration_csv(csv_path(cfg, "calibration.csv"), result);

  manifest.summary.emplace_back(
      "stroke_volume_ul",
      micropump::format_double(micropump::m3_to_ul(result.stroke_volume_ref_m3)));
  manifest.summary.emplace_back(
      "response_cutoff_hz",
      micropump::format_double(result.response_cutoff_hz));
  manifest.summary.emplace_back(
      "residual_rel", micropump::format_double(result.residual_rel));
  emit_manifest(cfg, manifest);
  if (!opt.quiet)
    std::cout << "calibrated: stroke "
              << micropump::format_double(
                     micropump::m3_to_ul(result.stroke_volume_ref_m3))
              << " ul at " << micropump::format_double(cfg.target_voltage_v)
              << " V, cutoff "
              << micropump::format_double(result.response_cutoff_hz)
              << " Hz, residual "
              << micropump::format_double(result.residual_rel) << "\n";
  return 0;
}

int run_optimize_angle(const CliOptions& opt) {
  const micropump::RunConfig cfg = prepare(opt);
  micropump::RunManifest manifest{"optimize-angle",
                                  micropump::utc_timestamp_now(), "", {}};

  const micropump::PumpConfig pump = micropump::build_pump_config(cfg);
  const micropump::DriveConfig drive = micropump::build_drive(cfg);
  const micropump::AngleOptimum best = micropump::optimize_angle(
      pump, drive, cfg.angle_min_deg, cfg.angle_max_deg, cfg.xi_base,
      cfg.grid_step_deg, cfg.solver);
  micropump::write_angle_evaluations_csv(csv_path(cfg, "angle_optimize.csv"),
                                         best.evaluations);

  manifest.summary.emplace_back("best_angle_deg",
                                micropump::format_double(best.best_angle_deg));
  manifest.summary.emplace_back(
      "best_flow_ul_min", micropump::format_double(best.best_flow_ul_min));
  emit_manifest(cfg, manifest);
  if (!opt.quiet)
    std::cout << "best opening angle: "
              << micropump::format_double(best.best_angle_deg) << " deg ("
              << micropump::format_double(best.best_flow_ul_min)
              << " ul/min)\n";
  return 0;
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("-c,--config", opt.config_path, "configuration file (INI)")
      ->required();
  cmd->add_option("-o,--out", opt.out_dir,
                  "output directory (overrides [output] directory)");
  cmd->add_option("--dt-divisor", opt.dt_divisor,
                  "time steps per drive period (overrides [solver])");
  cmd->add_flag("--quiet", opt.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valve-less peristaltic micropump simulator"};
  app.require_subcommand(1);

  CliOptions opt;
  int (*action)(const CliOptions&) = nullptr;

  auto* simulate =
      app.add_subcommand("simulate", "time-step the pump at one operating point");
  add_common_options(simulate, opt);
  simulate->callback([&] { action = run_simulate; });

  auto* sweep_angle = app.add_subcommand(
      "sweep-angle", "quasi-1D element study over opening angles");
  add_common_options(sweep_angle, opt);
  sweep_angle->callback([&] { action = run_sweep_angle; });

  auto* sweep_freq = app.add_subcommand(
      "sweep-freq", "flow rate over the drive-frequency grid");
  add_common_options(sweep_freq, opt);
  sweep_freq->callback([&] { action = run_sweep_freq; });

  auto* calibrate = app.add_subcommand(
      "calibrate", "fit membrane parameters to the target operating point");
  add_common_options(calibrate, opt);
  calibrate->callback([&] { action = run_calibrate; });

  auto* optimize = app.add_subcommand(
      "optimize-angle", "maximize flow rate over the opening angle");
  add_common_options(optimize, opt);
  optimize->callback([&] { action = run_optimize_angle; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    return action(opt);
  } catch (const micropump::ParseError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const micropump::ValidationError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const micropump::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
