#include "micropump/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "micropump/csvio.hpp"
#include "micropump/errors.hpp"

namespace micropump {

namespace {

// ---------------------------------------------------------------------------
// Low-level text helpers
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Error-message prefix "<origin>:<line>: ".
struct Loc {
  const std::string* origin;
  int line;

  std::string str() const {
    return *origin + ":" + std::to_string(line) + ": ";
  }
};

double parse_double(const std::string& value, const Loc& loc) {
  const std::string v = trim(value);
  if (v.empty()) throw ParseError(loc.str() + "missing numeric value");
  errno = 0;
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(out))
    throw ParseError(loc.str() + "invalid number '" + v + "'");
  return out;
}

int parse_int(const std::string& value, const Loc& loc) {
  const std::string v = trim(value);
  if (v.empty()) throw ParseError(loc.str() + "missing integer value");
  errno = 0;
  char* end = nullptr;
  const long out = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE || out > 1'000'000'000 ||
      out < -1'000'000'000)
    throw ParseError(loc.str() + "invalid integer '" + v + "'");
  return static_cast<int>(out);
}

std::vector<double> parse_double_list(const std::string& value,
                                      const Loc& loc) {
  std::vector<double> out;
  for (const std::string& item : split(value, ','))
    out.push_back(parse_double(item, loc));
  return out;
}

// ---------------------------------------------------------------------------
// Enum spellings
// ---------------------------------------------------------------------------

Waveform parse_waveform(const std::string& v, const Loc& loc) {
  if (v == "square") return Waveform::square;
  if (v == "sine") return Waveform::sine;
  throw ParseError(loc.str() + "waveform must be 'square' or 'sine', got '" +
                   v + "'");
}

LinkModel parse_link_model(const std::string& v, const Loc& loc) {
  if (v == "lossless") return LinkModel::lossless;
  if (v == "linear_resistance") return LinkModel::linear_resistance;
  throw ParseError(loc.str() +
                   "link_model must be 'lossless' or 'linear_resistance', "
                   "got '" +
                   v + "'");
}

XiMode parse_xi_mode(const std::string& v, const Loc& loc) {
  if (v == "derived") return XiMode::derived;
  if (v == "explicit") return XiMode::explicit_values;
  throw ParseError(loc.str() + "xi_mode must be 'derived' or 'explicit', got '" +
                   v + "'");
}

bool parse_orientation_forward(const std::string& v, const Loc& loc) {
  if (v == "forward") return true;
  if (v == "reversed") return false;
  throw ParseError(loc.str() +
                   "orientation must be 'forward' or 'reversed', got '" + v +
                   "'");
}

// ---------------------------------------------------------------------------
// Phase-plan text form: one row per step, e.g. "DUD", letters per chamber.
// ---------------------------------------------------------------------------

std::vector<std::string> parse_plan_steps(const std::string& value,
                                          const Loc& loc) {
  std::vector<std::string> rows;
  for (std::string item : split(value, ',')) {
    item = trim(item);
    if (item.empty())
      throw ParseError(loc.str() + "empty step in plan.steps");
    std::string row;
    for (char c : item) {
      const char u = static_cast<char>(std::toupper(c));
      if (u != 'U' && u != 'D')
        throw ParseError(loc.str() +
                         "plan steps may only contain U (up) and D (down), "
                         "got '" +
                         item + "'");
      row.push_back(u);
    }
    rows.push_back(row);
  }
  return rows;
}

PhasePlan plan_from_strings(const std::vector<std::string>& rows,
                            std::size_t n_chambers) {
  PhasePlan plan;
  plan.step_fraction = 1.0 / static_cast<double>(rows.size());
  for (const std::string& row : rows) {
    if (row.size() != n_chambers)
      throw ValidationError("plan.steps row '" + row + "' covers " +
                            std::to_string(row.size()) + " chambers, pump has " +
                            std::to_string(n_chambers));
    std::vector<MembraneState> states;
    states.reserve(row.size());
    for (char c : row)
      states.push_back(c == 'D' ? MembraneState::down : MembraneState::up);
    plan.steps.push_back(std::move(states));
  }
  plan.validate();
  return plan;
}

std::vector<std::string> strings_from_plan(const PhasePlan& plan) {
  std::vector<std::string> rows;
  rows.reserve(plan.steps.size());
  for (const auto& step : plan.steps) {
    std::string row;
    for (MembraneState s : step)
      row.push_back(s == MembraneState::down ? 'D' : 'U');
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Key dispatch
// ---------------------------------------------------------------------------

using Handler = std::function<void(RunConfig&, const std::string&, const Loc&)>;

const std::unordered_map<std::string, Handler>& handlers() {
  static const std::unordered_map<std::string, Handler> table = {
      // [fluid]
      {"fluid.density_kg_m3",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.fluid.density_kg_m3 = parse_double(v, l);
       }},
      {"fluid.viscosity_pa_s",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.fluid.dynamic_viscosity_pa_s = parse_double(v, l);
       }},
      {"fluid.gravity_m_s2",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.fluid.gravity_m_s2 = parse_double(v, l);
       }},
      // [geometry]
      {"geometry.throat_width_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.geometry.throat_width_m = mm_to_m(parse_double(v, l));
       }},
      {"geometry.length_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.geometry.length_m = mm_to_m(parse_double(v, l));
       }},
      {"geometry.opening_angle_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.geometry.opening_angle_rad = deg_to_rad(parse_double(v, l));
       }},
      {"geometry.depth_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.geometry.depth_m = mm_to_m(parse_double(v, l));
       }},
      // [chambers]
      {"chambers.count",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.n_chambers = parse_int(v, l);
       }},
      {"chambers.diameter_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.chamber.diameter_m = mm_to_m(parse_double(v, l));
       }},
      {"chambers.link_width_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.chamber.connecting_channel_width_m = mm_to_m(parse_double(v, l));
       }},
      {"chambers.link_depth_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.chamber.connecting_channel_depth_m = mm_to_m(parse_double(v, l));
       }},
      {"chambers.link_length_mm",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.chamber.connecting_channel_length_m = mm_to_m(parse_double(v, l));
       }},
      {"chambers.link_model",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.link_model = parse_link_model(v, l);
       }},
      // [elements]
      {"elements.xi_mode",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.xi_mode = parse_xi_mode(v, l);
       }},
      {"elements.xi_base",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.xi_base = parse_double(v, l);
       }},
      {"elements.xi_diffuser",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.xi_diffuser = parse_double(v, l);
       }},
      {"elements.xi_nozzle",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.xi_nozzle = parse_double(v, l);
       }},
      {"elements.inlet_orientation",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.inlet_forward = parse_orientation_forward(v, l);
       }},
      {"elements.outlet_orientation",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.outlet_forward = parse_orientation_forward(v, l);
       }},
      // [membrane]
      {"membrane.stroke_volume_ul",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.membrane.stroke_volume_ref_m3 = ul_to_m3(parse_double(v, l));
       }},
      {"membrane.voltage_ref_v",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.membrane.voltage_ref_v = parse_double(v, l);
       }},
      {"membrane.response_cutoff_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.membrane.response_cutoff_hz = parse_double(v, l);
       }},
      // [drive]
      {"drive.voltage_v",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.voltage_v = parse_double(v, l);
       }},
      {"drive.frequency_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.frequency_hz = parse_double(v, l);
       }},
      {"drive.waveform",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.waveform = parse_waveform(v, l);
       }},
      {"drive.phase_offsets_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.phase_offsets_deg = parse_double_list(v, l);
       }},
      // [plan]
      {"plan.steps",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.plan_steps = parse_plan_steps(v, l);
       }},
      // [solver]
      {"solver.dt_divisor",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.solver.dt_divisor = parse_int(v, l);
       }},
      {"solver.max_cycles",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.solver.max_cycles = parse_int(v, l);
       }},
      {"solver.cycle_tol",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.solver.cycle_tol = parse_double(v, l);
       }},
      // [boundaries]
      {"boundaries.inlet_pressure_pa",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.inlet_pressure_pa = parse_double(v, l);
       }},
      {"boundaries.outlet_pressure_pa",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.outlet_pressure_pa = parse_double(v, l);
       }},
      // [sweep]
      {"sweep.angles_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.sweep_angles_deg = parse_double_list(v, l);
       }},
      {"sweep.v_inlet_mm_s",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.v_inlet_mm_s = parse_double(v, l);
       }},
      {"sweep.profile_factor",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.profile_factor = parse_double(v, l);
       }},
      {"sweep.freq_start_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.freq_start_hz = parse_double(v, l);
       }},
      {"sweep.freq_stop_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.freq_stop_hz = parse_double(v, l);
       }},
      {"sweep.freq_step_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.freq_step_hz = parse_double(v, l);
       }},
      // [calibration]
      {"calibration.target_flow_ul_min",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.target_flow_ul_min = parse_double(v, l);
       }},
      {"calibration.target_frequency_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.target_frequency_hz = parse_double(v, l);
       }},
      {"calibration.target_voltage_v",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.target_voltage_v = parse_double(v, l);
       }},
      {"calibration.fc_min_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.calibration_bounds.fc_min_hz = parse_double(v, l);
       }},
      {"calibration.fc_max_hz",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.calibration_bounds.fc_max_hz = parse_double(v, l);
       }},
      {"calibration.stroke_min_ul",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.calibration_bounds.stroke_min_m3 = ul_to_m3(parse_double(v, l));
       }},
      {"calibration.stroke_max_ul",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.calibration_bounds.stroke_max_m3 = ul_to_m3(parse_double(v, l));
       }},
      // [optimize]
      {"optimize.angle_min_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.angle_min_deg = parse_double(v, l);
       }},
      {"optimize.angle_max_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.angle_max_deg = parse_double(v, l);
       }},
      {"optimize.grid_step_deg",
       [](RunConfig& c, const std::string& v, const Loc& l) {
         c.grid_step_deg = parse_double(v, l);
       }},
      // [output]
      {"output.directory",
       [](RunConfig& c, const std::string& v, const Loc&) {
         c.output_dir = v;
       }},
  };
  return table;
}

const std::set<std::string>& known_sections() {
  static const std::set<std::string> sections = {
      "fluid",      "geometry", "chambers", "elements", "membrane",
      "drive",      "plan",     "solver",   "boundaries", "sweep",
      "calibration", "optimize", "output",  "run"};
  return sections;
}

// ---------------------------------------------------------------------------
// Post-parse resolution and validation
// ---------------------------------------------------------------------------

void resolve_and_validate(RunConfig& cfg, const std::set<std::string>& seen) {
  if (cfg.n_chambers < 1)
    throw ValidationError("chambers.count must be >= 1");
  const auto n = static_cast<std::size_t>(cfg.n_chambers);

  // Explicit loss coefficients belong to explicit mode only.
  const bool has_explicit =
      seen.count("elements.xi_diffuser") || seen.count("elements.xi_nozzle");
  if (cfg.xi_mode == XiMode::derived && has_explicit)
    throw ValidationError(
        "elements.xi_diffuser/xi_nozzle require elements.xi_mode = explicit");
  if (cfg.xi_mode == XiMode::explicit_values &&
      !(seen.count("elements.xi_diffuser") &&
        seen.count("elements.xi_nozzle")))
    throw ValidationError(
        "elements.xi_mode = explicit needs both xi_diffuser and xi_nozzle");

  // Resolve defaults that depend on the chamber count.
  if (cfg.phase_offsets_deg.empty()) {
    for (double rad : uniform_phase_offsets(n))
      cfg.phase_offsets_deg.push_back(rad_to_deg(rad));
  }
  if (cfg.plan_steps.empty())
    cfg.plan_steps = strings_from_plan(default_phase_plan(n));

  // Frequency grid sanity.
  if (!(cfg.freq_start_hz > 0.0) || !(cfg.freq_stop_hz >= cfg.freq_start_hz))
    throw ValidationError("sweep frequency range needs 0 < start <= stop");
  if (!(cfg.freq_step_hz > 0.0))
    throw ValidationError("sweep.freq_step_hz must be > 0");
  for (double a : cfg.sweep_angles_deg)
    if (!(a > 0.0) || a > kMaxOpeningAngleDeg)
      throw ValidationError("sweep.angles_deg must lie in (0, 60] degrees");
  if (!(cfg.v_inlet_mm_s > 0.0))
    throw ValidationError("sweep.v_inlet_mm_s must be > 0");
  if (!(cfg.profile_factor >= 1.0))
    throw ValidationError("sweep.profile_factor must be >= 1");

  if (!(cfg.target_flow_ul_min > 0.0) || !(cfg.target_frequency_hz > 0.0) ||
      !(cfg.target_voltage_v > 0.0))
    throw ValidationError("calibration targets must be > 0");
  cfg.calibration_bounds.validate();

  if (!(cfg.angle_min_deg > 0.0) || cfg.angle_max_deg > kMaxOpeningAngleDeg ||
      cfg.angle_min_deg > cfg.angle_max_deg)
    throw ValidationError(
        "optimize angle range must lie in (0, 60] degrees with min <= max");
  if (!(cfg.grid_step_deg > 0.0) || cfg.grid_step_deg > 2.5)
    throw ValidationError("optimize.grid_step_deg must lie in (0, 2.5]");

  if (cfg.output_dir.empty())
    throw ValidationError("output.directory must not be empty");

  cfg.solver.validate();

  // Assemble once: exercises every remaining component invariant (fluid,
  // geometry, losses, membrane, plan shape, drive).
  const PumpConfig pump = build_pump_config(cfg);
  build_drive(cfg).validate(pump.chambers.size());
}

RunConfig parse_ini(std::istream& in, const std::string& origin) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;
  bool any_section = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const Loc loc{&origin, line_no};

    // Strip comments (anywhere in the line) and whitespace.
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string text = trim(line);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']')
        throw ParseError(loc.str() + "malformed section header '" + text + "'");
      section = trim(text.substr(1, text.size() - 2));
      if (!known_sections().count(section))
        throw ParseError(loc.str() + "unknown section [" + section + "]");
      any_section = true;
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError(loc.str() + "expected 'key = value', got '" + text +
                       "'");
    if (section.empty())
      throw ParseError(loc.str() + "key before any [section]");
    if (section == "run") continue;  // manifest bookkeeping, not config

    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    const std::string qualified = section + "." + key;

    const auto handler = handlers().find(qualified);
    if (handler == handlers().end())
      throw ParseError(loc.str() + "unknown key '" + key + "' in section [" +
                       section + "]");
    if (!seen.insert(qualified).second)
      throw ParseError(loc.str() + "duplicate key '" + qualified + "'");
    handler->second(cfg, value, loc);
  }

  if (!any_section)
    throw ParseError(origin + ": config file contains no sections");

  resolve_and_validate(cfg, seen);
  return cfg;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  return parse_ini(in, path);
}

RunConfig load_config_string(const std::string& text,
                             const std::string& origin) {
  std::istringstream in(text);
  return parse_ini(in, origin);
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  const auto join = [](const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += format_double(values[i]);
    }
    return s;
  };

  out << "[fluid]\n";
  out << "density_kg_m3 = " << format_double(c.fluid.density_kg_m3) << '\n';
  out << "viscosity_pa_s = " << format_double(c.fluid.dynamic_viscosity_pa_s)
      << '\n';
  out << "gravity_m_s2 = " << format_double(c.fluid.gravity_m_s2) << '\n';

  out << "\n[geometry]\n";
  out << "throat_width_mm = " << format_double(m_to_mm(c.geometry.throat_width_m))
      << '\n';
  out << "length_mm = " << format_double(m_to_mm(c.geometry.length_m)) << '\n';
  out << "opening_angle_deg = "
      << format_double(rad_to_deg(c.geometry.opening_angle_rad)) << '\n';
  out << "depth_mm = " << format_double(m_to_mm(c.geometry.depth_m)) << '\n';

  out << "\n[chambers]\n";
  out << "count = " << c.n_chambers << '\n';
  out << "diameter_mm = " << format_double(m_to_mm(c.chamber.diameter_m))
      << '\n';
  out << "link_width_mm = "
      << format_double(m_to_mm(c.chamber.connecting_channel_width_m)) << '\n';
  out << "link_depth_mm = "
      << format_double(m_to_mm(c.chamber.connecting_channel_depth_m)) << '\n';
  out << "link_length_mm = "
      << format_double(m_to_mm(c.chamber.connecting_channel_length_m)) << '\n';
  out << "link_model = "
      << (c.link_model == LinkModel::lossless ? "lossless"
                                              : "linear_resistance")
      << '\n';

  out << "\n[elements]\n";
  out << "xi_mode = "
      << (c.xi_mode == XiMode::derived ? "derived" : "explicit") << '\n';
  out << "xi_base = " << format_double(c.xi_base) << '\n';
  if (c.xi_mode == XiMode::explicit_values) {
    out << "xi_diffuser = " << format_double(c.xi_diffuser) << '\n';
    out << "xi_nozzle = " << format_double(c.xi_nozzle) << '\n';
  }
  out << "inlet_orientation = " << (c.inlet_forward ? "forward" : "reversed")
      << '\n';
  out << "outlet_orientation = " << (c.outlet_forward ? "forward" : "reversed")
      << '\n';

  out << "\n[membrane]\n";
  out << "stroke_volume_ul = "
      << format_double(m3_to_ul(c.membrane.stroke_volume_ref_m3)) << '\n';
  out << "voltage_ref_v = " << format_double(c.membrane.voltage_ref_v) << '\n';
  out << "response_cutoff_hz = "
      << format_double(c.membrane.response_cutoff_hz) << '\n';

  out << "\n[drive]\n";
  out << "voltage_v = " << format_double(c.voltage_v) << '\n';
  out << "frequency_hz = " << format_double(c.frequency_hz) << '\n';
  out << "waveform = " << (c.waveform == Waveform::square ? "square" : "sine")
      << '\n';
  out << "phase_offsets_deg = " << join(c.phase_offsets_deg) << '\n';

  out << "\n[plan]\n";
  out << "steps = ";
  for (std::size_t i = 0; i < c.plan_steps.size(); ++i) {
    if (i) out << ",";
    out << c.plan_steps[i];
  }
  out << '\n';

  out << "\n[solver]\n";
  out << "dt_divisor = " << c.solver.dt_divisor << '\n';
  out << "max_cycles = " << c.solver.max_cycles << '\n';
  out << "cycle_tol = " << format_double(c.solver.cycle_tol) << '\n';

  out << "\n[boundaries]\n";
  out << "inlet_pressure_pa = " << format_double(c.inlet_pressure_pa) << '\n';
  out << "outlet_pressure_pa = " << format_double(c.outlet_pressure_pa)
      << '\n';

  out << "\n[sweep]\n";
  out << "angles_deg = " << join(c.sweep_angles_deg) << '\n';
  out << "v_inlet_mm_s = " << format_double(c.v_inlet_mm_s) << '\n';
  out << "profile_factor = " << format_double(c.profile_factor) << '\n';
  out << "freq_start_hz = " << format_double(c.freq_start_hz) << '\n';
  out << "freq_stop_hz = " << format_double(c.freq_stop_hz) << '\n';
  out << "freq_step_hz = " << format_double(c.freq_step_hz) << '\n';

  out << "\n[calibration]\n";
  out << "target_flow_ul_min = " << format_double(c.target_flow_ul_min)
      << '\n';
  out << "target_frequency_hz = " << format_double(c.target_frequency_hz)
      << '\n';
  out << "target_voltage_v = " << format_double(c.target_voltage_v) << '\n';
  out << "fc_min_hz = " << format_double(c.calibration_bounds.fc_min_hz)
      << '\n';
  out << "fc_max_hz = " << format_double(c.calibration_bounds.fc_max_hz)
      << '\n';
  out << "stroke_min_ul = "
      << format_double(m3_to_ul(c.calibration_bounds.stroke_min_m3)) << '\n';
  out << "stroke_max_ul = "
      << format_double(m3_to_ul(c.calibration_bounds.stroke_max_m3)) << '\n';

  out << "\n[optimize]\n";
  out << "angle_min_deg = " << format_double(c.angle_min_deg) << '\n';
  out << "angle_max_deg = " << format_double(c.angle_max_deg) << '\n';
  out << "grid_step_deg = " << format_double(c.grid_step_deg) << '\n';

  out << "\n[output]\n";
  out << "directory = " << c.output_dir << '\n';
  return out.str();
}

PumpConfig build_pump_config(const RunConfig& c) {
  PumpConfig pump;
  pump.fluid = c.fluid;

  DiffuserGeometry geom = c.geometry;
  geom.validate();
  LossCoefficients losses;
  if (c.xi_mode == XiMode::derived) {
    losses = derive_loss_coefficients(geom, c.xi_base);
  } else {
    losses.xi_diffuser = c.xi_diffuser;
    losses.xi_nozzle = c.xi_nozzle;
    losses.validate();
  }
  pump.inlet_element = {geom, losses,
                        c.inlet_forward ? Orientation::inlet_to_outlet
                                        : Orientation::outlet_to_inlet};
  pump.outlet_element = {geom, losses,
                         c.outlet_forward ? Orientation::inlet_to_outlet
                                          : Orientation::outlet_to_inlet};

  pump.chambers.assign(static_cast<std::size_t>(c.n_chambers), c.chamber);
  pump.interior_link_model = c.link_model;
  pump.membrane = c.membrane;
  pump.plan = plan_from_strings(c.plan_steps,
                                static_cast<std::size_t>(c.n_chambers));
  pump.inlet_pressure_pa = c.inlet_pressure_pa;
  pump.outlet_pressure_pa = c.outlet_pressure_pa;
  pump.validate();
  return pump;
}

DriveConfig build_drive(const RunConfig& c) {
  DriveConfig drive;
  drive.voltage_v = c.voltage_v;
  drive.frequency_hz = c.frequency_hz;
  drive.waveform = c.waveform;
  drive.phase_offsets_rad.clear();
  for (double deg : c.phase_offsets_deg)
    drive.phase_offsets_rad.push_back(deg_to_rad(deg));
  drive.validate(static_cast<std::size_t>(c.n_chambers));
  return drive;
}

std::vector<double> sweep_frequencies(const RunConfig& c) {
  std::vector<double> freqs;
  const int count = static_cast<int>(
      std::floor((c.freq_stop_hz - c.freq_start_hz) / c.freq_step_hz + 1e-9));
  for (int i = 0; i <= count; ++i)
    freqs.push_back(c.freq_start_hz + i * c.freq_step_hz);
  return freqs;
}

}  // namespace micropump
