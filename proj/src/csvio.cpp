#include "micropump/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "micropump/errors.hpp"
#include "micropump/units.hpp"

namespace micropump {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: '\n' on every platform
  if (!out) throw Error("cannot write file: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace

void write_angle_sweep_csv(const std::string& path,
                           const std::vector<AngleSweepRow>& rows) {
  auto out = open_csv(path);
  out << "two_theta_deg,W2_mm,L_over_W1,v_inlet_mm_s,v_max_mm_s,v_out_mm_s,"
         "loss_rate\n";
  for (const auto& r : rows)
    out << format_double(r.two_theta_deg) << ',' << format_double(r.w2_mm)
        << ',' << format_double(r.l_over_w1) << ','
        << format_double(r.v_inlet_mm_s) << ',' << format_double(r.v_max_mm_s)
        << ',' << format_double(r.v_out_mm_s) << ','
        << format_double(r.loss_rate) << '\n';
  finish(out, path);
}

void write_angle_deviation_csv(const std::string& path,
                               const std::vector<AngleSweepRow>& rows) {
  auto out = open_csv(path);
  out << "two_theta_deg,v_out_mm_s,v_out_reference_mm_s,relative_deviation\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < kCfdReferenceAnglesDeg.size(); ++i)
      if (std::abs(r.two_theta_deg - kCfdReferenceAnglesDeg[i]) < 1e-9) {
        const double ref = kCfdReferenceVoutMmS[i];
        out << format_double(r.two_theta_deg) << ','
            << format_double(r.v_out_mm_s) << ',' << format_double(ref) << ','
            << format_double((r.v_out_mm_s - ref) / ref) << '\n';
      }
  finish(out, path);
}

void write_frequency_sweep_csv(const std::string& path,
                               const std::vector<FrequencySweepRow>& rows) {
  auto out = open_csv(path);
  out << "frequency_hz,flow_rate_ul_min,converged\n";
  for (const auto& r : rows)
    out << format_double(r.frequency_hz) << ','
        << format_double(r.flow_rate_ul_min) << ',' << (r.converged ? 1 : 0)
        << '\n';
  finish(out, path);
}

void write_calibration_csv(const std::string& path,
                           const CalibrationResult& result) {
  auto out = open_csv(path);
  out << "parameter,value,unit\n";
  out << "stroke_volume_ref," << format_double(m3_to_ul(result.stroke_volume_ref_m3))
      << ",ul\n";
  out << "response_cutoff_fc," << format_double(result.response_cutoff_hz)
      << ",Hz\n";
  out << "achieved_peak_flow,"
      << format_double(result.achieved_peak_flow_ul_min) << ",ul_min\n";
  out << "achieved_peak_frequency,"
      << format_double(result.achieved_peak_frequency_hz) << ",Hz\n";
  out << "residual," << format_double(result.residual_rel) << ",relative\n";
  finish(out, path);
}

void write_flow_record_csv(const std::string& path, const FlowRecord& record) {
  auto out = open_csv(path);
  out << "time_s,inlet_flow_m3s,outlet_flow_m3s";
  const std::size_t n =
      record.samples.empty() ? 0 : record.samples.front().chamber_pressures_pa.size();
  for (std::size_t i = 1; i <= n; ++i) out << ",p_chamber_" << i << "_pa";
  out << '\n';
  for (const auto& s : record.samples) {
    out << format_double(s.time_s) << ',' << format_double(s.inlet_flow_m3s)
        << ',' << format_double(s.outlet_flow_m3s);
    for (double p : s.chamber_pressures_pa) out << ',' << format_double(p);
    out << '\n';
  }
  finish(out, path);
}

void write_cycles_csv(const std::string& path, const FlowRecord& record) {
  auto out = open_csv(path);
  out << "cycle_index,net_volume_m3,flow_rate_ul_min\n";
  for (const auto& c : record.cycles)
    out << c.index << ',' << format_double(c.net_volume_m3) << ','
        << format_double(
               m3s_to_ul_min(c.net_volume_m3 * record.frequency_hz))
        << '\n';
  finish(out, path);
}

void write_angle_evaluations_csv(const std::string& path,
                                 const std::vector<AngleEvaluation>& evals) {
  auto out = open_csv(path);
  out << "angle_deg,flow_rate_ul_min\n";
  for (const auto& e : evals)
    out << format_double(e.angle_deg) << ','
        << format_double(e.flow_rate_ul_min) << '\n';
  finish(out, path);
}

}  // namespace micropump
