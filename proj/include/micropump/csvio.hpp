#pragma once

#include <string>
#include <vector>

#include "micropump/network.hpp"
#include "micropump/sweep.hpp"

namespace micropump {

// Shortest-double text: printf "%.12g".  All numeric output funnels through
// this one formatter so identical values always serialize identically
// (byte-determinism of the CSVs).
std::string format_double(double value);

// Each writer emits a header row plus one data row per record, '.' decimal
// separator, '\n' line endings.  Throws Error when the file cannot be
// written.

// columns: two_theta_deg,W2_mm,L_over_W1,v_inlet_mm_s,v_max_mm_s,v_out_mm_s,loss_rate
void write_angle_sweep_csv(const std::string& path,
                           const std::vector<AngleSweepRow>& rows);

// Deviation report against the CFD reference velocities, for the rows whose
// angle matches a reference angle.
// columns: two_theta_deg,v_out_mm_s,v_out_reference_mm_s,relative_deviation
void write_angle_deviation_csv(const std::string& path,
                               const std::vector<AngleSweepRow>& rows);

// columns: frequency_hz,flow_rate_ul_min,converged (1/0)
void write_frequency_sweep_csv(const std::string& path,
                               const std::vector<FrequencySweepRow>& rows);

// columns: parameter,value,unit -- one row per fitted/achieved quantity
void write_calibration_csv(const std::string& path,
                           const CalibrationResult& result);

// columns: time_s,inlet_flow_m3s,outlet_flow_m3s,p_chamber_1_pa,...
void write_flow_record_csv(const std::string& path, const FlowRecord& record);

// columns: cycle_index,net_volume_m3,flow_rate_ul_min
void write_cycles_csv(const std::string& path, const FlowRecord& record);

// columns: angle_deg,flow_rate_ul_min -- optimizer evaluations in order
void write_angle_evaluations_csv(const std::string& path,
                                 const std::vector<AngleEvaluation>& evals);

}  // namespace micropump
