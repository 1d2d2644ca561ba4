#pragma once

#include <string>
#include <utility>
#include <vector>

#include "micropump/config.hpp"

namespace micropump {

inline constexpr const char* kToolVersion = "1.0.0";

// Reproducibility record written next to every run's CSVs.  The file is the
// INI config echo plus a [run] section (version, command, timestamps,
// convergence summary), so it re-loads through load_config as the exact
// configuration that produced the outputs.
struct RunManifest {
  std::string command;     // the CLI invocation, e.g. "simulate"
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::pair<std::string, std::string>> summary;  // key, value
};

// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp_now();

// Writes manifest + config echo to `path`.  Throws Error on I/O failure.
void write_manifest(const std::string& path, const RunManifest& manifest,
                    const RunConfig& config);

}  // namespace micropump
