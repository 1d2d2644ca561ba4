#include "micropump/manifest.hpp"

#include <ctime>
#include <fstream>

#include "micropump/errors.hpp"

namespace micropump {

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& manifest,
                    const RunConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);

  out << "[run]\n";
  out << "tool_version = " << kToolVersion << '\n';
  out << "command = " << manifest.command << '\n';
  out << "started_utc = " << manifest.started_utc << '\n';
  out << "finished_utc = " << manifest.finished_utc << '\n';
  for (const auto& [key, value] : manifest.summary)
    out << key << " = " << value << '\n';
  out << '\n';
  out << echo_config(config);

  out.flush();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace micropump
