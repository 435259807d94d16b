#include "htc/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "file_util.hpp"
#include "htc/errors.hpp"
#include "htc/version.hpp"

namespace htc {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_path_for(const std::string& output_path) {
  return output_path + ".manifest.json";
}

void write_manifest(const RunManifest& manifest, const std::string& output_path) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["argv"] = manifest.argv;
  try {
    j["config"] = nlohmann::json::parse(manifest.config_json);
  } catch (const nlohmann::json::parse_error&) {
    throw FormatError("manifest config echo is not valid JSON");
  }
  j["seed"] = {{"seed", manifest.seed.seed}, {"stream", manifest.seed.stream}};
  j["version"] = manifest.version.empty() ? std::string("htc ") + kVersion
                                          : manifest.version;
  j["started"] = manifest.started;
  j["finished"] = manifest.finished;
  j["outputs"] = manifest.outputs;
  j["divergence_flags"] = manifest.divergence_flags;
  detail::write_file_atomic(manifest_path_for(output_path), j.dump(2) + "\n");
}

}  // namespace htc
