#pragma once

#include <string>
#include <vector>

#include "htc/random.hpp"

namespace htc {

/// Provenance record written next to every output file of the CLI
/// (<output>.manifest.json). The config echo is a JSON document.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_json = "{}";
  RngSeed seed{};
  std::string version;
  std::string started;   // UTC, ISO-8601
  std::string finished;  // UTC, ISO-8601
  std::vector<std::string> outputs;
  std::vector<std::string> divergence_flags;
};

std::string utc_timestamp();

/// Path of the manifest that accompanies `output_path`.
std::string manifest_path_for(const std::string& output_path);

/// Serializes and writes atomically.
void write_manifest(const RunManifest& manifest, const std::string& output_path);

}  // namespace htc
