// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fadecast/io.hpp"
#include "fadecast/version.hpp"

namespace fadecast {

// Audit record written next to every CLI artifact: the effective config, the
// seeds, and a content hash per produced file.
class run_manifest {
 public:
  explicit run_manifest(std::string command) {
    doc_["tool"] = "fadecast";
    doc_["version"] = FADECAST_VERSION;
    doc_["command"] = std::move(command);
    doc_["artifacts"] = nlohmann::ordered_json::array();
  }

  void set_config(const nlohmann::ordered_json& config) { doc_["config"] = config; }
  void set(const std::string& key, const nlohmann::ordered_json& value) { doc_[key] = value; }

  void add_artifact(const std::filesystem::path& path) {
    const auto data = io::read_file(path);
    nlohmann::ordered_json entry;
    entry["path"] = path.string();
    entry["bytes"] = data.size();
    entry["fnv1a64"] = io::hex64(io::fnv1a64(data));
    doc_["artifacts"].push_back(entry);
  }

  void set_timing(const std::string& phase, double seconds) {
    doc_["timings_s"][phase] = seconds;
  }

  void write(const std::filesystem::path& path) const { io::write_file(path, doc_.dump(2) + "\n"); }

 private:
  nlohmann::ordered_json doc_;
};

}  // namespace fadecast
