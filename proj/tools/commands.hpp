// CLI command implementations on top of the C API.
#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "experiment_config.hpp"

namespace relaxssp::cli {

// A library call failed; `status` carries the rssp_status code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct OutputTarget {
  std::filesystem::path dir;
  std::string stem;
  std::filesystem::path file(const std::string& ext) const { return dir / (stem + "." + ext); }
};

// `--out` is a directory, or a file whose extension is dropped to form the stem.
OutputTarget resolve_output(const ExperimentConfig& cfg);

struct CommandResult {
  nlohmann::json report;  // the JSON document, whether or not it was written
  std::vector<std::filesystem::path> files;
};

// Runs cfg.command, prints human-readable tables to `console` and writes files.
CommandResult execute(const ExperimentConfig& cfg, std::ostream& console);

}  // namespace relaxssp::cli
