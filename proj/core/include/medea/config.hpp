#pragma once

// Scenario configuration: a sectioned key-value text file plus time-series
// CSV files referenced as "file.csv:column" (paths relative to the config).
// The full key reference is in docs/config.md.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "medea/domain.hpp"
#include "medea/simplex.hpp"

namespace medea {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& msg);
  std::string file;
  int line;
};

struct LoadedConfig {
  Scenario scenario;
  SolverOptions solver;
  double pv_horizon_years = 30.0;  // present-value horizon for opportunity-cost reporting
  std::filesystem::path path;
  std::vector<std::string> warnings;
};

LoadedConfig load_config(const std::filesystem::path& path);
/// `base_dir` resolves series references; `label` names the source in errors.
LoadedConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, const std::string& label);

/// Writes `<dir>/scenario.ini` and `<dir>/series.csv` such that load_config
/// reproduces every scenario field. Returns the config path.
std::filesystem::path write_config(const LoadedConfig& config, const std::filesystem::path& dir);

}  // namespace medea
