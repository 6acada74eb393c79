#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace csf {

/// One fully defaulted experiment. For arclength experiments grid_n is the
/// number of curve points; for normalized-rate the window is in τ.
struct ExperimentConfig {
  std::string name;
  std::size_t grid_n = 256;
  double t_start = -1.0;
  double t_end = -0.1;
  std::map<std::string, double> controls;
  std::map<std::string, double> tolerances;
  std::string output_dir;
  std::uint64_t seed = 1;
};

struct ExperimentSummary {
  std::string name;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::vector<std::string> files;  // relative to the run's output root
  std::vector<std::string> failures;
};

/// Registry entry; also the defaults table.
struct ExperimentInfo {
  const char* name;
  const char* description;
  std::size_t grid_n;
  double t_start;
  double t_end;
  std::map<std::string, double> controls;
  std::map<std::string, double> tolerances;
};

auto registered_experiments() -> std::span<const ExperimentInfo>;

/// Throws UnknownExperiment.
auto default_config(const std::string& name) -> ExperimentConfig;

/// Flat `key = value` text. `[label]` opens a section per experiment and
/// keys before the first section form one more experiment when present.
/// Recognised keys: name, grid_n, t_start, t_end, output_dir, seed,
/// control.<key>, tol.<key>. `#` starts a comment.
auto parse_config(const std::string& text) -> std::vector<ExperimentConfig>;
auto parse_config_file(const std::filesystem::path& path) -> std::vector<ExperimentConfig>;

/// Throws ConfigInvalid on a broken config and UnknownExperiment on an
/// unregistered name.
void validate(const ExperimentConfig& config);

/// Runs one experiment, writing artifacts below `root / output_dir`.
auto run_experiment(const ExperimentConfig& config, const std::filesystem::path& root)
    -> ExperimentSummary;

/// Summary as JSON (name, pass, metrics, files, failures).
auto summary_json(const std::vector<ExperimentSummary>& summaries) -> std::string;

}  // namespace csf
