#pragma once

// Batch pipelines behind the command-line front end.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexlab/develop.hpp"

namespace vortexlab {

enum class RunMode { Eq1, WangK3, HarmonicK2 };

const char* to_string(RunMode m);

struct RunTolerances {
  double newton = 1e-10;
  double continuation = 1e-6;
  double subunity = 1e-6;
  double plateau = 1e-3;
  double no_gap_delta = 0.5;
  double identity = 1e-6;
  double develop_window = 0.0;  // half-width; 0 means R/2
};

struct RunConfig {
  std::vector<Complex> p;
  std::vector<Complex> q;
  int k = 0;
  double R = 0.0;
  int n = 0;
  RunMode mode = RunMode::Eq1;
  std::vector<std::string> pipeline;
  std::filesystem::path output_dir;
  RunTolerances tol;
  std::vector<double> rays;

  /// Throws ConfigError on a missing or invalid field.
  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Parses a config file; relative output_dir is resolved against the
/// current directory.
RunConfig load_config(const std::filesystem::path& path);

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNonConvergence = 3,
  kExitInvariant = 4,
};

/// Executes the pipeline stages in order and writes the artifacts into
/// output_dir. Returns the process exit code.
int run(const RunConfig& cfg);

struct CompareResult {
  double max_difference = 0.0;
  double witness_x = 0.0;
  double witness_y = 0.0;
  double region_half_width = 0.0;
  long shared_nodes = 0;
  nlohmann::json to_json() const;
};

/// Solves both configurations and compares their primary fields (the
/// complete solution when the pipeline has one, else the incomplete one)
/// over shared nodes of the smaller domain's inner square.
CompareResult compare(const RunConfig& a, const RunConfig& b);

}  // namespace vortexlab
