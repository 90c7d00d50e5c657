#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pfode/analysis.hpp"
#include "pfode/config.hpp"
#include "pfode/models.hpp"
#include "pfode/problem.hpp"

namespace pfode {

/// Library version string.
[[nodiscard]] const char* version() noexcept;

/// One solve of a run: a model variant at one fractional order.
struct RunPoint {
  std::string label;  ///< preset member label, may be empty
  ModelSpec model;
  double alpha = 1.0;
  /// File stem "<model>_<kernel>_a<alpha>_seed<seed>[_<label>]".
  std::string stem;
};

/// Expands the config into its solves, in a fixed order.
[[nodiscard]] std::vector<RunPoint> plan_runs(const RunConfig& config);

/// "0.92" -> "0p92", "-1" -> "m1".
[[nodiscard]] std::string file_token(double value);

[[nodiscard]] PiecewiseProblem make_problem(const RunConfig& config, const RunPoint& point);

struct PointOutcome {
  RunPoint point;
  bool ok = false;
  std::string error_kind;  ///< exception class name on failure
  std::string error;
  std::vector<std::string> files;  ///< relative to out_dir
  double seconds = 0.0;
  double max_abs_state = 0.0;
  double diameter = 0.0;  ///< diameter of the (r, s) portrait
  std::optional<GrowthBounds> bounds;
};

struct RunManifest {
  std::string config_json;  ///< canonical config echo
  Grid grid;
  std::uint64_t seed_used = 0;
  std::vector<PointOutcome> points;
  double seconds = 0.0;
  std::string version;
  std::filesystem::path out_dir;
  std::filesystem::path manifest_path;

  [[nodiscard]] bool all_ok() const;
  /// Every file the run wrote, manifest.json included.
  [[nodiscard]] std::vector<std::string> files() const;
};

struct RunnerOptions {
  /// Worker threads; 0 means PFODE_THREADS if set, else the hardware concurrency.
  unsigned threads = 0;
};

/// Worker count for `jobs` tasks under the options and PFODE_THREADS.
[[nodiscard]] unsigned resolve_threads(const RunnerOptions& options, std::size_t jobs);

/// Runs every point (in parallel), writes CSV/SVG outputs into out_dir and
/// finally manifest.json. A failing point is recorded and never affects the
/// others. Throws IoError if out_dir or the manifest cannot be written.
RunManifest run(const RunConfig& config, const RunnerOptions& options = {});

[[nodiscard]] std::string manifest_json(const RunManifest& manifest);

}  // namespace pfode
