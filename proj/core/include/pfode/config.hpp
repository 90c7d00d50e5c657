#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pfode/mlf.hpp"
#include "pfode/models.hpp"
#include "pfode/problem.hpp"

namespace pfode {

struct OutputOptions {
  bool csv = true;
  bool svg = true;
  std::string out_dir = "out";

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

/// A validated run description. Fields left to the preset are kept empty so
/// that serialization reproduces the input.
struct RunConfig {
  /// Preset name, or the name given to an inline model ("custom" by default).
  std::string model_name;
  bool model_is_preset = true;
  ModelSpec inline_model;  ///< meaningful only when !model_is_preset

  FractionalKernel kernel = FractionalKernel::Caputo;
  /// Explicit fractional orders; empty means "the preset's own".
  std::vector<double> alphas;
  RegimeSchedule schedule;  ///< a1, a2, a (kernel/alpha members unused)
  double dt = 0.01;
  std::uint64_t seed = 0;
  std::vector<double> sigmas;
  State initial_state;
  CfNormalization cf_normalization = CfNormalization::Unit;
  OutputOptions outputs;

  /// Re-checks every invariant after programmatic edits; throws ValidationError.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates JSON text. Throws ParseError (with 1-based line and
/// column) for malformed JSON and ValidationError for schema violations.
[[nodiscard]] RunConfig parse_config(std::string_view json_text);

/// Reads the file and parses it; throws IoError if it cannot be read.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form; parse_config(serialize_config(c)) == c.
[[nodiscard]] std::string serialize_config(const RunConfig& config);

/// JSON description of a preset (members, alphas, sigmas, schedule).
[[nodiscard]] std::string preset_json(const Preset& preset);

[[nodiscard]] const char* cf_normalization_id(CfNormalization kind) noexcept;

}  // namespace pfode
