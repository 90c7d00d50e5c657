#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pfode/analysis.hpp"
#include "pfode/problem.hpp"

namespace pfode {

/// Shortest round-trip text is not used on purpose: every value gets exactly
/// 17 significant digits so files are diff-stable across formatters.
[[nodiscard]] std::string format_double(double v);

/// Header "t,<names...>,segment", one row per node, LF line endings.
[[nodiscard]] std::string csv_string(const Trajectory& traj);
/// Throws IoError.
void emit_csv(const Trajectory& traj, const std::filesystem::path& path);

struct SvgStyle {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  int width = 800;
  int height = 560;
};

/// One polyline per segment; all series share the axes.
struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<int> segment;  ///< 1..3 per point
};

/// Standalone SVG 1.1 document with axes, a legend and one <g class="segment ...">
/// colour group per regime present. Points on a regime switch are repeated in
/// both adjacent groups so the curve stays connected.
/// Throws DegenerateRangeError for fewer than two points or when all points coincide.
[[nodiscard]] std::string render_svg(std::span<const SvgSeries> series, const SvgStyle& style);

/// s against r, coloured by regime.
[[nodiscard]] std::string render_portrait_svg(std::span<const PortraitPoint> points,
                                              const SvgStyle& style);
/// Every component against t.
[[nodiscard]] std::string render_series_svg(const Trajectory& traj, const SvgStyle& style);

/// Writes text to path (binary mode, so LF stays LF). Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

void emit_svg(std::span<const SvgSeries> series, const SvgStyle& style,
              const std::filesystem::path& path);
void emit_svg(std::span<const PortraitPoint> points, const SvgStyle& style,
              const std::filesystem::path& path);

}  // namespace pfode
