#include "pfode/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pfode/errors.hpp"

namespace pfode {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string csv_string(const Trajectory& traj) {
  std::string out = "t";
  for (const auto& name : traj.component_names()) {
    out += ',';
    out += name;
  }
  out += ",segment\n";
  out.reserve(out.size() + traj.size() * (traj.dimension() + 1) * 24);
  for (std::size_t j = 0; j < traj.size(); ++j) {
    out += format_double(traj.times()[j]);
    for (double v : traj.state(j)) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(traj.segment_of()[j]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

void emit_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text_file(path, csv_string(traj));
}

namespace {

constexpr std::array<const char*, 3> kSegmentColors = {"#1f77b4", "#d62728", "#2ca02c"};
constexpr std::array<const char*, 3> kSegmentNames = {"classical", "fractional", "stochastic"};
constexpr std::array<const char*, 4> kDash = {"", "6,3", "2,2", "8,3,2,3"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return {buf, res.ptr};
}

std::string tick(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  [[nodiscard]] double span() const { return hi - lo; }
  void pad() {
    if (span() == 0.0) {
      const double d = lo == 0.0 ? 1.0 : 0.05 * std::fabs(lo);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_svg(std::span<const SvgSeries> series, const SvgStyle& style) {
  Range xr, yr;
  std::size_t points = 0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.segment.size() != s.x.size()) {
      throw IndexError("render_svg: series arrays differ in length");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw DegenerateRangeError("render_svg: non-finite point");
      }
      xr.add(s.x[i]);
      yr.add(s.y[i]);
    }
    points += s.x.size();
  }
  if (points < 2) throw DegenerateRangeError("render_svg: need at least two points");
  if (xr.span() == 0.0 && yr.span() == 0.0) {
    throw DegenerateRangeError("render_svg: all points coincide");
  }
  xr.pad();
  yr.pad();

  const double left = 70, right = 150, top = 40, bottom = 50;
  const double pw = style.width - left - right;
  const double ph = style.height - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / xr.span() * pw; };
  auto py = [&](double y) { return top + ph - (y - yr.lo) / yr.span() * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width
     << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << ' '
     << style.height << "\">\n"
     << "<title>" << escape(style.title) << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << coord(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << escape(style.title) << "</text>\n";

  // Axes and ticks.
  os << "<rect x=\"" << coord(left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(pw)
     << "\" height=\"" << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + xr.span() * i / 4.0;
    const double fy = yr.lo + yr.span() * i / 4.0;
    os << "<line x1=\"" << coord(px(fx)) << "\" y1=\"" << coord(top + ph) << "\" x2=\""
       << coord(px(fx)) << "\" y2=\"" << coord(top + ph + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << coord(px(fx)) << "\" y=\"" << coord(top + ph + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(fx)
       << "</text>\n"
       << "<line x1=\"" << coord(left - 5) << "\" y1=\"" << coord(py(fy)) << "\" x2=\""
       << coord(left) << "\" y2=\"" << coord(py(fy)) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << coord(left - 8) << "\" y=\"" << coord(py(fy) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << coord(left + pw / 2) << "\" y=\"" << coord(style.height - 12.0)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << escape(style.x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << coord(top + ph / 2) << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
     << coord(top + ph / 2) << ")\">" << escape(style.y_label) << "</text>\n";

  std::array<bool, 3> present{};
  for (const auto& s : series) {
    for (int seg : s.segment) {
      if (seg >= 1 && seg <= 3) present[static_cast<std::size_t>(seg - 1)] = true;
    }
  }
  for (int seg = 1; seg <= 3; ++seg) {
    const auto si = static_cast<std::size_t>(seg - 1);
    if (!present[si]) continue;
    os << "<g class=\"segment segment-" << seg << "\" stroke=\"" << kSegmentColors[si]
       << "\" fill=\"none\" stroke-width=\"1.2\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
      const auto& s = series[k];
      std::vector<std::size_t> run;
      auto flush = [&]() {
        if (run.size() >= 2) {
          os << "<polyline";
          if (k % kDash.size() != 0) os << " stroke-dasharray=\"" << kDash[k % kDash.size()] << '"';
          os << " points=\"";
          for (std::size_t n = 0; n < run.size(); ++n) {
            if (n > 0) os << ' ';
            os << coord(px(s.x[run[n]])) << ',' << coord(py(s.y[run[n]]));
          }
          os << "\"/>\n";
        } else if (run.size() == 1) {
          os << "<circle cx=\"" << coord(px(s.x[run[0]])) << "\" cy=\"" << coord(py(s.y[run[0]]))
             << "\" r=\"1.5\" fill=\"" << kSegmentColors[si] << "\"/>\n";
        }
        run.clear();
      };
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        // A node opening a new regime also closes the previous one's curve.
        const bool in = s.segment[i] == seg || (i > 0 && s.segment[i - 1] == seg);
        if (in) {
          run.push_back(i);
        } else {
          flush();
        }
      }
      flush();
    }
    os << "</g>\n";
  }

  // Legend: regimes, then series names.
  double ly = top + 10;
  const double lx = left + pw + 15;
  for (std::size_t si = 0; si < 3; ++si) {
    if (!present[si]) continue;
    os << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 22)
       << "\" y2=\"" << coord(ly) << "\" stroke=\"" << kSegmentColors[si]
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << coord(lx + 28) << "\" y=\"" << coord(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << kSegmentNames[si] << "</text>\n";
    ly += 18;
  }
  if (series.size() > 1) {
    for (std::size_t k = 0; k < series.size(); ++k) {
      os << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 22)
         << "\" y2=\"" << coord(ly) << "\" stroke=\"black\"";
      if (k % kDash.size() != 0) os << " stroke-dasharray=\"" << kDash[k % kDash.size()] << '"';
      os << "/>\n<text x=\"" << coord(lx + 28) << "\" y=\"" << coord(ly + 4)
         << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[k].name)
         << "</text>\n";
      ly += 18;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_portrait_svg(std::span<const PortraitPoint> points, const SvgStyle& style) {
  SvgSeries s;
  s.name = "portrait";
  for (const auto& p : points) {
    s.x.push_back(p.x);
    s.y.push_back(p.y);
    s.segment.push_back(p.segment);
  }
  return render_svg(std::span<const SvgSeries>(&s, 1), style);
}

std::string render_series_svg(const Trajectory& traj, const SvgStyle& style) {
  std::vector<SvgSeries> all(traj.dimension());
  for (std::size_t c = 0; c < traj.dimension(); ++c) {
    all[c].name = traj.component_names()[c] + "(t)";
    all[c].x = traj.times();
    all[c].segment = traj.segment_of();
    all[c].y.reserve(traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) all[c].y.push_back(traj.value(j, c));
  }
  return render_svg(all, style);
}

void emit_svg(std::span<const SvgSeries> series, const SvgStyle& style,
              const std::filesystem::path& path) {
  write_text_file(path, render_svg(series, style));
}

void emit_svg(std::span<const PortraitPoint> points, const SvgStyle& style,
              const std::filesystem::path& path) {
  write_text_file(path, render_portrait_svg(points, style));
}

}  // namespace pfode
