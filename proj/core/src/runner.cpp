#include "pfode/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <charconv>
#include <thread>

#include "pfode/errors.hpp"
#include "pfode/output.hpp"
#include "pfode/steppers.hpp"

#ifndef PFODE_VERSION_STRING
#define PFODE_VERSION_STRING "unknown"
#endif

namespace pfode {

using nlohmann::json;

const char* version() noexcept { return PFODE_VERSION_STRING; }

std::string file_token(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  std::string s(buf, res.ptr);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

std::vector<RunPoint> plan_runs(const RunConfig& config) {
  std::vector<PresetMember> members;
  if (config.model_is_preset) {
    members = find_preset(config.model_name).members;
  } else {
    members.push_back({"", config.inline_model, {}});
  }
  std::vector<RunPoint> out;
  for (const auto& m : members) {
    const std::vector<double>& alphas = config.alphas.empty() ? m.alphas : config.alphas;
    for (double a : alphas) {
      RunPoint p;
      p.label = m.label;
      p.model = m.model;
      p.alpha = a;
      p.stem = config.model_name + "_" + kernel_id(config.kernel) + "_a" + file_token(a) +
               "_seed" + std::to_string(config.seed);
      if (!m.label.empty()) p.stem += "_" + m.label;
      out.push_back(std::move(p));
    }
  }
  return out;
}

PiecewiseProblem make_problem(const RunConfig& config, const RunPoint& point) {
  RegimeSchedule schedule = config.schedule;
  schedule.kernel = config.kernel;
  schedule.alpha = point.alpha;
  PiecewiseProblem problem{schedule, point.model.field(), NoiseSpec{config.sigmas, config.seed},
                           config.initial_state};
  problem.validate();
  return problem;
}

bool RunManifest::all_ok() const {
  return std::all_of(points.begin(), points.end(), [](const PointOutcome& p) { return p.ok; });
}

std::vector<std::string> RunManifest::files() const {
  std::vector<std::string> out;
  for (const auto& p : points) out.insert(out.end(), p.files.begin(), p.files.end());
  out.push_back("manifest.json");
  return out;
}

unsigned resolve_threads(const RunnerOptions& options, std::size_t jobs) {
  unsigned n = options.threads;
  if (n == 0) {
    if (const char* env = std::getenv("PFODE_THREADS")) {
      unsigned v = 0;
      const char* end = env + std::char_traits<char>::length(env);
      const auto res = std::from_chars(env, end, v);
      if (res.ec == std::errc() && res.ptr == end && v > 0) n = v;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, n));
}

namespace {

std::string alpha_text(double alpha) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, alpha);
  return {buf, res.ptr};
}

PointOutcome run_point(const RunConfig& config, const RunPoint& point,
                       const std::filesystem::path& dir) {
  PointOutcome out;
  out.point = point;
  const auto start = std::chrono::steady_clock::now();
  try {
    const PiecewiseProblem problem = make_problem(config, point);
    StepperOptions opts;
    opts.cf_normalization = config.cf_normalization;
    const Trajectory traj = solve_piecewise(problem, config.dt, opts);
    out.max_abs_state = traj.max_abs_state();
    out.diameter = trajectory_diameter(traj);
    try {
      out.bounds = growth_bounds(point.model.bound_params(), traj);
    } catch (const DegenerateBoundError&) {
      out.bounds.reset();
    }
    if (config.outputs.csv) {
      const std::string name = point.stem + ".csv";
      emit_csv(traj, dir / name);
      out.files.push_back(name);
    }
    if (config.outputs.svg) {
      std::string title = config.model_name;
      if (!point.label.empty()) title += " [" + point.label + "]";
      title += ", " + std::string(kernel_name(config.kernel)) + ", alpha = " +
               alpha_text(point.alpha);
      SvgStyle series_style{title, "t", "state", 800, 560};
      const std::string series_name = point.stem + "_series.svg";
      write_text_file(dir / series_name, render_series_svg(traj, series_style));
      out.files.push_back(series_name);
      SvgStyle portrait_style{title, traj.component_names()[0], traj.component_names()[1], 700,
                              600};
      const std::string portrait_name = point.stem + "_portrait.svg";
      const auto pts = phase_portrait(traj, 0, 1);
      write_text_file(dir / portrait_name, render_portrait_svg(pts, portrait_style));
      out.files.push_back(portrait_name);
    }
    out.ok = true;
  } catch (const BlowUpError& e) {
    out.error_kind = "BlowUpError";
    out.error = e.what();
  } catch (const DegenerateRangeError& e) {
    out.error_kind = "DegenerateRangeError";
    out.error = e.what();
  } catch (const IoError& e) {
    out.error_kind = "IoError";
    out.error = e.what();
  } catch (const Error& e) {
    out.error_kind = "Error";
    out.error = e.what();
  }
  if (!out.ok) {
    // A failed point leaves nothing behind.
    for (const auto& f : out.files) {
      std::error_code ec;
      std::filesystem::remove(dir / f, ec);
    }
    out.files.clear();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

json bounds_json(const GrowthBounds& b) {
  return {{"M1", b.M1},         {"M2", b.M2},       {"c1", b.c1},
          {"c2", b.c2},         {"lip1", b.lip1},   {"lip2", b.lip2},
          {"ratio", b.ratio},   {"positivity_ok", b.positivity_ok},
          {"nodes_used", b.nodes_used}};
}

}  // namespace

std::string manifest_json(const RunManifest& m) {
  json doc;
  doc["version"] = m.version;
  doc["config"] = json::parse(m.config_json);
  doc["grid"] = {{"N", m.grid.n}, {"k1", m.grid.k1}, {"k2", m.grid.k2}, {"dt", m.grid.dt}};
  doc["seed_used"] = m.seed_used;
  doc["seconds"] = m.seconds;
  json points = json::array();
  for (const auto& p : m.points) {
    json j;
    j["stem"] = p.point.stem;
    j["label"] = p.point.label;
    j["alpha"] = p.point.alpha;
    j["ok"] = p.ok;
    j["files"] = p.files;
    j["seconds"] = p.seconds;
    if (p.ok) {
      j["max_abs_state"] = p.max_abs_state;
      j["diameter"] = p.diameter;
      j["growth_bounds"] = p.bounds ? bounds_json(*p.bounds) : json(nullptr);
    } else {
      j["error_kind"] = p.error_kind;
      j["error"] = p.error;
    }
    points.push_back(std::move(j));
  }
  doc["points"] = std::move(points);
  return doc.dump(2) + "\n";
}

RunManifest run(const RunConfig& config, const RunnerOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.version = version();
  m.config_json = serialize_config(config);
  RegimeSchedule sched = config.schedule;
  m.grid = make_uniform_grid(sched, config.dt);
  m.seed_used = config.seed;
  m.out_dir = config.outputs.out_dir;

  std::error_code ec;
  std::filesystem::create_directories(m.out_dir, ec);
  if (ec || !std::filesystem::is_directory(m.out_dir)) {
    throw IoError("cannot create output directory '" + m.out_dir.string() + "'");
  }

  const std::vector<RunPoint> plan = plan_runs(config);
  m.points.resize(plan.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < plan.size(); i = next++) {
      m.points[i] = run_point(config, plan[i], m.out_dir);
    }
  };
  const unsigned n_threads = resolve_threads(options, plan.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.manifest_path = m.out_dir / "manifest.json";
  write_text_file(m.manifest_path, manifest_json(m));
  return m;
}

}  // namespace pfode
