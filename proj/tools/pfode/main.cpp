// pfode command-line front end.

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "pfode/pfode.hpp"

namespace {

enum Exit : int { kOk = 0, kValidation = 2, kSolver = 3, kIo = 4 };

struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  bool no_svg = false;
};

pfode::RunConfig load_with_overrides(const std::string& path, const Overrides& o) {
  pfode::RunConfig c = pfode::load_config(path);
  if (o.out_dir) c.outputs.out_dir = *o.out_dir;
  if (o.seed) c.seed = *o.seed;
  if (o.dt) c.dt = *o.dt;
  if (o.no_svg) c.outputs.svg = false;
  c.validate();
  return c;
}

// Runs `body`, mapping library exceptions to exit codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const pfode::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": "
              << e.what() << "\n";
    return kValidation;
  } catch (const pfode::ValidationError& e) {
    std::cerr << "invalid config (" << e.field() << "): " << e.what() << "\n";
    return kValidation;
  } catch (const pfode::UnknownPresetError& e) {
    std::cerr << e.what() << "\n";
    return kValidation;
  } catch (const pfode::GridError& e) {
    std::cerr << "invalid grid: " << e.what() << "\n";
    return kValidation;
  } catch (const pfode::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const pfode::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
}

int cmd_run(const std::string& path, const Overrides& o, unsigned threads) {
  const pfode::RunConfig config = load_with_overrides(path, o);
  pfode::RunnerOptions opts;
  opts.threads = threads;
  const pfode::RunManifest m = pfode::run(config, opts);
  std::size_t failed = 0;
  for (const auto& p : m.points) {
    if (p.ok) {
      std::cout << "ok    " << p.point.stem << "  max|U|=" << p.max_abs_state
                << "  diameter=" << p.diameter;
      if (p.bounds) std::cout << "  positivity=" << (p.bounds->positivity_ok ? "yes" : "no");
      std::cout << "\n";
    } else {
      ++failed;
      std::cout << "FAIL  " << p.point.stem << "  " << p.error_kind << ": " << p.error << "\n";
    }
  }
  std::cout << m.points.size() - failed << "/" << m.points.size() << " runs succeeded in "
            << std::fixed << std::setprecision(2) << m.seconds << " s; manifest "
            << m.manifest_path.string() << "\n";
  return failed == 0 ? kOk : kSolver;
}

int cmd_check(const std::string& path, const Overrides& o) {
  const pfode::RunConfig config = load_with_overrides(path, o);
  const auto plan = pfode::plan_runs(config);
  const auto grid = pfode::make_uniform_grid(config.schedule, config.dt);
  std::cout << "valid: " << plan.size() << " run(s), N=" << grid.n << " k1=" << grid.k1
            << " k2=" << grid.k2 << "\n";
  for (const auto& p : plan) std::cout << "  " << p.stem << "\n";
  return kOk;
}

int cmd_order_test() {
  bool all = true;
  for (const auto& r : pfode::order_test_suite()) {
    std::cout << (r.ok() ? "PASS  " : "FAIL  ") << std::left << std::setw(22) << r.name
              << " order=" << std::fixed << std::setprecision(3) << r.order << "  expected ["
              << r.expected_low << ", " << r.expected_high << "]\n";
    all = all && r.ok();
  }
  return all ? kOk : kSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise classical / fractional / stochastic ODE solver"};
  app.set_version_flag("--version", std::string(pfode::version()));
  app.require_subcommand(1);

  Overrides overrides;
  unsigned threads = 0;
  std::string config_path;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_option_function<std::string>(
        "--out-dir", [&](const std::string& v) { overrides.out_dir = v; }, "Output directory");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { overrides.seed = v; }, "Override the noise seed");
    sub->add_option_function<double>(
        "--dt", [&](const double& v) { overrides.dt = v; }, "Override the step size");
    sub->add_flag("--no-svg", overrides.no_svg, "Skip SVG output");
  };

  auto* run = app.add_subcommand("run", "Run a configuration and write its outputs");
  add_overrides(run);
  run->add_option("--threads", threads, "Worker threads (default: PFODE_THREADS or all cores)");

  auto* check = app.add_subcommand("check", "Validate a configuration without running it");
  add_overrides(check);

  auto* preset = app.add_subcommand("preset", "Inspect the built-in parameter sets");
  preset->require_subcommand(1);
  auto* preset_list = preset->add_subcommand("list", "List preset names");
  std::string preset_name;
  auto* preset_show = preset->add_subcommand("show", "Print one preset as JSON");
  preset_show->add_option("name", preset_name, "Preset name")->required();

  auto* order = app.add_subcommand("order-test", "Measure convergence orders on u' = -u");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }

  if (run->parsed()) return guarded([&] { return cmd_run(config_path, overrides, threads); });
  if (check->parsed()) return guarded([&] { return cmd_check(config_path, overrides); });
  if (preset_list->parsed()) {
    for (const auto& p : pfode::builtin_parameter_sets()) {
      std::cout << std::left << std::setw(18) << p.name << std::setw(8) << pfode::kernel_id(p.kernel)
                << p.run_count() << " run(s)  " << p.description << "\n";
    }
    return kOk;
  }
  if (preset_show->parsed()) {
    return guarded([&] {
      std::cout << pfode::preset_json(pfode::find_preset(preset_name));
      return static_cast<int>(kOk);
    });
  }
  if (order->parsed()) return guarded([] { return cmd_order_test(); });
  return kValidation;
}
