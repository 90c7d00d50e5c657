#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "pfode/config.hpp"
#include "pfode/errors.hpp"
#include "pfode/models.hpp"
#include "pfode/runner.hpp"

using namespace pfode;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pfode_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

RunConfig fig1_config(const fs::path& out) {
  RunConfig c = parse_config(
      R"({"model":"fig1-linear","kernel":"caputo","alpha":[0.79,0.85,0.92,0.97],)"
      R"("schedule":{"a1":20,"a2":40,"a":60},"dt":0.01,"seed":1})");
  c.outputs.out_dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("plan_runs and file tokens") {
  CHECK(file_token(0.79) == "0p79");
  CHECK(file_token(1.0) == "1");
  CHECK(file_token(-50.0) == "m50");
  const auto plan = plan_runs(fig1_config("unused"));
  REQUIRE(plan.size() == 4);
  CHECK(plan[0].stem == "fig1-linear_caputo_a0p79_seed1");
  CHECK(plan[3].alpha == 0.97);
  const auto sweep = plan_runs(parse_config(R"({"model":"fig2-sweep"})"));
  CHECK(sweep.size() == 14);
  std::set<std::string> stems;
  for (const auto& p : sweep) stems.insert(p.stem);
  CHECK(stems.size() == 14);
}

TEST_CASE("run: four alpha preset writes the expected files") {
  const fs::path dir = scratch("fig1");
  const RunManifest m = run(fig1_config(dir));
  CHECK(m.all_ok());
  CHECK(m.grid.n == 6000);
  CHECK(m.grid.k1 == 2000);
  CHECK(m.grid.k2 == 4000);
  CHECK(m.seed_used == 1);
  std::size_t csv = 0, svg = 0, manifest = 0;
  for (const auto& f : listing(dir)) {
    if (f.ends_with(".csv")) ++csv;
    if (f.ends_with(".svg")) ++svg;
    if (f == "manifest.json") ++manifest;
  }
  CHECK(csv == 4);
  CHECK(svg == 8);
  CHECK(manifest == 1);

  const auto files = m.files();
  CHECK(std::set<std::string>(files.begin(), files.end()) == listing(dir));
  CHECK(files.size() == listing(dir).size());
  for (const auto& p : m.points) {
    REQUIRE(p.bounds.has_value());
    CHECK(p.max_abs_state > 0.0);
  }
  CHECK(slurp(dir / "manifest.json").find("\"seed_used\": 1") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run: reruns are byte-identical") {
  const fs::path a = scratch("rerun_a");
  const fs::path b = scratch("rerun_b");
  RunConfig ca = fig1_config(a);
  ca.sigmas = {0.05, 0.05};
  ca.seed = 9;
  RunConfig cb = ca;
  cb.outputs.out_dir = b.string();
  const auto ma = run(ca, RunnerOptions{1});
  const auto mb = run(cb, RunnerOptions{4});
  REQUIRE(ma.points.size() == mb.points.size());
  for (const auto& f : ma.files()) {
    if (f == "manifest.json") continue;
    CAPTURE(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("run: sweep writes one portrait per point") {
  const fs::path dir = scratch("sweep");
  RunConfig c = parse_config(R"({"model":"fig2-sweep"})");
  c.outputs.out_dir = dir.string();
  const auto m = run(c);
  std::size_t portraits = 0;
  for (const auto& f : listing(dir)) portraits += f.ends_with("_portrait.svg") ? 1 : 0;
  CHECK(portraits == 14);
  CHECK(m.points.size() == 14);
  fs::remove_all(dir);
}

TEST_CASE("run: a failing sweep point leaves its siblings untouched") {
  const fs::path dir = scratch("isolation");
  RunConfig c = parse_config(R"({"model":"fig2-sweep","initial_state":[100,100]})");
  c.outputs.out_dir = dir.string();
  const auto m = run(c);
  std::size_t failed = 0;
  for (const auto& p : m.points) {
    if (!p.ok) {
      ++failed;
      CHECK(p.error_kind == "BlowUpError");
      CHECK(p.files.empty());
      CHECK_FALSE(fs::exists(dir / (p.point.stem + ".csv")));
    }
  }
  REQUIRE(failed >= 1);
  REQUIRE(failed < m.points.size());
  const auto files = m.files();
  CHECK(std::set<std::string>(files.begin(), files.end()) == listing(dir));

  // Each surviving point must match a run of that point on its own.
  for (const auto& p : m.points) {
    if (!p.ok) continue;
    CAPTURE(p.point.stem);
    RunConfig single = c;
    single.model_name = "single";
    single.model_is_preset = false;
    single.inline_model = p.point.model;
    single.alphas = {p.point.alpha};
    single.outputs.out_dir = (dir / "single").string();
    single.outputs.svg = false;
    const auto sm = run(single, RunnerOptions{1});
    REQUIRE(sm.points.size() == 1);
    CHECK(slurp(dir / (p.point.stem + ".csv")) == slurp(dir / "single" / (sm.points[0].point.stem + ".csv")));
    fs::remove_all(dir / "single");
  }
  fs::remove_all(dir);
}

TEST_CASE("resolve_threads") {
  CHECK(resolve_threads(RunnerOptions{3}, 10) == 3);
  CHECK(resolve_threads(RunnerOptions{8}, 2) == 2);
  CHECK(resolve_threads(RunnerOptions{8}, 0) == 1);
  ::setenv("PFODE_THREADS", "2", 1);
  CHECK(resolve_threads(RunnerOptions{}, 10) == 2);
  CHECK(resolve_threads(RunnerOptions{5}, 10) == 5);
  ::setenv("PFODE_THREADS", "bogus", 1);
  CHECK(resolve_threads(RunnerOptions{}, 10) >= 1);
  ::unsetenv("PFODE_THREADS");
}

TEST_CASE("run: unwritable output directory") {
  RunConfig c = fig1_config("/proc/pfode-cannot-write-here");
  CHECK_THROWS_AS((void)run(c), IoError);
}
