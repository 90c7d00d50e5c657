#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "pfode/errors.hpp"
#include "pfode/problem.hpp"
#include "pfode/random.hpp"

using namespace pfode;

namespace {

RegimeSchedule schedule(double a1, double a2, double a) {
  RegimeSchedule s;
  s.a1 = a1;
  s.a2 = a2;
  s.a = a;
  return s;
}

}  // namespace

TEST_CASE("make_uniform_grid") {
  const Grid g = make_uniform_grid(schedule(10, 20, 30), 0.01);
  CHECK(g.n == 3000);
  CHECK(g.k1 == 1000);
  CHECK(g.k2 == 2000);

  CHECK_THROWS_AS((void)make_uniform_grid(schedule(1, 2, 3), 0.4), GridError);

  const Grid m = make_uniform_grid(schedule(0.03, 0.06, 0.09), 0.01);
  CHECK(m.k1 == 3);
  CHECK(m.k2 == 6);
  CHECK(m.n == 9);

  CHECK_THROWS_AS((void)make_uniform_grid(schedule(0.02, 0.06, 0.09), 0.01), GridError);
  CHECK_THROWS_AS((void)make_uniform_grid(schedule(0.03, 0.05, 0.09), 0.01), GridError);
  CHECK_THROWS_AS((void)make_uniform_grid(schedule(0.03, 0.06, 0.08), 0.01), GridError);
  CHECK_THROWS_AS((void)make_uniform_grid(schedule(1, 2, 3), 0.0), GridError);
  CHECK_THROWS_AS((void)make_uniform_grid(schedule(1, 2, 3), -0.1), GridError);
}

TEST_CASE("RegimeSchedule::validate") {
  CHECK_NOTHROW(schedule(1, 2, 3).validate());
  CHECK_THROWS_AS(schedule(0, 2, 3).validate(), ValidationError);
  CHECK_THROWS_AS(schedule(2, 2, 3).validate(), ValidationError);
  CHECK_THROWS_AS(schedule(1, 3, 3).validate(), ValidationError);
  RegimeSchedule s = schedule(1, 2, 3);
  s.alpha = 0.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s.alpha = 1.0001;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("kernel ids round-trip") {
  for (auto k : {FractionalKernel::Caputo, FractionalKernel::AtanganaBaleanu,
                 FractionalKernel::CaputoFabrizio}) {
    CHECK(parse_kernel(kernel_id(k)) == k);
  }
  CHECK_THROWS_AS((void)parse_kernel("riemann"), ValidationError);
}

TEST_CASE("gaussian_increment golden values") {
  CHECK(gaussian_increment({42, 0}, 0, 1.0) == -0.97251808346989466);
  CHECK(gaussian_increment({42, 1}, 0, 1.0) == -0.87149176931265748);
  CHECK(gaussian_increment({42, 0}, 1, 1.0) == 2.3914811323171299);
  CHECK(gaussian_increment({42, 0}, 0, 0.25) == 0.5 * -0.97251808346989466);
}

TEST_CASE("gaussian_increment is a pure function of (seed, stream, index)") {
  const GaussianStream s{123, 4};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CHECK(gaussian_increment(s, i, 0.1) == gaussian_increment(s, i, 0.1));
  }
  CHECK(gaussian_increment({1, 0}, 5, 1.0) != gaussian_increment({2, 0}, 5, 1.0));
  CHECK_THROWS_AS((void)gaussian_increment(s, 0, 0.0), DomainError);
}

TEST_CASE("gaussian_increment moments over 1e6 draws") {
  const GaussianStream s{2024, 0};
  const double dt = 0.25;
  const std::size_t n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = gaussian_increment(s, i, dt);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) <= 0.002);
  CHECK(std::fabs(var - 0.25) <= 0.002);
}

TEST_CASE("streams 0 and 1 are uncorrelated") {
  const std::size_t n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = standard_normal({9, 0}, i);
    const double y = standard_normal({9, 1}, i);
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double r = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  CHECK(std::fabs(r) <= 0.01);
}

TEST_CASE("uniform_open stays inside (0, 1)") {
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = uniform_open({0, 0}, i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("VectorField basics") {
  VectorField f("shift", 2, [](double t, std::span<const double> u, std::span<double> du) {
    du[0] = u[1] + t;
    du[1] = -u[0];
  });
  CHECK(f.dimension() == 2);
  CHECK(f.component_names() == std::vector<std::string>{"u0", "u1"});
  CHECK_FALSE(f.has_jacobian());
  const State d = f(1.0, State{2.0, 3.0});
  CHECK(d[0] == 4.0);
  CHECK(d[1] == -2.0);
  CHECK_THROWS_AS((void)f.jacobian(0.0, State{0.0, 0.0}), Error);
  CHECK_THROWS_AS(VectorField("bad", 0, [](double, std::span<const double>, std::span<double>) {}),
                  ValidationError);
}

TEST_CASE("Trajectory storage") {
  Trajectory t(2, 0.5, {"r", "s"});
  t.push(0.0, State{1.0, 2.0}, 1);
  t.push(0.5, State{-3.0, 4.0}, 2);
  CHECK(t.size() == 2);
  CHECK(t.value(1, 0) == -3.0);
  CHECK(t.max_abs_state() == 4.0);
  CHECK(t.all_finite());
  CHECK(t.segment_of() == std::vector<int>{1, 2});
  CHECK_THROWS_AS((void)t.state(2), IndexError);
  CHECK_THROWS_AS((void)t.value(0, 2), IndexError);
  CHECK_THROWS_AS(t.push(1.0, State{1.0}, 3), IndexError);
}

TEST_CASE("PiecewiseProblem::validate") {
  VectorField f("z", 2, [](double, std::span<const double>, std::span<double> du) {
    du[0] = du[1] = 0.0;
  });
  PiecewiseProblem p{schedule(1, 2, 3), f, NoiseSpec{{0.1, 0.1}, 0}, State{1.0, 1.0}};
  CHECK_NOTHROW(p.validate());
  p.initial_state = {1.0};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.initial_state = {1.0, 1.0};
  p.noise.sigmas = {0.1, -0.1};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.noise.sigmas = {0.1};
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
