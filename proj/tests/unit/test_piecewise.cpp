#include <doctest.h>

#include <cmath>
#include <cstring>

#include "pfode/errors.hpp"
#include "pfode/models.hpp"
#include "pfode/output.hpp"
#include "pfode/steppers.hpp"

using namespace pfode;

namespace {

LinearLoveParams fig1() { return find_preset("fig1-linear").members[0].model.linear; }

PiecewiseProblem make(const VectorField& f, FractionalKernel k, double alpha,
                      std::vector<double> sigmas, std::uint64_t seed = 1) {
  RegimeSchedule s;
  s.a1 = 20;
  s.a2 = 40;
  s.a = 60;
  s.kernel = k;
  s.alpha = alpha;
  return PiecewiseProblem{s, f, NoiseSpec{std::move(sigmas), seed}, State{1.0, 1.0}};
}

const FractionalKernel kKernels[] = {FractionalKernel::Caputo, FractionalKernel::AtanganaBaleanu,
                                     FractionalKernel::CaputoFabrizio};

}  // namespace

TEST_CASE("solve_piecewise: fig1 parameters stay bounded") {
  for (auto k : kKernels) {
    const auto traj = solve_piecewise(make(linear_love_field(fig1()), k, 0.79, {0.02, 0.01}), 0.01);
    CAPTURE(kernel_id(k));
    CHECK(traj.size() == 6001);
    CHECK(traj.all_finite());
    CHECK(traj.max_abs_state() < 1e3);
  }
}

TEST_CASE("solve_piecewise: grid and labels") {
  const auto traj =
      solve_piecewise(make(linear_love_field(fig1()), FractionalKernel::Caputo, 0.9, {0.02, 0.01}), 0.01);
  const Grid& g = traj.grid();
  CHECK(g.n == 6000);
  CHECK(g.k1 == 2000);
  CHECK(g.k2 == 4000);
  CHECK(traj.times().front() == 0.0);
  CHECK(traj.times()[g.k1] == 20.0);
  CHECK(traj.times()[g.k2] == 40.0);
  CHECK(traj.times().back() == 60.0);
  for (std::size_t j = 0; j < traj.size(); ++j) {
    CHECK(std::fabs(traj.times()[j] - j * 0.01) <= 1e-12 * 60.0);
    if (j > 0) CHECK(traj.times()[j] > traj.times()[j - 1]);
    const int expected = j < g.k1 ? 1 : (j < g.k2 ? 2 : 3);
    CHECK(traj.segment_of()[j] == expected);
  }
  CHECK(traj.seed_used() == 1);
}

TEST_CASE("solve_piecewise: breakpoint nodes are shared with the segment solvers") {
  const auto problem = make(linear_love_field(fig1()), FractionalKernel::AtanganaBaleanu, 0.9, {0.02, 0.01});
  const auto sol = solve_piecewise_detailed(problem, 0.01);
  const auto& traj = sol.trajectory;
  const auto first = classical_step_sequence(problem.field, problem.initial_state, 0.0, 2000, 0.01);
  const State at_a1(traj.state(2000).begin(), traj.state(2000).end());
  CHECK(at_a1 == first.back());
  const auto second = abc_step_sequence(problem.field, at_a1, 20.0, 2000, 0.01, 0.9, {},
                                        first.lead_in(), 2000);
  const State at_a2(traj.state(4000).begin(), traj.state(4000).end());
  CHECK(at_a2 == second.back());
  CHECK(sol.reports[0].steps_taken == 2000);
  CHECK(sol.reports[1].steps_taken == 2000);
  CHECK(sol.reports[2].steps_taken == 2000);
  CHECK(sol.reports[2].segment == SegmentKind::Stochastic);
}

TEST_CASE("solve_piecewise: alpha = 1 and sigma = 0 is one classical solve") {
  const auto nl = find_preset("fig3-nonlinear").members[0].model.nonlinear;
  for (const auto& field : {linear_love_field(fig1()), nonlinear_love_field(nl)}) {
    const auto single = classical_step_sequence(field, {1.0, 1.0}, 0.0, 6000, 0.01);
    for (auto k : kKernels) {
      const auto traj = solve_piecewise(make(field, k, 1.0, {0.0, 0.0}), 0.01);
      CAPTURE(kernel_id(k));
      double worst = 0.0;
      for (std::size_t j = 0; j < traj.size(); ++j) {
        for (std::size_t c = 0; c < 2; ++c) {
          const double ref = single.states[j][c];
          worst = std::max(worst, std::fabs(traj.value(j, c) - ref) / std::max(1.0, std::fabs(ref)));
        }
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("solve_piecewise: deterministic replay") {
  const auto p = make(linear_love_field(fig1()), FractionalKernel::CaputoFabrizio, 0.94, {0.02, 0.01}, 5);
  const auto a = solve_piecewise(p, 0.01);
  const auto b = solve_piecewise(p, 0.01);
  REQUIRE(a.flat_states().size() == b.flat_states().size());
  CHECK(std::memcmp(a.flat_states().data(), b.flat_states().data(),
                    a.flat_states().size() * sizeof(double)) == 0);
  CHECK(csv_string(a) == csv_string(b));
  const auto c = solve_piecewise(make(p.field, p.schedule.kernel, 0.94, {0.02, 0.01}, 6), 0.01);
  CHECK(csv_string(a) != csv_string(c));
}

TEST_CASE("solve_piecewise: noise only acts after a2") {
  const auto p1 = make(linear_love_field(fig1()), FractionalKernel::Caputo, 0.9, {0.02, 0.01}, 1);
  const auto p2 = make(linear_love_field(fig1()), FractionalKernel::Caputo, 0.9, {0.02, 0.01}, 2);
  const auto a = solve_piecewise(p1, 0.01);
  const auto b = solve_piecewise(p2, 0.01);
  for (std::size_t j = 0; j <= 4000; ++j) {
    CHECK(a.value(j, 0) == b.value(j, 0));
  }
  CHECK(a.value(4001, 0) != b.value(4001, 0));
}

TEST_CASE("solve_piecewise: blow-up carries its location") {
  LinearLoveParams p;
  p.rho1 = -1.0;
  p.rho2 = -1.0;
  auto problem = make(linear_love_field(p), FractionalKernel::Caputo, 0.9, {0.0, 0.0});
  try {
    (void)solve_piecewise(problem, 0.01);
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    CHECK(e.segment() == SegmentKind::Fractional);
    CHECK(e.step() > 2000);
    CHECK(e.step() <= 4000);
    CHECK(e.time() > 20.0);
  }
}

TEST_CASE("solve_piecewise: misaligned grid") {
  const auto problem = make(linear_love_field(fig1()), FractionalKernel::Caputo, 0.9, {0.0, 0.0});
  CHECK_THROWS_AS((void)solve_piecewise(problem, 0.07), GridError);
}
