#include "pfode/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "pfode/errors.hpp"
#include "pfode/steppers.hpp"

namespace pfode {

GrowthBounds growth_bounds(const NonlinearLoveParams& p, const Trajectory& traj) {
  if (traj.empty()) {
    throw EmptyTrajectoryError("growth_bounds: empty trajectory");
  }
  if (traj.dimension() != 2) {
    throw IndexError("growth_bounds: the love models have two components");
  }
  GrowthBounds b;
  const Grid& grid = traj.grid();
  b.nodes_used = grid.n > 0 ? std::min(grid.k2 + 1, traj.size()) : traj.size();
  for (std::size_t j = 0; j < b.nodes_used; ++j) {
    const double r2 = traj.value(j, 0) * traj.value(j, 0);
    const double s2 = traj.value(j, 1) * traj.value(j, 1);
    b.sup_r2 = std::max(b.sup_r2, r2);
    b.sup_s2 = std::max(b.sup_s2, s2);
    b.sup_r4 = std::max(b.sup_r4, r2 * r2);
    b.sup_s4 = std::max(b.sup_s4, s2 * s2);
  }
  const double w1 = p.omega1 * p.omega1;
  const double w2 = p.omega2 * p.omega2;
  const double e2 = p.epsilon * p.epsilon;
  b.M1 = w1 * b.sup_s2 + e2 * w1 * b.sup_s4 + p.psi1 * p.psi1;
  b.M2 = w2 * b.sup_r2 + e2 * w2 * b.sup_r4 + p.psi2 * p.psi2;
  b.c1 = 4.0 * b.M1;
  b.c2 = 4.0 * b.M2;
  std::tie(b.lip1, b.lip2) = lipschitz_constants(p);
  if (!(b.M1 > 0.0) || !(b.M2 > 0.0)) {
    throw DegenerateBoundError("growth_bounds: M1 or M2 vanishes, ratio undefined");
  }
  b.ratio = std::max(b.lip1 / b.M1, b.lip2 / b.M2);
  b.positivity_ok = b.ratio < 1.0;
  return b;
}

GrowthBounds growth_bounds(const LinearLoveParams& params, const Trajectory& traj) {
  return growth_bounds(as_nonlinear(params), traj);
}

std::pair<double, double> lipschitz_constants(const NonlinearLoveParams& p) {
  return {p.rho1 * p.rho1, p.rho2 * p.rho2};
}

std::pair<double, double> lipschitz_constants(const LinearLoveParams& p) {
  return {p.rho1 * p.rho1, p.rho2 * p.rho2};
}

std::vector<PortraitPoint> phase_portrait(const Trajectory& traj, std::size_t x_component,
                                          std::size_t y_component) {
  if (x_component >= traj.dimension() || y_component >= traj.dimension()) {
    throw IndexError("phase_portrait: component index out of range");
  }
  std::vector<PortraitPoint> pts;
  pts.reserve(traj.size());
  for (std::size_t j = 0; j < traj.size(); ++j) {
    pts.push_back({traj.value(j, x_component), traj.value(j, y_component), traj.segment_of()[j]});
  }
  return pts;
}

namespace {

double cross(const PortraitPoint& o, const PortraitPoint& a, const PortraitPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain.
std::vector<PortraitPoint> convex_hull(std::vector<PortraitPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const PortraitPoint& a, const PortraitPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const PortraitPoint& a, const PortraitPoint& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<PortraitPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double point_set_diameter(std::span<const PortraitPoint> points) {
  const auto hull = convex_hull({points.begin(), points.end()});
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      best = std::max(best, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
    }
  }
  return best;
}

double trajectory_diameter(const Trajectory& traj, std::size_t x_component,
                           std::size_t y_component) {
  const auto pts = phase_portrait(traj, x_component, y_component);
  return point_set_diameter(pts);
}

namespace {

double max_abs_diff(const State& a, const State& b) {
  if (a.size() != b.size()) {
    throw IndexError("empirical_order: state length mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const State& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

void check_dts(const std::array<double, 3>& dts) {
  for (double dt : dts) {
    if (!(dt > 0.0)) throw DomainError("empirical_order: step sizes must be positive");
  }
  if (!(dts[0] > dts[1] && dts[1] > dts[2])) {
    throw DomainError("empirical_order: step sizes must be decreasing");
  }
}

constexpr double kFloor = 100.0 * std::numeric_limits<double>::epsilon();

}  // namespace

double empirical_order(const FinalStateSolver& solve, const State& exact,
                       std::array<double, 3> dts) {
  check_dts(dts);
  const double floor = kFloor * std::max(1.0, max_abs(exact));
  std::array<double, 3> x{}, y{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double err = max_abs_diff(solve(dts[i]), exact);
    if (!(err > floor)) {
      throw DegenerateError("empirical_order: error at round-off level, order indeterminate");
    }
    x[i] = std::log2(dts[i]);
    y[i] = std::log2(err);
  }
  const double mx = (x[0] + x[1] + x[2]) / 3.0;
  const double my = (y[0] + y[1] + y[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double empirical_order(const FinalStateSolver& solve, std::array<double, 3> dts) {
  check_dts(dts);
  const State u0 = solve(dts[0]);
  const State u1 = solve(dts[1]);
  const State u2 = solve(dts[2]);
  const double floor = kFloor * std::max(1.0, max_abs(u2));
  const double d01 = max_abs_diff(u0, u1);
  const double d12 = max_abs_diff(u1, u2);
  if (!(d01 > floor) || !(d12 > floor)) {
    throw DegenerateError("empirical_order: differences at round-off level, order indeterminate");
  }
  return std::log2(d01 / d12) / std::log2(dts[0] / dts[1]);
}

std::vector<OrderResult> order_test_suite() {
  const VectorField decay("decay", 1, [](double, std::span<const double> u, std::span<double> du) {
    du[0] = -u[0];
  });
  const State exact{std::exp(-1.0)};
  const std::array<double, 3> dts{4e-3, 2e-3, 1e-3};
  auto steps = [](double dt) { return static_cast<std::size_t>(std::llround(1.0 / dt)); };

  std::vector<OrderResult> out;
  out.push_back({"classical three-step", empirical_order(
                                             [&](double dt) {
                                               return classical_step_sequence(decay, {1.0}, 0.0,
                                                                              steps(dt), dt)
                                                   .back();
                                             },
                                             exact, dts),
                 2.7, 3.3});
  out.push_back({"forward Euler", empirical_order(
                                      [&](double dt) {
                                        return euler_step_sequence(decay, {1.0}, 0.0, steps(dt), dt)
                                            .back();
                                      },
                                      exact, dts),
                 0.8, 1.2});
  return out;
}

}  // namespace pfode
