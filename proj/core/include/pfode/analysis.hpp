#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfode/models.hpp"
#include "pfode/problem.hpp"

namespace pfode {

/// Growth and Lipschitz constants of the love fields along a trajectory, and
/// the sufficient positivity condition max(rho1^2/M1, rho2^2/M2) < 1.
struct GrowthBounds {
  double M1 = 0.0, M2 = 0.0;
  double c1 = 0.0, c2 = 0.0;      ///< 4 M1, 4 M2
  double lip1 = 0.0, lip2 = 0.0;  ///< rho1^2, rho2^2
  double ratio = 0.0;
  bool positivity_ok = false;
  double sup_r2 = 0.0, sup_r4 = 0.0, sup_s2 = 0.0, sup_s4 = 0.0;
  std::size_t nodes_used = 0;  ///< sups are taken over nodes [0, nodes_used)
};

/// M1 = w1^2 |s^2| + eps^2 w1^2 |s^4| + psi1^2 and M2 symmetrically in r, with
/// sup norms over the nodes of [0, a2] (all nodes if the trajectory carries no grid).
/// Throws EmptyTrajectoryError, IndexError (dimension != 2), DegenerateBoundError (M = 0).
[[nodiscard]] GrowthBounds growth_bounds(const NonlinearLoveParams& params, const Trajectory& traj);
[[nodiscard]] GrowthBounds growth_bounds(const LinearLoveParams& params, const Trajectory& traj);

[[nodiscard]] std::pair<double, double> lipschitz_constants(const NonlinearLoveParams& params);
[[nodiscard]] std::pair<double, double> lipschitz_constants(const LinearLoveParams& params);

struct PortraitPoint {
  double x = 0.0;
  double y = 0.0;
  int segment = 0;
};

/// (state_x, state_y) at every node, in order, with segment labels. Throws IndexError.
[[nodiscard]] std::vector<PortraitPoint> phase_portrait(const Trajectory& traj,
                                                        std::size_t x_component,
                                                        std::size_t y_component);

/// Largest distance between two points of the set (0 for fewer than two points).
[[nodiscard]] double point_set_diameter(std::span<const PortraitPoint> points);

/// Diameter of the (r, s) projection of the trajectory.
[[nodiscard]] double trajectory_diameter(const Trajectory& traj, std::size_t x_component = 0,
                                         std::size_t y_component = 1);

/// Final-time state as a function of the step size.
using FinalStateSolver = std::function<State(double dt)>;

/// Least-squares slope of log2(error) against log2(dt) over dts = (4h, 2h, h),
/// errors measured in max-norm at the final time against `exact`.
/// Throws DegenerateError when an error is below 100 machine epsilons (scaled by |exact|).
[[nodiscard]] double empirical_order(const FinalStateSolver& solve, const State& exact,
                                     std::array<double, 3> dts);

/// Reference-free Richardson estimate log2(|U(4h) - U(2h)| / |U(2h) - U(h)|).
[[nodiscard]] double empirical_order(const FinalStateSolver& solve, std::array<double, 3> dts);

struct OrderResult {
  std::string name;
  double order = 0.0;
  double expected_low = 0.0;
  double expected_high = 0.0;
  [[nodiscard]] bool ok() const { return order >= expected_low && order <= expected_high; }
};

/// u' = -u on [0, 1] with dt in {4e-3, 2e-3, 1e-3}: the three-step classical rule and
/// forward Euler.
[[nodiscard]] std::vector<OrderResult> order_test_suite();

}  // namespace pfode
