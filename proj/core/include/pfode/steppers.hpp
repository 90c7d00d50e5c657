#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pfode/errors.hpp"
#include "pfode/mlf.hpp"
#include "pfode/problem.hpp"

namespace pfode {

struct StepperOptions {
  /// Largest admissible max-norm of a state before BlowUpError.
  double blowup_bound = 1e12;
  CfNormalization cf_normalization = CfNormalization::Unit;
};

/// Right-hand-side values at the nodes just before a segment's first node,
/// oldest first. Lets three-point stencils continue across a breakpoint
/// instead of restarting; empty means "start cold".
struct LeadIn {
  std::vector<State> rhs;
};

struct StepReport {
  SegmentKind segment = SegmentKind::Classical;
  std::size_t steps_taken = 0;
  double max_state_norm = 0.0;
};

/// Nodes of one segment, start node included (n_steps + 1 entries).
struct SegmentHistory {
  std::size_t origin_index = 0;  ///< global grid index of nodes[0]
  std::vector<double> times;
  std::vector<State> states;
  std::vector<State> rhs;
  StepReport report;

  [[nodiscard]] const State& back() const { return states.back(); }
  /// Up to the last two rhs values before the final node, ready to seed the next segment.
  [[nodiscard]] LeadIn lead_in() const;
};

struct NewtonCoeffs {
  State c0;  ///< e_{j-1}
  State c1;  ///< (e_{j-1} - e_{j-2}) / dt
  State c2;  ///< (e_j - 2 e_{j-1} + e_{j-2}) / (2 dt^2)
};

/// Quadratic Newton polynomial through (t_{j-2}, t_{j-1}, t_j) in the basis
/// 1, (t - t_{j-1}), (t - t_{j-1})(t - t_{j-2}).
[[nodiscard]] NewtonCoeffs newton_interpolant_coeffs(const State& e_jm2, const State& e_jm1,
                                                     const State& e_j, double dt);

/// Explicit three-step Adams rule (23, -16, 5)/12. Without a lead-in the first
/// two steps are taken with classical RK4.
[[nodiscard]] SegmentHistory classical_step_sequence(const VectorField& field, const State& u_start,
                                                     double t_start, std::size_t n_steps,
                                                     double dt, const StepperOptions& options = {},
                                                     const LeadIn& lead = {},
                                                     std::size_t origin_index = 0);

/// Forward Euler; reference for order measurements.
[[nodiscard]] SegmentHistory euler_step_sequence(const VectorField& field, const State& u_start,
                                                 double t_start, std::size_t n_steps, double dt,
                                                 const StepperOptions& options = {},
                                                 std::size_t origin_index = 0);

/// Caputo derivative with memory starting at t_start:
/// U^n = U^0 + h^a / Gamma(a) * sum_m [c0 A0 + c1 h A1 + c2 h^2 A2](n-1-m).
[[nodiscard]] SegmentHistory caputo_step_sequence(const VectorField& field, const State& u_start,
                                                  double t_start, std::size_t n_steps, double dt,
                                                  double alpha, const StepperOptions& options = {},
                                                  const LeadIn& lead = {},
                                                  std::size_t origin_index = 0);

/// Atangana-Baleanu-Caputo derivative. Local term (1-a)/AB(a) e(t_n, U_pred), with
/// U_pred the explicit classical step, plus the Caputo memory sum scaled by a/AB(a).
[[nodiscard]] SegmentHistory abc_step_sequence(const VectorField& field, const State& u_start,
                                               double t_start, std::size_t n_steps, double dt,
                                               double alpha, const StepperOptions& options = {},
                                               const LeadIn& lead = {},
                                               std::size_t origin_index = 0);

/// Caputo-Fabrizio derivative:
/// U^n = U^0 + (1-a)/M [e(t_n, U_pred) - e(t_0, U^0)] + a/M * (three-point quadrature of e).
[[nodiscard]] SegmentHistory cf_step_sequence(const VectorField& field, const State& u_start,
                                              double t_start, std::size_t n_steps, double dt,
                                              double alpha, const StepperOptions& options = {},
                                              const LeadIn& lead = {},
                                              std::size_t origin_index = 0);

[[nodiscard]] SegmentHistory fractional_step_sequence(FractionalKernel kernel,
                                                      const VectorField& field,
                                                      const State& u_start, double t_start,
                                                      std::size_t n_steps, double dt, double alpha,
                                                      const StepperOptions& options = {},
                                                      const LeadIn& lead = {},
                                                      std::size_t origin_index = 0);

/// Classical drift plus Ito diffusion sigma_i U_i^{n-1} dB_i. The increment
/// producing local node n uses draw index stream_base_index + n - 1 on stream i.
[[nodiscard]] SegmentHistory stochastic_step_sequence(const VectorField& field,
                                                      const NoiseSpec& noise, const State& u_start,
                                                      double t_start, std::size_t n_steps,
                                                      double dt, std::uint64_t stream_base_index,
                                                      const StepperOptions& options = {},
                                                      const LeadIn& lead = {},
                                                      std::size_t origin_index = 0);

struct PiecewiseSolution {
  Trajectory trajectory;
  std::array<StepReport, 3> reports;
};

/// Classical on [0, a1], the scheduled fractional kernel on [a1, a2] and the
/// stochastic stepper on [a2, a]. Breakpoint nodes are shared, and stencils
/// continue across them.
[[nodiscard]] PiecewiseSolution solve_piecewise_detailed(const PiecewiseProblem& problem, double dt,
                                                         const StepperOptions& options = {});
[[nodiscard]] Trajectory solve_piecewise(const PiecewiseProblem& problem, double dt,
                                         const StepperOptions& options = {});

}  // namespace pfode
