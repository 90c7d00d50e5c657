#include "pfode/steppers.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "pfode/random.hpp"

namespace pfode {

LeadIn SegmentHistory::lead_in() const {
  LeadIn lead;
  const std::size_t n = rhs.size();
  if (n >= 3) lead.rhs.push_back(rhs[n - 3]);
  if (n >= 2) lead.rhs.push_back(rhs[n - 2]);
  return lead;
}

NewtonCoeffs newton_interpolant_coeffs(const State& e_jm2, const State& e_jm1, const State& e_j,
                                       double dt) {
  if (!(dt > 0.0)) {
    throw DomainError("newton_interpolant_coeffs: dt must be positive");
  }
  if (e_jm2.size() != e_jm1.size() || e_j.size() != e_jm1.size()) {
    throw IndexError("newton_interpolant_coeffs: length mismatch");
  }
  NewtonCoeffs c{e_jm1, State(e_j.size()), State(e_j.size())};
  for (std::size_t i = 0; i < e_j.size(); ++i) {
    c.c1[i] = (e_jm1[i] - e_jm2[i]) / dt;
    c.c2[i] = (e_j[i] - 2.0 * e_jm1[i] + e_jm2[i]) / (2.0 * dt * dt);
  }
  return c;
}

namespace {

double max_norm(const State& u) {
  double m = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) return v;
    m = std::max(m, std::fabs(v));
  }
  return m;
}

// Records nodes and enforces the blow-up bound.
class Recorder {
 public:
  Recorder(SegmentKind kind, std::size_t origin, std::size_t n_steps, const StepperOptions& options)
      : bound_(options.blowup_bound) {
    hist_.origin_index = origin;
    hist_.report.segment = kind;
    hist_.times.reserve(n_steps + 1);
    hist_.states.reserve(n_steps + 1);
    hist_.rhs.reserve(n_steps + 1);
  }

  void push(const VectorField& field, double t, const State& u) {
    const double norm = max_norm(u);
    if (!std::isfinite(norm) || norm > bound_) {
      throw BlowUpError(hist_.report.segment, hist_.origin_index + hist_.states.size(), t,
                        std::fabs(norm));
    }
    hist_.report.max_state_norm = std::max(hist_.report.max_state_norm, norm);
    hist_.times.push_back(t);
    hist_.states.push_back(u);
    hist_.rhs.push_back(field(t, u));
    if (hist_.states.size() > 1) ++hist_.report.steps_taken;
  }

  [[nodiscard]] const std::vector<State>& rhs() const { return hist_.rhs; }
  [[nodiscard]] const State& state(std::size_t n) const { return hist_.states[n]; }
  SegmentHistory take() { return std::move(hist_); }

 private:
  double bound_;
  SegmentHistory hist_;
};

// rhs values indexed from -lead.size() up to the newest local node.
class RhsView {
 public:
  RhsView(const LeadIn& lead, const std::vector<State>& local) : lead_(lead.rhs), local_(local) {}

  [[nodiscard]] bool has(std::ptrdiff_t i) const {
    return i >= -static_cast<std::ptrdiff_t>(lead_.size()) &&
           i < static_cast<std::ptrdiff_t>(local_.size());
  }
  [[nodiscard]] const State& at(std::ptrdiff_t i) const {
    return i >= 0 ? local_[static_cast<std::size_t>(i)]
                  : lead_[lead_.size() - static_cast<std::size_t>(-i)];
  }

 private:
  const std::vector<State>& lead_;
  const std::vector<State>& local_;
};

void check_common(const VectorField& field, const State& u_start, std::size_t n_steps, double dt) {
  if (u_start.size() != field.dimension()) {
    throw ValidationError("initial_state", "length does not match field dimension");
  }
  if (n_steps < 3) {
    throw GridError("a segment needs at least 3 steps");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw GridError("dt must be positive and finite");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
}

void check_lead(const LeadIn& lead, std::size_t dimension) {
  for (const State& e : lead.rhs) {
    if (e.size() != dimension) {
      throw ValidationError("lead_in", "rhs length does not match field dimension");
    }
  }
}

// U^{n+1} - U^n for the explicit three-step rule, or RK4 while the stencil
// history is too short. `e_n` is rhs(t_n, u_n).
void classical_increment(const VectorField& field, const RhsView& rhs, std::ptrdiff_t n,
                         double t_n, const State& u_n, double dt, State& inc) {
  const std::size_t k = u_n.size();
  inc.resize(k);
  const State& e0 = rhs.at(n);
  if (rhs.has(n - 2)) {
    const State& e1 = rhs.at(n - 1);
    const State& e2 = rhs.at(n - 2);
    for (std::size_t i = 0; i < k; ++i) {
      inc[i] = dt / 12.0 * (23.0 * e0[i] - 16.0 * e1[i] + 5.0 * e2[i]);
    }
    return;
  }
  State tmp(k);
  for (std::size_t i = 0; i < k; ++i) tmp[i] = u_n[i] + 0.5 * dt * e0[i];
  const State k2 = field(t_n + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < k; ++i) tmp[i] = u_n[i] + 0.5 * dt * k2[i];
  const State k3 = field(t_n + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < k; ++i) tmp[i] = u_n[i] + dt * k3[i];
  const State k4 = field(t_n + dt, tmp);
  for (std::size_t i = 0; i < k; ++i) {
    inc[i] = dt / 6.0 * (e0[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

// Integration weights of the fractional memory sum at lag d = n-1-m:
// A_k(d) = int_d^{d+1} s^(alpha-1) q_k(s) ds with q_0 = 1, q_1 = d+2-s,
// q_2 = (d+2-s)(d+3-s). Closed forms for small d; for large d the closed
// forms cancel badly, so a Gauss rule is used on the smooth integrand.
struct MemoryWeights {
  std::vector<double> a0, a1, a2;
};

double power_gap(double d, double p) {
  // (d+1)^p - d^p without cancellation.
  if (d == 0.0) return 1.0;
  return std::pow(d, p) * std::expm1(p * std::log1p(1.0 / d));
}

MemoryWeights memory_weights(double alpha, std::size_t count) {
  constexpr double kClosedFormLimit = 32.0;
  MemoryWeights w;
  w.a0.resize(count);
  w.a1.resize(count);
  w.a2.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double d = static_cast<double>(j);
    const double i0 = power_gap(d, alpha) / alpha;
    w.a0[j] = i0;
    if (d < kClosedFormLimit) {
      const double i1 = power_gap(d, alpha + 1.0) / (alpha + 1.0);
      const double i2 = power_gap(d, alpha + 2.0) / (alpha + 2.0);
      w.a1[j] = (d + 2.0) * i0 - i1;
      w.a2[j] = (d + 2.0) * (d + 3.0) * i0 - (2.0 * d + 5.0) * i1 + i2;
    } else {
      using boost::math::quadrature::gauss;
      auto kern = [&](double v) { return std::pow(d + v, alpha - 1.0); };
      w.a1[j] = gauss<double, 10>::integrate([&](double v) { return kern(v) * (2.0 - v); }, 0.0, 1.0);
      w.a2[j] = gauss<double, 10>::integrate(
          [&](double v) { return kern(v) * (2.0 - v) * (3.0 - v); }, 0.0, 1.0);
    }
  }
  return w;
}

// Newton coefficients per memory node, scaled so they multiply the weights directly.
class MemorySum {
 public:
  MemorySum(double alpha, std::size_t n_steps, std::size_t dimension)
      : weights_(memory_weights(alpha, n_steps)), k_(dimension) {
    coeffs_.reserve(3 * n_steps * k_);
  }

  // Appends the stencil for node m (requires rhs at m, m-1, m-2 where available).
  void add_node(const RhsView& rhs, std::ptrdiff_t m) {
    const State& em = rhs.at(m);
    for (std::size_t i = 0; i < k_; ++i) {
      double c0 = em[i];
      double c1h = 0.0;
      double c2h2 = 0.0;
      if (rhs.has(m - 2)) {
        const State& e1 = rhs.at(m - 1);
        const State& e2 = rhs.at(m - 2);
        c0 = e1[i];
        c1h = e1[i] - e2[i];
        c2h2 = 0.5 * (em[i] - 2.0 * e1[i] + e2[i]);
      } else if (rhs.has(m - 1)) {
        // Only two points: the linear interpolant, written in the same basis.
        const State& e1 = rhs.at(m - 1);
        c0 = e1[i];
        c1h = em[i] - e1[i];
      }
      coeffs_.push_back(c0);
      coeffs_.push_back(c1h);
      coeffs_.push_back(c2h2);
    }
    ++count_;
  }

  // sum over stored nodes m of the weighted stencil, for target node n = count_.
  void evaluate(State& out) const {
    out.assign(k_, 0.0);
    const std::size_t n = count_;
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t d = n - 1 - m;
      const double w0 = weights_.a0[d];
      const double w1 = weights_.a1[d];
      const double w2 = weights_.a2[d];
      const double* c = coeffs_.data() + 3 * m * k_;
      for (std::size_t i = 0; i < k_; ++i) {
        out[i] += c[3 * i] * w0 + c[3 * i + 1] * w1 + c[3 * i + 2] * w2;
      }
    }
  }

 private:
  MemoryWeights weights_;
  std::size_t k_;
  std::vector<double> coeffs_;
  std::size_t count_ = 0;
};

enum class MemoryKernel { Caputo, Abc };

SegmentHistory power_law_sequence(MemoryKernel kind, const VectorField& field, const State& u_start,
                                  double t_start, std::size_t n_steps, double dt, double alpha,
                                  const StepperOptions& options, const LeadIn& lead,
                                  std::size_t origin_index) {
  check_common(field, u_start, n_steps, dt);
  check_alpha(alpha);
  check_lead(lead, field.dimension());
  const std::size_t k = field.dimension();

  const double ab = kind == MemoryKernel::Abc ? ab_normalization(alpha) : 1.0;
  const double local = kind == MemoryKernel::Abc ? (1.0 - alpha) / ab : 0.0;
  const double memory = (kind == MemoryKernel::Abc ? alpha / ab : 1.0) *
                        std::pow(dt, alpha) / gamma_fn(alpha);

  Recorder rec(SegmentKind::Fractional, origin_index, n_steps, options);
  rec.push(field, t_start, u_start);
  MemorySum sum(alpha, n_steps, k);
  State s, u(k), inc, pred(k);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const RhsView rhs(lead, rec.rhs());
    const auto prev = static_cast<std::ptrdiff_t>(n - 1);
    sum.add_node(rhs, prev);
    sum.evaluate(s);
    const double t_n = t_start + static_cast<double>(n) * dt;
    for (std::size_t i = 0; i < k; ++i) u[i] = u_start[i] + memory * s[i];
    if (local != 0.0) {
      const double t_prev = t_start + static_cast<double>(n - 1) * dt;
      const State& u_prev = rec.state(n - 1);
      classical_increment(field, rhs, prev, t_prev, u_prev, dt, inc);
      for (std::size_t i = 0; i < k; ++i) pred[i] = u_prev[i] + inc[i];
      const State e_pred = field(t_n, pred);
      for (std::size_t i = 0; i < k; ++i) u[i] += local * e_pred[i];
    }
    rec.push(field, t_n, u);
  }
  return rec.take();
}

}  // namespace

SegmentHistory classical_step_sequence(const VectorField& field, const State& u_start,
                                       double t_start, std::size_t n_steps, double dt,
                                       const StepperOptions& options, const LeadIn& lead,
                                       std::size_t origin_index) {
  check_common(field, u_start, n_steps, dt);
  check_lead(lead, field.dimension());
  const std::size_t k = field.dimension();
  Recorder rec(SegmentKind::Classical, origin_index, n_steps, options);
  rec.push(field, t_start, u_start);
  State u = u_start, inc;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double t_prev = t_start + static_cast<double>(n - 1) * dt;
    classical_increment(field, RhsView(lead, rec.rhs()), static_cast<std::ptrdiff_t>(n - 1),
                        t_prev, u, dt, inc);
    for (std::size_t i = 0; i < k; ++i) u[i] = u[i] + inc[i];
    rec.push(field, t_start + static_cast<double>(n) * dt, u);
  }
  return rec.take();
}

SegmentHistory euler_step_sequence(const VectorField& field, const State& u_start, double t_start,
                                   std::size_t n_steps, double dt, const StepperOptions& options,
                                   std::size_t origin_index) {
  check_common(field, u_start, n_steps, dt);
  const std::size_t k = field.dimension();
  Recorder rec(SegmentKind::Classical, origin_index, n_steps, options);
  rec.push(field, t_start, u_start);
  State u = u_start;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const State& e = rec.rhs().back();
    for (std::size_t i = 0; i < k; ++i) u[i] += dt * e[i];
    rec.push(field, t_start + static_cast<double>(n) * dt, u);
  }
  return rec.take();
}

SegmentHistory caputo_step_sequence(const VectorField& field, const State& u_start,
                                    double t_start, std::size_t n_steps, double dt, double alpha,
                                    const StepperOptions& options, const LeadIn& lead,
                                    std::size_t origin_index) {
  return power_law_sequence(MemoryKernel::Caputo, field, u_start, t_start, n_steps, dt, alpha,
                            options, lead, origin_index);
}

SegmentHistory abc_step_sequence(const VectorField& field, const State& u_start, double t_start,
                                 std::size_t n_steps, double dt, double alpha,
                                 const StepperOptions& options, const LeadIn& lead,
                                 std::size_t origin_index) {
  return power_law_sequence(MemoryKernel::Abc, field, u_start, t_start, n_steps, dt, alpha,
                            options, lead, origin_index);
}

SegmentHistory cf_step_sequence(const VectorField& field, const State& u_start, double t_start,
                                std::size_t n_steps, double dt, double alpha,
                                const StepperOptions& options, const LeadIn& lead,
                                std::size_t origin_index) {
  check_common(field, u_start, n_steps, dt);
  check_alpha(alpha);
  check_lead(lead, field.dimension());
  const std::size_t k = field.dimension();
  const double m_alpha = cf_normalization(alpha, options.cf_normalization);
  const double local = (1.0 - alpha) / m_alpha;
  const double memory = alpha / m_alpha;

  Recorder rec(SegmentKind::Fractional, origin_index, n_steps, options);
  rec.push(field, t_start, u_start);
  const State e_start = rec.rhs().front();
  // Running value of U^0 + (alpha/M) * int_{t_0}^{t_n} e.
  State integral = u_start, u(k), inc, pred(k);
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const RhsView rhs(lead, rec.rhs());
    const double t_prev = t_start + static_cast<double>(n - 1) * dt;
    const double t_n = t_start + static_cast<double>(n) * dt;
    const State& u_prev = rec.state(n - 1);
    classical_increment(field, rhs, static_cast<std::ptrdiff_t>(n - 1), t_prev, u_prev, dt, inc);
    for (std::size_t i = 0; i < k; ++i) integral[i] = integral[i] + memory * inc[i];
    u = integral;
    if (local != 0.0) {
      for (std::size_t i = 0; i < k; ++i) pred[i] = u_prev[i] + inc[i];
      const State e_pred = field(t_n, pred);
      for (std::size_t i = 0; i < k; ++i) u[i] += local * (e_pred[i] - e_start[i]);
    }
    rec.push(field, t_n, u);
  }
  return rec.take();
}

SegmentHistory fractional_step_sequence(FractionalKernel kernel, const VectorField& field,
                                        const State& u_start, double t_start, std::size_t n_steps,
                                        double dt, double alpha, const StepperOptions& options,
                                        const LeadIn& lead, std::size_t origin_index) {
  switch (kernel) {
    case FractionalKernel::Caputo:
      return caputo_step_sequence(field, u_start, t_start, n_steps, dt, alpha, options, lead,
                                  origin_index);
    case FractionalKernel::AtanganaBaleanu:
      return abc_step_sequence(field, u_start, t_start, n_steps, dt, alpha, options, lead,
                               origin_index);
    case FractionalKernel::CaputoFabrizio:
      return cf_step_sequence(field, u_start, t_start, n_steps, dt, alpha, options, lead,
                              origin_index);
  }
  throw ValidationError("kernel", "unknown fractional kernel");
}

SegmentHistory stochastic_step_sequence(const VectorField& field, const NoiseSpec& noise,
                                        const State& u_start, double t_start, std::size_t n_steps,
                                        double dt, std::uint64_t stream_base_index,
                                        const StepperOptions& options, const LeadIn& lead,
                                        std::size_t origin_index) {
  check_common(field, u_start, n_steps, dt);
  check_lead(lead, field.dimension());
  noise.validate();
  const std::size_t k = field.dimension();
  if (noise.sigmas.size() != k) {
    throw ValidationError("sigmas", "length does not match field dimension");
  }
  Recorder rec(SegmentKind::Stochastic, origin_index, n_steps, options);
  rec.push(field, t_start, u_start);
  State u = u_start, inc;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double t_prev = t_start + static_cast<double>(n - 1) * dt;
    const State& u_prev = rec.state(n - 1);
    classical_increment(field, RhsView(lead, rec.rhs()), static_cast<std::ptrdiff_t>(n - 1),
                        t_prev, u_prev, dt, inc);
    for (std::size_t i = 0; i < k; ++i) {
      u[i] = u_prev[i] + inc[i];
      if (noise.sigmas[i] != 0.0) {
        const GaussianStream stream{noise.seed, i};
        u[i] += noise.sigmas[i] * u_prev[i] *
                gaussian_increment(stream, stream_base_index + n - 1, dt);
      }
    }
    rec.push(field, t_start + static_cast<double>(n) * dt, u);
  }
  return rec.take();
}

PiecewiseSolution solve_piecewise_detailed(const PiecewiseProblem& problem, double dt,
                                           const StepperOptions& options) {
  problem.validate();
  const Grid grid = make_uniform_grid(problem.schedule, dt);
  const RegimeSchedule& sch = problem.schedule;

  const SegmentHistory first =
      classical_step_sequence(problem.field, problem.initial_state, 0.0, grid.k1, dt, options, {}, 0);
  const SegmentHistory second =
      fractional_step_sequence(sch.kernel, problem.field, first.back(), sch.a1, grid.k2 - grid.k1,
                               dt, sch.alpha, options, first.lead_in(), grid.k1);
  const SegmentHistory third =
      stochastic_step_sequence(problem.field, problem.noise, second.back(), sch.a2,
                               grid.n - grid.k2, dt, grid.k2, options, second.lead_in(), grid.k2);

  PiecewiseSolution out;
  Trajectory& traj = out.trajectory;
  traj = Trajectory(problem.field.dimension(), dt, problem.field.component_names());
  traj.reserve(grid.n + 1);
  // A breakpoint node closes one segment and opens the next; it is stored
  // once, labeled with the segment it opens.
  auto append = [&](const SegmentHistory& seg, int label, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = seg.origin_index + i;
      traj.push(static_cast<double>(j) * dt, seg.states[i], label);
    }
  };
  append(first, 1, first.states.size() - 1);
  append(second, 2, second.states.size() - 1);
  append(third, 3, third.states.size());
  traj.set_time(grid.k1, sch.a1);
  traj.set_time(grid.k2, sch.a2);
  traj.set_time(grid.n, sch.a);
  traj.set_grid(grid);
  traj.set_seed_used(problem.noise.seed);
  out.reports = {first.report, second.report, third.report};
  return out;
}

Trajectory solve_piecewise(const PiecewiseProblem& problem, double dt,
                           const StepperOptions& options) {
  return solve_piecewise_detailed(problem, dt, options).trajectory;
}

}  // namespace pfode
