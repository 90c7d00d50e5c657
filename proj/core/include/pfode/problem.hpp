#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pfode {

using State = std::vector<double>;

enum class FractionalKernel { Caputo, AtanganaBaleanu, CaputoFabrizio };

/// Short identifier used in configs and file names: "caputo", "abc", "cf".
[[nodiscard]] const char* kernel_id(FractionalKernel kernel) noexcept;
/// Human-readable name used in plot titles.
[[nodiscard]] const char* kernel_name(FractionalKernel kernel) noexcept;
/// Inverse of kernel_id; throws ValidationError.
[[nodiscard]] FractionalKernel parse_kernel(const std::string& id);

/// Time partition: classical on [0, a1], fractional on [a1, a2], stochastic on [a2, a].
struct RegimeSchedule {
  double a1 = 20.0;
  double a2 = 40.0;
  double a = 60.0;
  FractionalKernel kernel = FractionalKernel::Caputo;
  double alpha = 1.0;

  /// Checks 0 < a1 < a2 < a and alpha in (0, 1]; throws ValidationError.
  void validate() const;

  friend bool operator==(const RegimeSchedule&, const RegimeSchedule&) = default;
};

/// Node indices of the uniform grid: t_j = j dt, t_{k1} = a1, t_{k2} = a2, t_N = a.
struct Grid {
  std::size_t n = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  double dt = 0.0;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Throws GridError if a breakpoint is not a multiple of dt (1e-9 relative) or
/// any segment is shorter than three steps.
[[nodiscard]] Grid make_uniform_grid(const RegimeSchedule& schedule, double dt);

/// Right-hand side e(t, U) of U' = e(t, U).
class VectorField {
 public:
  using Rhs = std::function<void(double t, std::span<const double> u, std::span<double> du)>;
  /// Row-major dimension x dimension Jacobian d e_i / d U_j.
  using Jacobian = std::function<void(double t, std::span<const double> u, std::span<double> jac)>;

  VectorField(std::string name, std::size_t dimension, Rhs rhs, Jacobian jacobian = {},
              std::vector<std::string> component_names = {});

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  /// Names used as CSV column headers; defaults to u0, u1, ...
  [[nodiscard]] const std::vector<std::string>& component_names() const noexcept { return names_; }
  [[nodiscard]] bool has_jacobian() const noexcept { return static_cast<bool>(jacobian_); }

  void eval(double t, std::span<const double> u, std::span<double> du) const;
  [[nodiscard]] State operator()(double t, std::span<const double> u) const;
  [[nodiscard]] std::vector<double> jacobian(double t, std::span<const double> u) const;

 private:
  std::string name_;
  std::size_t dimension_;
  Rhs rhs_;
  Jacobian jacobian_;
  std::vector<std::string> names_;
};

struct NoiseSpec {
  std::vector<double> sigmas;
  std::uint64_t seed = 0;

  /// sigmas[i] >= 0 and finite; throws ValidationError.
  void validate() const;
};

struct PiecewiseProblem {
  RegimeSchedule schedule;
  VectorField field;
  NoiseSpec noise;
  State initial_state;

  /// Checks schedule, noise, and that all dimensions agree with the field.
  void validate() const;
};

/// Uniform-grid solution with per-node regime labels (1 classical, 2 fractional, 3 stochastic).
///
/// Node k1 carries label 2 and node k2 label 3: labels switch exactly at the
/// breakpoint nodes, which are shared by the adjacent segments.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t dimension, double dt, std::vector<std::string> component_names = {});

  void reserve(std::size_t nodes);
  void push(double t, std::span<const double> u, int segment);

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
  [[nodiscard]] double dt() const noexcept { return dt_; }

  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] std::span<const double> state(std::size_t node) const;
  [[nodiscard]] double value(std::size_t node, std::size_t component) const;
  [[nodiscard]] const std::vector<double>& flat_states() const noexcept { return states_; }
  [[nodiscard]] const std::vector<int>& segment_of() const noexcept { return segment_of_; }
  [[nodiscard]] const std::vector<std::string>& component_names() const noexcept { return names_; }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  void set_grid(const Grid& grid) { grid_ = grid; }
  [[nodiscard]] std::uint64_t seed_used() const noexcept { return seed_used_; }
  void set_seed_used(std::uint64_t seed) { seed_used_ = seed; }

  /// Overwrites the time stamp of an existing node (breakpoint pinning).
  void set_time(std::size_t node, double t);

  /// Largest absolute component over all nodes.
  [[nodiscard]] double max_abs_state() const;
  [[nodiscard]] bool all_finite() const;

 private:
  std::size_t dimension_ = 0;
  double dt_ = 0.0;
  std::vector<double> times_;
  std::vector<double> states_;
  std::vector<int> segment_of_;
  std::vector<std::string> names_;
  Grid grid_;
  std::uint64_t seed_used_ = 0;
};

}  // namespace pfode
