#pragma once

#include <string>
#include <vector>

#include "pfode/problem.hpp"

namespace pfode {

/// r' = -rho1 r + omega1 s + gamma1 psi2,  s' = -rho2 s + omega2 r + gamma2 psi1.
struct LinearLoveParams {
  double rho1 = 0.0, rho2 = 0.0;
  double omega1 = 0.0, omega2 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double psi1 = 0.0, psi2 = 0.0;

  void validate() const;
  friend bool operator==(const LinearLoveParams&, const LinearLoveParams&) = default;
};

/// r' = -rho1 r + omega1 s (1 - eps s^2) + psi1,  s' = -rho2 s + omega2 r (1 - eps r^2) + psi2.
struct NonlinearLoveParams {
  double rho1 = 0.0, rho2 = 0.0;
  double omega1 = 0.0, omega2 = 0.0;
  double psi1 = 0.0, psi2 = 0.0;
  double epsilon = 0.0;

  void validate() const;
  friend bool operator==(const NonlinearLoveParams&, const NonlinearLoveParams&) = default;
};

[[nodiscard]] VectorField linear_love_field(const LinearLoveParams& p);
[[nodiscard]] VectorField nonlinear_love_field(const NonlinearLoveParams& p);

/// The nonlinear parameter set with the same field: eps = 0, psi1 <- gamma1 psi2,
/// psi2 <- gamma2 psi1.
[[nodiscard]] NonlinearLoveParams as_nonlinear(const LinearLoveParams& p);

/// Either love model, with its parameters.
struct ModelSpec {
  enum class Type { Linear, Nonlinear };

  Type type = Type::Linear;
  LinearLoveParams linear;
  NonlinearLoveParams nonlinear;

  [[nodiscard]] static ModelSpec make(const LinearLoveParams& p);
  [[nodiscard]] static ModelSpec make(const NonlinearLoveParams& p);

  [[nodiscard]] VectorField field() const;
  /// Parameters in the nonlinear form (the linear model maps through as_nonlinear).
  [[nodiscard]] NonlinearLoveParams bound_params() const;
  void validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

[[nodiscard]] const char* model_type_id(ModelSpec::Type type) noexcept;

/// One model variant of a preset, run at each of its alphas.
struct PresetMember {
  std::string label;  ///< file-name suffix; empty when the preset has a single member
  ModelSpec model;
  std::vector<double> alphas;
};

struct Preset {
  std::string name;
  std::string description;
  FractionalKernel kernel = FractionalKernel::Caputo;
  std::vector<PresetMember> members;
  std::vector<double> sigmas;
  State initial_state;
  RegimeSchedule schedule;  ///< breakpoints only; kernel and alpha come from the run
  double dt = 0.01;

  [[nodiscard]] std::size_t run_count() const;
};

/// All figure parameter sets, in a fixed order.
[[nodiscard]] const std::vector<Preset>& builtin_parameter_sets();

/// Throws UnknownPresetError.
[[nodiscard]] const Preset& find_preset(const std::string& name);

}  // namespace pfode
