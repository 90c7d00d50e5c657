#include "pfode/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pfode/errors.hpp"

namespace pfode {

const char* kernel_id(FractionalKernel kernel) noexcept {
  switch (kernel) {
    case FractionalKernel::Caputo:
      return "caputo";
    case FractionalKernel::AtanganaBaleanu:
      return "abc";
    case FractionalKernel::CaputoFabrizio:
      return "cf";
  }
  return "unknown";
}

const char* kernel_name(FractionalKernel kernel) noexcept {
  switch (kernel) {
    case FractionalKernel::Caputo:
      return "Caputo";
    case FractionalKernel::AtanganaBaleanu:
      return "Atangana-Baleanu";
    case FractionalKernel::CaputoFabrizio:
      return "Caputo-Fabrizio";
  }
  return "unknown";
}

FractionalKernel parse_kernel(const std::string& id) {
  if (id == "caputo") return FractionalKernel::Caputo;
  if (id == "abc") return FractionalKernel::AtanganaBaleanu;
  if (id == "cf") return FractionalKernel::CaputoFabrizio;
  throw ValidationError("kernel", "expected one of caputo, abc, cf; got '" + id + "'");
}

void RegimeSchedule::validate() const {
  if (!(std::isfinite(a1) && std::isfinite(a2) && std::isfinite(a))) {
    throw ValidationError("schedule", "breakpoints must be finite");
  }
  if (!(0.0 < a1 && a1 < a2 && a2 < a)) {
    std::ostringstream os;
    os << "require 0 < a1 < a2 < a, got a1=" << a1 << " a2=" << a2 << " a=" << a;
    throw ValidationError("schedule", os.str());
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0, 1], got " << alpha;
    throw ValidationError("alpha", os.str());
  }
}

namespace {

std::size_t steps_to(double time, double dt, const char* label) {
  const double ratio = time / dt;
  const double nearest = std::round(ratio);
  if (std::fabs(ratio - nearest) > 1e-9 * std::max(1.0, std::fabs(ratio))) {
    std::ostringstream os;
    os << label << "=" << time << " is not a multiple of dt=" << dt;
    throw GridError(os.str());
  }
  return static_cast<std::size_t>(nearest);
}

}  // namespace

Grid make_uniform_grid(const RegimeSchedule& schedule, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw GridError("dt must be positive and finite");
  }
  Grid grid;
  grid.dt = dt;
  grid.k1 = steps_to(schedule.a1, dt, "a1");
  grid.k2 = steps_to(schedule.a2, dt, "a2");
  grid.n = steps_to(schedule.a, dt, "a");
  if (grid.k1 < 3 || grid.k2 < grid.k1 + 3 || grid.n < grid.k2 + 3) {
    std::ostringstream os;
    os << "every segment needs at least 3 steps (k1=" << grid.k1 << ", k2=" << grid.k2
       << ", N=" << grid.n << ")";
    throw GridError(os.str());
  }
  return grid;
}

VectorField::VectorField(std::string name, std::size_t dimension, Rhs rhs, Jacobian jacobian,
                         std::vector<std::string> component_names)
    : name_(std::move(name)),
      dimension_(dimension),
      rhs_(std::move(rhs)),
      jacobian_(std::move(jacobian)),
      names_(std::move(component_names)) {
  if (dimension_ == 0) {
    throw ValidationError("field", "dimension must be positive");
  }
  if (!rhs_) {
    throw ValidationError("field", "right-hand side is empty");
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      names_.push_back("u" + std::to_string(i));
    }
  } else if (names_.size() != dimension_) {
    throw ValidationError("field", "component name count does not match dimension");
  }
}

void VectorField::eval(double t, std::span<const double> u, std::span<double> du) const {
  rhs_(t, u, du);
}

State VectorField::operator()(double t, std::span<const double> u) const {
  State du(dimension_, 0.0);
  rhs_(t, u, du);
  return du;
}

std::vector<double> VectorField::jacobian(double t, std::span<const double> u) const {
  if (!jacobian_) {
    throw Error("field '" + name_ + "' has no analytic Jacobian");
  }
  std::vector<double> jac(dimension_ * dimension_, 0.0);
  jacobian_(t, u, jac);
  return jac;
}

void NoiseSpec::validate() const {
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] >= 0.0) || !std::isfinite(sigmas[i])) {
      throw ValidationError("sigmas", "sigma[" + std::to_string(i) + "] must be finite and >= 0");
    }
  }
}

void PiecewiseProblem::validate() const {
  schedule.validate();
  noise.validate();
  if (initial_state.size() != field.dimension()) {
    throw ValidationError("initial_state", "length does not match field dimension");
  }
  if (noise.sigmas.size() != field.dimension()) {
    throw ValidationError("sigmas", "length does not match field dimension");
  }
}

Trajectory::Trajectory(std::size_t dimension, double dt, std::vector<std::string> component_names)
    : dimension_(dimension), dt_(dt), names_(std::move(component_names)) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      names_.push_back("u" + std::to_string(i));
    }
  }
}

void Trajectory::reserve(std::size_t nodes) {
  times_.reserve(nodes);
  states_.reserve(nodes * dimension_);
  segment_of_.reserve(nodes);
}

void Trajectory::push(double t, std::span<const double> u, int segment) {
  if (u.size() != dimension_) {
    throw IndexError("Trajectory::push: state length does not match dimension");
  }
  times_.push_back(t);
  states_.insert(states_.end(), u.begin(), u.end());
  segment_of_.push_back(segment);
}

std::span<const double> Trajectory::state(std::size_t node) const {
  if (node >= times_.size()) {
    throw IndexError("Trajectory::state: node out of range");
  }
  return {states_.data() + node * dimension_, dimension_};
}

double Trajectory::value(std::size_t node, std::size_t component) const {
  if (component >= dimension_) {
    throw IndexError("Trajectory::value: component out of range");
  }
  return state(node)[component];
}

void Trajectory::set_time(std::size_t node, double t) {
  if (node >= times_.size()) {
    throw IndexError("Trajectory::set_time: node out of range");
  }
  times_[node] = t;
}

double Trajectory::max_abs_state() const {
  double m = 0.0;
  for (double v : states_) {
    m = std::max(m, std::fabs(v));
  }
  return m;
}

bool Trajectory::all_finite() const {
  return std::all_of(states_.begin(), states_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace pfode
