#include "pfode/models.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "pfode/errors.hpp"

namespace pfode {

namespace {

void require_finite(std::initializer_list<std::pair<const char*, double>> fields) {
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      throw ValidationError(name, "must be finite");
    }
  }
}

const std::vector<std::string> kLoveComponents = {"r", "s"};

}  // namespace

void LinearLoveParams::validate() const {
  require_finite({{"rho1", rho1}, {"rho2", rho2}, {"omega1", omega1}, {"omega2", omega2},
                  {"gamma1", gamma1}, {"gamma2", gamma2}, {"psi1", psi1}, {"psi2", psi2}});
}

void NonlinearLoveParams::validate() const {
  require_finite({{"rho1", rho1}, {"rho2", rho2}, {"omega1", omega1}, {"omega2", omega2},
                  {"psi1", psi1}, {"psi2", psi2}, {"epsilon", epsilon}});
  if (epsilon < 0.0) {
    throw ValidationError("epsilon", "must be >= 0");
  }
}

VectorField linear_love_field(const LinearLoveParams& p) {
  p.validate();
  auto rhs = [p](double, std::span<const double> u, std::span<double> du) {
    du[0] = -p.rho1 * u[0] + p.omega1 * u[1] + p.gamma1 * p.psi2;
    du[1] = -p.rho2 * u[1] + p.omega2 * u[0] + p.gamma2 * p.psi1;
  };
  auto jac = [p](double, std::span<const double>, std::span<double> j) {
    j[0] = -p.rho1;
    j[1] = p.omega1;
    j[2] = p.omega2;
    j[3] = -p.rho2;
  };
  return VectorField("linear-love", 2, rhs, jac, kLoveComponents);
}

VectorField nonlinear_love_field(const NonlinearLoveParams& p) {
  p.validate();
  auto rhs = [p](double, std::span<const double> u, std::span<double> du) {
    const double r = u[0];
    const double s = u[1];
    du[0] = -p.rho1 * r + p.omega1 * s * (1.0 - p.epsilon * s * s) + p.psi1;
    du[1] = -p.rho2 * s + p.omega2 * r * (1.0 - p.epsilon * r * r) + p.psi2;
  };
  auto jac = [p](double, std::span<const double> u, std::span<double> j) {
    const double r = u[0];
    const double s = u[1];
    j[0] = -p.rho1;
    j[1] = p.omega1 * (1.0 - 3.0 * p.epsilon * s * s);
    j[2] = p.omega2 * (1.0 - 3.0 * p.epsilon * r * r);
    j[3] = -p.rho2;
  };
  return VectorField("nonlinear-love", 2, rhs, jac, kLoveComponents);
}

NonlinearLoveParams as_nonlinear(const LinearLoveParams& p) {
  NonlinearLoveParams q;
  q.rho1 = p.rho1;
  q.rho2 = p.rho2;
  q.omega1 = p.omega1;
  q.omega2 = p.omega2;
  q.psi1 = p.gamma1 * p.psi2;
  q.psi2 = p.gamma2 * p.psi1;
  q.epsilon = 0.0;
  return q;
}

ModelSpec ModelSpec::make(const LinearLoveParams& p) {
  ModelSpec m;
  m.type = Type::Linear;
  m.linear = p;
  return m;
}

ModelSpec ModelSpec::make(const NonlinearLoveParams& p) {
  ModelSpec m;
  m.type = Type::Nonlinear;
  m.nonlinear = p;
  return m;
}

VectorField ModelSpec::field() const {
  return type == Type::Linear ? linear_love_field(linear) : nonlinear_love_field(nonlinear);
}

NonlinearLoveParams ModelSpec::bound_params() const {
  return type == Type::Linear ? as_nonlinear(linear) : nonlinear;
}

void ModelSpec::validate() const {
  if (type == Type::Linear) {
    linear.validate();
  } else {
    nonlinear.validate();
  }
}

const char* model_type_id(ModelSpec::Type type) noexcept {
  return type == ModelSpec::Type::Linear ? "linear" : "nonlinear";
}

std::size_t Preset::run_count() const {
  std::size_t n = 0;
  for (const auto& m : members) n += m.alphas.size();
  return n;
}

namespace {

LinearLoveParams linear_base() {
  LinearLoveParams p;
  p.rho1 = 0.12;
  p.rho2 = 0.05;
  p.psi1 = 0.8;
  p.psi2 = 0.81;
  p.gamma1 = 0.5;
  p.gamma2 = 1.2;
  p.omega1 = 6.1;
  p.omega2 = -1.0;
  return p;
}

NonlinearLoveParams nonlinear_base(double epsilon) {
  NonlinearLoveParams p;
  p.rho1 = 0.12;
  p.rho2 = 0.01;
  p.psi1 = 1.0;
  p.psi2 = 1.0;
  p.omega1 = 6.1;
  p.omega2 = -1.0;
  p.epsilon = epsilon;
  return p;
}

std::string token(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

Preset base_preset(std::string name, std::string description, FractionalKernel kernel,
                   std::vector<double> sigmas) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.kernel = kernel;
  p.sigmas = std::move(sigmas);
  p.initial_state = {1.0, 1.0};
  p.schedule.a1 = 20.0;
  p.schedule.a2 = 40.0;
  p.schedule.a = 60.0;
  p.schedule.kernel = kernel;
  p.dt = 0.01;
  return p;
}

Preset linear_alpha_preset(std::string name, FractionalKernel kernel, std::vector<double> alphas) {
  Preset p = base_preset(std::move(name), "linear model, four fractional orders", kernel,
                         {0.02, 0.01});
  p.members.push_back({"", ModelSpec::make(linear_base()), std::move(alphas)});
  return p;
}

Preset linear_sweep_preset(std::string name, FractionalKernel kernel, double alpha) {
  Preset p = base_preset(std::move(name), "linear model, omega2 x rho2 sweep", kernel,
                         {0.02, 0.01});
  for (double rho2 : {0.01, -1.0}) {
    for (double omega2 : {-1.0, -10.0, -50.0, -100.0, -150.0, -200.0, -225.0}) {
      LinearLoveParams q = linear_base();
      q.rho2 = rho2;
      q.omega2 = omega2;
      p.members.push_back(
          {"rho2_" + token(rho2) + "_omega2_" + token(omega2), ModelSpec::make(q), {alpha}});
    }
  }
  return p;
}

std::string eps_label(double eps) { return "eps_" + token(eps); }

// (alpha, epsilon) pairs; members are grouped by epsilon in first-seen order.
Preset nonlinear_pairs_preset(std::string name, FractionalKernel kernel,
                              std::vector<std::pair<double, double>> pairs) {
  Preset p = base_preset(std::move(name), "nonlinear model, paired (alpha, epsilon)", kernel,
                         {0.01, 0.02});
  for (const auto& [alpha, eps] : pairs) {
    PresetMember* member = nullptr;
    for (auto& m : p.members) {
      if (m.model.nonlinear.epsilon == eps) member = &m;
    }
    if (member == nullptr) {
      p.members.push_back({eps_label(eps), ModelSpec::make(nonlinear_base(eps)), {}});
      member = &p.members.back();
    }
    member->alphas.push_back(alpha);
  }
  return p;
}

Preset nonlinear_sweep_preset(std::string name, FractionalKernel kernel,
                              std::vector<std::pair<double, std::vector<double>>> groups) {
  Preset p = base_preset(std::move(name), "nonlinear model, epsilon x alpha sweep", kernel,
                         {0.01, 0.02});
  for (auto& [eps, alphas] : groups) {
    p.members.push_back({eps_label(eps), ModelSpec::make(nonlinear_base(eps)), std::move(alphas)});
  }
  return p;
}

std::vector<Preset> make_registry() {
  using K = FractionalKernel;
  std::vector<Preset> r;
  r.push_back(linear_alpha_preset("fig1-linear", K::Caputo, {0.79, 0.85, 0.92, 0.97}));
  r.push_back(linear_sweep_preset("fig2-sweep", K::Caputo, 0.95));
  r.push_back(nonlinear_pairs_preset("fig3-nonlinear", K::Caputo,
                                     {{0.8, 1.0}, {0.86, 0.0}, {0.93, 1.0}, {0.98, 0.0}}));
  r.push_back(nonlinear_sweep_preset("fig4-sweep", K::Caputo,
                                     {{1.0, {0.78, 0.85, 0.91, 0.94, 0.98}},
                                      {0.0, {0.78, 0.85, 0.91, 0.94, 0.98}},
                                      {0.2, {0.85, 0.98}}}));
  r.push_back(linear_alpha_preset("fig5-linear", K::AtanganaBaleanu, {0.86, 0.89, 0.95, 0.99}));
  r.push_back(linear_sweep_preset("fig6-sweep", K::AtanganaBaleanu, 0.96));
  r.push_back(nonlinear_pairs_preset("fig7-nonlinear", K::AtanganaBaleanu,
                                     {{0.81, 1.0}, {0.87, 0.0}, {0.94, 1.0}, {0.99, 0.0}}));
  r.push_back(nonlinear_sweep_preset("fig8-sweep", K::AtanganaBaleanu,
                                     {{1.0, {0.81, 0.87, 0.92, 0.95, 0.99}},
                                      {0.0, {0.81, 0.87, 0.92, 0.95, 0.99}},
                                      {0.25, {0.95, 0.99}}}));
  r.push_back(linear_alpha_preset("fig9-linear", K::CaputoFabrizio, {0.87, 0.9, 0.94, 0.98}));
  r.push_back(linear_sweep_preset("fig10-sweep", K::CaputoFabrizio, 0.97));
  r.push_back(nonlinear_pairs_preset("fig11-nonlinear", K::CaputoFabrizio,
                                     {{0.81, 1.0}, {0.87, 0.0}, {0.94, 1.0}, {0.99, 0.0}}));
  r.push_back(nonlinear_sweep_preset("fig12-sweep", K::CaputoFabrizio,
                                     {{1.0, {0.84, 0.88, 0.92, 0.96, 0.99}},
                                      {0.0, {0.84, 0.89, 0.93, 0.96, 0.99}},
                                      {0.3, {0.94, 0.98}}}));
  return r;
}

}  // namespace

const std::vector<Preset>& builtin_parameter_sets() {
  static const std::vector<Preset> registry = make_registry();
  return registry;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : builtin_parameter_sets()) {
    if (p.name == name) return p;
  }
  throw UnknownPresetError(name);
}

}  // namespace pfode
