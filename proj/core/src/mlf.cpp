#include "pfode/mlf.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pfode/errors.hpp"

namespace pfode {

namespace {

constexpr double kMaxAbsArgument = 100.0;
// Series is used on the negative axis while its largest term stays below
// roughly exp(kSeriesLogPeak); beyond that the extended-precision sum loses
// more than the 1e-13 budget to cancellation.
constexpr double kSeriesLogPeak = 10.0;

void require_order(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << what << ": alpha must lie in (0, 1], got " << alpha;
    throw DomainError(os.str());
  }
}

// lgamma proper writes the global signgam; the reentrant variant does not.
long double log_gamma(long double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  [[nodiscard]] long double value() const { return sum + carry; }
};

}  // namespace

void MlfParams::validate() const {
  require_order(alpha, "MlfParams");
  if (!(tolerance > 0.0)) {
    throw DomainError("MlfParams: tolerance must be positive");
  }
  if (max_terms < 10) {
    throw DomainError("MlfParams: max_terms must be at least 10");
  }
}

namespace detail {

SeriesResult mittag_leffler_series(double alpha, double z, double tolerance, int max_terms) {
  SeriesResult out;
  if (z == 0.0) {
    out.value = 1.0;
    out.max_term = 1.0;
    out.terms = 1;
    return out;
  }
  const long double a = alpha;
  const long double log_abs_z = std::log(std::fabs(static_cast<long double>(z)));
  const bool alternating = z < 0.0;

  CompensatedSum acc;
  long double prev_abs = 0.0L;
  long double max_abs = 0.0L;
  for (int n = 0; n < max_terms; ++n) {
    const long double log_term = n * log_abs_z - log_gamma(a * n + 1.0L);
    const long double abs_term = std::exp(log_term);
    const long double term = (alternating && (n % 2 == 1)) ? -abs_term : abs_term;
    acc.add(term);
    max_abs = std::max(max_abs, abs_term);

    const long double scale = std::max(1.0L, std::fabs(acc.value()));
    const bool past_peak = n > 1 && abs_term < prev_abs;
    if (past_peak && abs_term <= 1e-3L * tolerance * scale && abs_term <= 0.5L * prev_abs) {
      out.value = static_cast<double>(acc.value());
      out.max_term = static_cast<double>(max_abs);
      out.terms = n + 1;
      if (!std::isfinite(out.value)) {
        throw OverflowError("mittag_leffler: result exceeds double range");
      }
      return out;
    }
    prev_abs = abs_term;
  }
  std::ostringstream os;
  os << "mittag_leffler: series did not converge within " << max_terms << " terms (alpha=" << alpha
     << ", z=" << z << ")";
  throw ConvergenceError(os.str());
}

double mittag_leffler_negative_integral(double alpha, double x, double tolerance) {
  using std::numbers::pi;
  // Boost 1.74 only defines the non-const integrate(); a per-thread instance
  // keeps concurrent callers apart.
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;

  const double u0 = -std::cos(alpha * pi);
  const double w = std::sin(alpha * pi);
  const double theta_min = std::atan(-u0 / w);
  const double inv_alpha = 1.0 / alpha;

  // Substituting u = u0 + w tan(theta) removes the Lorentzian denominator
  // 1 / (u^2 + 2 u cos(alpha pi) + 1), which is sharply peaked as alpha -> 1.
  auto integrand = [=](double theta) {
    const double u = u0 + w * std::tan(theta);
    if (!(u > 0.0)) {
      return 1.0;
    }
    return std::exp(-std::pow(u * x, inv_alpha));
  };

  double error = 0.0;
  const double integral =
      integrator.integrate(integrand, theta_min, pi / 2.0, 1e-15, &error);
  const double value = integral / (alpha * pi);
  if (!(error / (alpha * pi) <= tolerance) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "mittag_leffler: quadrature error estimate " << error / (alpha * pi)
       << " exceeds tolerance (alpha=" << alpha << ", z=" << -x << ")";
    throw ConvergenceError(os.str());
  }
  return value;
}

}  // namespace detail

double mittag_leffler(const MlfParams& params, double z) {
  params.validate();
  if (!(std::fabs(z) <= kMaxAbsArgument)) {
    std::ostringstream os;
    os << "mittag_leffler: |z| must not exceed " << kMaxAbsArgument << ", got " << z;
    throw DomainError(os.str());
  }
  const double alpha = params.alpha;
  if (z < 0.0 && std::pow(-z, 1.0 / alpha) > kSeriesLogPeak) {
    if (alpha == 1.0) {
      return std::exp(z);
    }
    return detail::mittag_leffler_negative_integral(alpha, -z, params.tolerance);
  }
  if (z > 0.0 && std::pow(z, 1.0 / alpha) - std::log(alpha) > std::log(std::numeric_limits<double>::max())) {
    std::ostringstream os;
    os << "mittag_leffler: E_" << alpha << "(" << z << ") exceeds double range";
    throw OverflowError(os.str());
  }
  return detail::mittag_leffler_series(alpha, z, params.tolerance, params.max_terms).value;
}

double mittag_leffler(double alpha, double z) {
  MlfParams params;
  params.alpha = alpha;
  return mittag_leffler(params, z);
}

double ab_normalization(double alpha) {
  require_order(alpha, "ab_normalization");
  return 1.0 - alpha + alpha / gamma_fn(alpha);
}

double cf_normalization(double alpha, CfNormalization kind) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "cf_normalization: alpha must lie in [0, 1], got " << alpha;
    throw DomainError(os.str());
  }
  switch (kind) {
    case CfNormalization::Unit:
      return 1.0;
    case CfNormalization::LosadaNieto:
      return 2.0 / (2.0 - alpha);
  }
  return 1.0;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  const double value = std::tgamma(x);
  if (!std::isfinite(value)) {
    throw OverflowError("gamma_fn: result exceeds double range");
  }
  return value;
}

}  // namespace pfode
