#pragma once

// Mittag-Leffler function and the normalization functions of the
// Atangana-Baleanu and Caputo-Fabrizio kernels.
//
// All functions are pure and safe to call concurrently.

namespace pfode {

struct MlfParams {
  double alpha = 1.0;       ///< order, 0 < alpha <= 1
  double tolerance = 1e-13; ///< absolute truncation bound (relative once |E| > 1)
  int max_terms = 2000;     ///< cap on the number of series terms

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// E_alpha(z) = sum_n z^n / Gamma(alpha n + 1), for real z with |z| <= 100.
///
/// Evaluated by the power series (extended-precision accumulation) wherever
/// cancellation is mild, and by the Laplace-type integral representation
/// E_alpha(-x) = 1/(alpha pi) * int exp(-((u0 + w tan th) x)^(1/alpha)) dth
/// (u0 = -cos(alpha pi), w = sin(alpha pi)) on the far negative axis.
///
/// Throws DomainError for alpha outside (0,1] or |z| > 100, ConvergenceError
/// when the tolerance cannot be met within max_terms, OverflowError when the
/// result exceeds the double range.
[[nodiscard]] double mittag_leffler(double alpha, double z);
[[nodiscard]] double mittag_leffler(const MlfParams& params, double z);

/// AB(alpha) = 1 - alpha + alpha / Gamma(alpha).
[[nodiscard]] double ab_normalization(double alpha);

/// Choice of M(alpha) for the Caputo-Fabrizio kernel. Both satisfy M(0) = M(1) = 1.
enum class CfNormalization {
  Unit,        ///< M(alpha) = 1
  LosadaNieto  ///< M(alpha) = 2 / (2 - alpha)
};

[[nodiscard]] double cf_normalization(double alpha, CfNormalization kind = CfNormalization::Unit);

/// Gamma(x) for x > 0.
[[nodiscard]] double gamma_fn(double x);

namespace detail {

struct SeriesResult {
  double value = 0.0;
  double max_term = 0.0;
  int terms = 0;
};

/// Raw truncated series. Accepts any alpha > 0 (used for cross-checks such as
/// E_2(z) = cosh(sqrt z)); no validity-domain checks.
[[nodiscard]] SeriesResult mittag_leffler_series(double alpha, double z, double tolerance,
                                                 int max_terms);

/// E_alpha(-x) for 0 < alpha < 1 and x > 0 via the integral representation.
[[nodiscard]] double mittag_leffler_negative_integral(double alpha, double x, double tolerance);

}  // namespace detail

}  // namespace pfode
