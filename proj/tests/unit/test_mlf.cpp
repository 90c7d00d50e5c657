#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pfode/errors.hpp"
#include "pfode/mlf.hpp"

using namespace pfode;

namespace {

// Reference values from a 50-digit evaluation (series with exact Gamma where
// it converges, the integral representation elsewhere).
struct Ref {
  double alpha;
  double z;
  double value;
};

constexpr std::array<Ref, 59> kTable = {{
    {0.3, -100, 0.0076588562222866413892},    {0.3, -50, 0.015228201501814695036},
    {0.3, -20, 0.037406226213884452596},      {0.3, -7.5, 0.094995693498016270041},
    {0.3, -5, 0.13708086902027063758},        {0.3, -2, 0.29023222616787535326},
    {0.3, -1, 0.45659440832969066901},        {0.3, 0.5, 2.0620157899559994849},
    {0.3, 3, 272036108062508801.09},          {0.5, -100, 0.0056416137829894329036},
    {0.5, -50, 0.0112815362653237725},        {0.5, -20, 0.028174348741051319319},
    {0.5, -7.5, 0.074573693062876683005},     {0.5, -5, 0.11070463773306862637},
    {0.5, -2, 0.25539567631050574387},        {0.5, -1, 0.42758357615580700441},
    {0.5, 0.5, 1.9523604891825570933},        {0.5, 3, 16205.988853999586625},
    {0.5, 10, 5.3762342836322708968e+43},     {0.7, -100, 0.0033696874163059937557},
    {0.7, -50, 0.0067936656703830928422},     {0.7, -20, 0.017395698291603977466},
    {0.7, -7.5, 0.049440801830311776805},     {0.7, -5, 0.077569357764769801692},
    {0.7, -2, 0.21378672701529726519},        {0.7, -1, 0.39961197811559938437},
    {0.7, 0.5, 1.8249850568512024534},        {0.7, 3, 174.19304297541536242},
    {0.7, 10, 639295673243.01346494},         {0.9, -100, 0.001068972418287089285},
    {0.9, -50, 0.0021753530768569765492},     {0.9, -20, 0.0057495078161091138828},
    {0.9, -7.5, 0.018662932471857279635},     {0.9, -5, 0.034431324804098423905},
    {0.9, -2, 0.16352830001693004885},        {0.9, -1, 0.37606602142464188118},
    {0.9, 0.5, 1.7043087220993991263},        {0.9, 3, 32.921897176850828949},
    {0.9, 10, 451737.77456773778129},         {0.99, -100, 0.00010261344540995115483},
    {0.99, -50, 0.00020957649900600752844},   {0.99, -20, 0.00056162348367495244904},
    {0.99, -7.5, 0.0024664680868175315007},   {0.99, -5, 0.0097680921391741255086},
    {0.99, -2, 0.13821728069806402584},       {0.99, -1, 0.36854831806033961629},
    {0.99, 0.5, 1.6541261938718982644},       {0.99, 3, 20.976948519286249038},
    {0.99, 10, 28151.629680973988596},        {0.999, -100, 0.000010211830300787619001},
    {0.999, -50, 0.000020862972463840575241}, {0.999, -20, 0.000055979068035277037674},
    {0.999, -7.5, 0.00074557145511812576854}, {0.999, -5, 0.0070439569266840405896},
    {0.999, -2, 0.13562392299454344287},      {0.999, -1, 0.36794468034194146967},
    {0.999, 0.5, 1.6492602159574122284},      {0.999, 3, 20.171906005939226943},
    {0.999, 10, 22563.209925678138429},
}};

}  // namespace

TEST_CASE("mittag_leffler: trivial values") {
  CHECK(mittag_leffler(0.5, 0.0) == 1.0);
  CHECK(mittag_leffler(1.0, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-15));
  for (double a : {0.5, 0.7, 0.9, 1.0}) {
    CHECK(mittag_leffler(a, 0.0) == 1.0);
  }
}

TEST_CASE("mittag_leffler: 50-digit reference table") {
  for (const auto& r : kTable) {
    CAPTURE(r.alpha);
    CAPTURE(r.z);
    const double got = mittag_leffler(r.alpha, r.z);
    if (std::fabs(r.value) <= 1.0) {
      CHECK(std::fabs(got - r.value) <= 1e-13);
    } else {
      CHECK(std::fabs(got - r.value) <= 1e-13 * std::fabs(r.value));
    }
  }
}

TEST_CASE("mittag_leffler: E_0.9(-1) against an independent 50-digit series") {
  using boost::multiprecision::cpp_dec_float_50;
  cpp_dec_float_50 sum = 0;
  cpp_dec_float_50 zn = 1;
  const cpp_dec_float_50 alpha("0.9");
  for (int n = 0; n < 200; ++n) {
    sum += zn / boost::math::tgamma(alpha * n + 1);
    zn *= -1;
  }
  const double oracle = sum.convert_to<double>();
  CHECK(oracle == doctest::Approx(0.3760660214246418811772817816478159049039).epsilon(1e-15));
  CHECK(std::fabs(mittag_leffler(0.9, -1.0) - oracle) <= 1e-13);
}

TEST_CASE("mittag_leffler: E_1 is exp on [-10, 10]") {
  for (int i = -100; i <= 100; ++i) {
    const double z = 0.1 * i;
    CAPTURE(z);
    CHECK(std::fabs(mittag_leffler(1.0, z) - std::exp(z)) <= 1e-10);
  }
}

TEST_CASE("mittag_leffler: series at alpha = 2 is cosh(sqrt z)") {
  for (int i = 0; i <= 250; ++i) {
    const double z = 0.1 * i;
    const auto r = detail::mittag_leffler_series(2.0, z, 1e-15, 2000);
    CHECK(std::fabs(r.value - std::cosh(std::sqrt(z))) <= 1e-10 * std::max(1.0, r.value));
  }
}

TEST_CASE("mittag_leffler: E_a(-t^a) is non-increasing") {
  for (double a : {0.5, 0.7, 0.9, 1.0}) {
    double prev = mittag_leffler(a, 0.0);
    for (int i = 1; i <= 1000; ++i) {
      const double t = 0.01 * i;
      const double v = mittag_leffler(a, -std::pow(t, a));
      CAPTURE(a);
      CAPTURE(t);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("mittag_leffler: both evaluation routes agree at the switch") {
  // |z|^(1/alpha) = 10 is where the series hands over to the integral.
  for (double a : {0.3, 0.5, 0.7, 0.9, 0.99}) {
    const double x = std::pow(10.0, a);
    const double series = detail::mittag_leffler_series(a, -x, 1e-15, 4000).value;
    const double integral = detail::mittag_leffler_negative_integral(a, x, 1e-13);
    CAPTURE(a);
    CHECK(std::fabs(series - integral) <= 1e-13);
  }
}

TEST_CASE("mittag_leffler: error paths") {
  CHECK_THROWS_AS((void)mittag_leffler(0.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(1.5, 1.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(0.5, -101.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(0.3, 10.0), OverflowError);
  MlfParams p;
  p.alpha = 0.5;
  p.max_terms = 10;
  CHECK_THROWS_AS((void)mittag_leffler(p, 3.0), ConvergenceError);
  p.max_terms = 5;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.max_terms = 100;
  p.tolerance = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("ab_normalization") {
  CHECK(ab_normalization(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ab_normalization(0.5) == doctest::Approx(0.5 + 0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(ab_normalization(0.5) == doctest::Approx(0.78209479177387814347).epsilon(1e-15));
  CHECK(ab_normalization(0.9) == doctest::Approx(1.0 - 0.9 + 0.9 / 1.068628702119319354897305).epsilon(1e-15));
  CHECK(ab_normalization(0.9) == doctest::Approx(0.94220084882158549586).epsilon(1e-15));
  for (int i = 1; i <= 100; ++i) CHECK(ab_normalization(0.01 * i) > 0.0);
  CHECK_THROWS_AS((void)ab_normalization(0.0), DomainError);
  CHECK_THROWS_AS((void)ab_normalization(1.01), DomainError);
}

TEST_CASE("cf_normalization") {
  CHECK(cf_normalization(0.0) == 1.0);
  CHECK(cf_normalization(1.0) == 1.0);
  CHECK(cf_normalization(0.5) == 1.0);
  CHECK(cf_normalization(0.0, CfNormalization::LosadaNieto) == 1.0);
  CHECK(cf_normalization(1.0, CfNormalization::LosadaNieto) == 2.0);
  CHECK(cf_normalization(0.5, CfNormalization::LosadaNieto) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS((void)cf_normalization(-0.1), DomainError);
  CHECK_THROWS_AS((void)cf_normalization(1.1), DomainError);
}

TEST_CASE("gamma_fn") {
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK(gamma_fn(0.5) == doctest::Approx(1.7724538509055159).epsilon(1e-15));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(gamma_fn(0.9) == doctest::Approx(1.068628702119319354897305).epsilon(1e-14));
  for (int i = 10; i <= 2000; ++i) {
    const double x = 0.01 * i;
    CHECK(std::fabs(gamma_fn(x + 1) - x * gamma_fn(x)) <= 1e-12 * gamma_fn(x + 1));
  }
  CHECK_THROWS_AS((void)gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS((void)gamma_fn(-1.5), DomainError);
}
