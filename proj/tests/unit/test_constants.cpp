#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "anisotm/constants.hpp"
#include "anisotm/gauge.hpp"
#include "anisotm/special.hpp"
#include "oracles.hpp"

using namespace anisotm;
using oracle::pi;

TEST_CASE("harmonic sums") {
  CHECK(harmonic_sum(2) == 1.0);
  CHECK(harmonic_sum(4) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(harmonic_sum(1) == 0.0);
}

TEST_CASE("sharp constants") {
  const auto c = sharp_constants(2, pi, 0.0);
  CHECK(c.lambda_n == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(sharp_constants(2, pi, 1.0).lambda_n_beta == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(sharp_constants(3, 4 * pi / 3).lambda_n == doctest::Approx(std::pow(3.0, 1.5) * std::sqrt(4 * pi / 3)).epsilon(1e-14));
  for (int n = 2; n <= 5; ++n) {
    const auto s = sharp_constants(n, unit_ball_volume(n));
    CHECK(s.omega_sphere == doctest::Approx(n * s.omega_n).epsilon(1e-14));
    CHECK(s.lambda_n == doctest::Approx(s.alpha_n).epsilon(1e-13));
    const double sphere = 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
    CHECK(s.omega_sphere == doctest::Approx(sphere).epsilon(1e-13));
  }
}

TEST_CASE("Robin function and harmonic radius are inverse") {
  for (double tau : {-0.3, 0.0, 0.7}) CHECK(robin_from_radius(2, pi, radius_from_robin(2, pi, tau)) == doctest::Approx(tau));
  CHECK(radius_from_robin(2, pi, 0.0) == 1.0);
}

TEST_CASE("Talenti and Alvino constants against bubble quotients") {
  CHECK(talenti_constant(2, 1.5) == doctest::Approx(oracle::bubble_quotient(2, 1.5, 0.0)).epsilon(1e-6));
  CHECK(talenti_constant(3, 2.0) == doctest::Approx(oracle::bubble_quotient(3, 2.0, 0.0)).epsilon(1e-6));
  for (double p : {1.1, 1.5, 1.9}) {
    const double S = talenti_constant(2, p);
    CHECK(std::isfinite(S));
    CHECK(S > 0.0);
  }
  CHECK(alvino_constant(2, 1.5, 0.0) == doctest::Approx(talenti_constant(2, 1.5)).epsilon(1e-10));
  CHECK(alvino_constant(2, 1.5, 0.5) == doctest::Approx(oracle::bubble_quotient(2, 1.5, 0.5)).epsilon(1e-5));
  CHECK(alvino_constant(3, 2.0, 1.0) == doctest::Approx(oracle::bubble_quotient(3, 2.0, 1.0)).epsilon(1e-5));
  CHECK(std::exp(log_alvino_constant(3, 2.0, 1.0)) == doctest::Approx(alvino_constant(3, 2.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("Alvino constant is continuous in beta") {
  const double S0 = alvino_constant(2, 1.5, 0.0);
  double prev = 1e300;
  for (double b : {1e-1, 1e-2, 1e-3}) {
    const double d = std::abs(alvino_constant(2, 1.5, b) - S0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("N_p approaches its limit") {
  CHECK(np_value(1.0, 2, 1.999, 0.0, pi) == doctest::Approx(std::exp(1.0)).epsilon(1e-2));
  for (int n : {2, 3, 4}) {
    const double kappa = unit_ball_volume(n);
    double H = 0.0;
    for (int k = 1; k < n; ++k) H += 1.0 / k;
    const double target = std::exp(H);
    CHECK(np_limit(1.0, n, 0.0, kappa) == doctest::Approx(target).epsilon(1e-14));
    double prev = 1e300;
    for (int k = 1; k <= 6; ++k) {
      const double err = std::abs(np_value(1.0, n, n - std::pow(10.0, -k), 0.0, kappa) / target - 1.0);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-4);
  }
  const double k2 = pi, A = 1.3;
  const double limb = 2.0 / (2.0 - 1.0) * std::pow(k2, 0.5) * std::pow(A, 0.5) * std::exp(1.0);
  CHECK(np_limit(A, 2, 1.0, k2) == doctest::Approx(limb).epsilon(1e-14));
  CHECK(np_value(A, 2, 2.0 - 1e-6, 1.0, k2) == doctest::Approx(limb).epsilon(1e-4));
}

TEST_CASE("concentration levels") {
  CHECK(concentration_level(pi, 1.0, 2) == doctest::Approx(pi * std::exp(1.0)).epsilon(1e-14));
  CHECK(concentration_level(pi, 1.0, 2, 1.0) == doctest::Approx(2 * pi * std::exp(1.0)).epsilon(1e-14));
  CHECK(concentration_level(pi, 0.75, 2) == doctest::Approx(pi * 0.5625 * std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("special functions") {
  for (double x = 0.5; x <= 50.0; x += 0.37) {
    CHECK(special::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    CHECK(special::lgamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    CHECK(special::digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-12));
  }
  CHECK(special::digamma(1.0) == doctest::Approx(-special::euler_gamma).epsilon(1e-14));
}

TEST_CASE("log-gamma slope matches the digamma difference") {
  // d/dt log(Gamma(t+1) Gamma(n-t)) at t = 0 equals psi(1) - psi(n)
  for (int n : {2, 3, 4, 6}) {
    const double h = 1e-5;
    auto f = [n](double t) { return std::lgamma(t + 1.0) + std::lgamma(n - t); };
    const double slope = (f(h) - f(-h)) / (2 * h);
    CHECK(std::abs(slope + (special::digamma(n) - special::digamma(1.0))) < 1e-8);
  }
}
