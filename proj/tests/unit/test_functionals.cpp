#include <doctest.h>

#include <random>

#include "anisotm/constants.hpp"
#include "anisotm/functionals.hpp"
#include "oracles.hpp"

using namespace anisotm;
using oracle::pi;

TEST_CASE("zero and constant inputs") {
  const auto spec = FunctionalSpec::exact(2, pi);
  CHECK(tm_functional(RadialProfile({0.0, 1.0}, {0.0, 0.0}), spec).value == 0.0);
  const auto c = tm_functional(RadialProfile({0.0, 1.0}, {0.5, 0.5}), spec);
  CHECK(c.value == doctest::Approx(pi * (std::exp(4 * pi * 0.25) - 1.0)).epsilon(1e-12));
  const auto c2 = tm_functional(RadialProfile({0.0, 1.0}, {0.5, 0.5}), spec, 0.7);
  CHECK(c2.value == doctest::Approx(pi * 0.49 * (std::exp(4 * pi * 0.25) - 1.0)).epsilon(1e-12));
}

TEST_CASE("cone profile against a radial oracle") {
  const auto spec = FunctionalSpec::exact(2, pi);
  const double ref =
      2 * pi * oracle::simpson([](double r) { return (std::exp(4 * pi * (1 - r) * (1 - r)) - 1.0) * r; }, 0.0, 1.0, 1000000);
  CHECK(tm_functional(RadialProfile({0.0, 1.0}, {1.0, 0.0}), spec).value == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("singular weight") {
  const auto spec = FunctionalSpec::exact(2, pi, 1.0);
  CHECK(spec.lambda == doctest::Approx(2 * pi));
  const double ref =
      2 * pi * oracle::simpson([](double r) { return std::exp(2 * pi * (1 - r) * (1 - r)) - 1.0; }, 0.0, 1.0, 100000);
  CHECK(tm_functional(RadialProfile({0.0, 1.0}, {1.0, 0.0}), spec).value == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("q-exponential") {
  CHECK(exp_q(0.3, 0.0) == 1.0);
  CHECK(std::abs(exp_q(1.0 - 1e-4, 2.0) / std::exp(2.0) - 1.0) < 1e-3);
  // first-order deficit e^r (1 - q) r^2 / 2
  CHECK(std::exp(2.0) - exp_q(1.0 - 1e-4, 2.0) == doctest::Approx(std::exp(2.0) * 2e-4).epsilon(1e-3));
  CHECK(exp_q(0.5, 2.0) == doctest::Approx(4.0));
}

TEST_CASE("approximating functionals converge") {
  const RadialProfile U({0.0, 1.0}, {0.8, 0.0});
  const double target = tm_functional(U, FunctionalSpec::exact(2, pi)).value;
  double prev = 1e300;
  for (double p : {1.9, 1.99, 1.999}) {
    const double v = tm_functional(U, FunctionalSpec::approx(2, pi, p, pi)).value;
    const double err = std::abs(v - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev / target < 1e-2);
}

TEST_CASE("sandwich bounds on random profiles") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (double p : {1.5, 1.8}) {
    const auto spec = FunctionalSpec::approx(2, pi, p, pi);
    const auto sc = sandwich_constants(spec);
    const double q = p / (p - 1.0);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> t = {0.0, 0.25, 0.5, 0.75, 1.0}, v(5);
      v[4] = 0.0;
      for (int i = 3; i >= 0; --i) v[i] = v[i + 1] + 0.5 * U(rng);
      const RadialProfile P(t, v);
      const double phi = tm_functional(P, spec).value;
      auto moment = [&](double e) {
        return 2 * pi * oracle::simpson([&](double r) { return std::pow(std::abs(P(r)), e) * r; }, 0, 1, 20000);
      };
      const double m = moment(sc.pstar);
      CHECK(phi >= sc.c1 * m * (1 - 1e-9));
      CHECK(phi <= sc.c1 * m + sc.C1 * moment(q) + sc.C2 * moment(sc.pstar - q) + 1e-9);
    }
  }
}

TEST_CASE("monotone in u") {
  const auto spec = FunctionalSpec::exact(2, pi);
  const RadialProfile a({0.0, 0.5, 1.0}, {0.6, 0.3, 0.0}), b({0.0, 0.5, 1.0}, {0.7, 0.3, 0.1});
  CHECK(tm_functional(a, spec).value <= tm_functional(b, spec).value);
}

TEST_CASE("grid functional matches the profile value") {
  const auto spec = FunctionalSpec::exact(2, pi);
  const SampledField f = SampledField::sample(Domain::disk(Vec2::Zero(), 1.0), 1.0 / 512,
                                              [](double x, double y) { return std::max(0.0, 0.8 * (1 - std::hypot(x, y))); });
  const double grid = tm_functional(f, spec, Gauge::euclidean()).value;
  const double prof = tm_functional(RadialProfile({0.0, 1.0}, {0.8, 0.0}), spec).value;
  CHECK(grid == doctest::Approx(prof).epsilon(1e-4));
}

TEST_CASE("overflow is counted, not silent") {
  const auto spec = FunctionalSpec::exact(2, pi);
  const auto v = tm_functional(RadialProfile({0.0, 1e-3, 1.0}, {20.0, 19.0, 0.0}), spec);
  CHECK(v.overflow_cells > 0);
  CHECK(std::isfinite(v.log_value));
}

TEST_CASE("singular functional stays below an envelope at unit energy") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto spec = FunctionalSpec::exact(2, pi, 1.0);
  const double envelope = 1.5 * concentration_level(pi, 1.0, 2, 1.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> t = {0.0, 0.1, 0.3, 0.6, 1.0}, v(5);
    v[4] = 0.0;
    for (int i = 3; i >= 0; --i) v[i] = v[i + 1] + U(rng);
    RadialProfile P(t, v);
    P = P.scaled(1.0 / std::sqrt(P.energy(2, pi)));
    CHECK(tm_functional(P, spec).value < envelope);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS(FunctionalSpec::approx(2, pi, 2.5, pi));
  CHECK_THROWS(FunctionalSpec::exact(2, -1.0));
  CHECK_THROWS(FunctionalSpec::exact(2, pi, 2.0));
}
