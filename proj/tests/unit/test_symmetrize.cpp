#include <doctest.h>

#include <algorithm>
#include <random>

#include "anisotm/symmetrize.hpp"
#include "oracles.hpp"

using namespace anisotm;
using oracle::pi;

namespace {

SampledField random_bumps(std::mt19937_64& rng, double h) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<std::array<double, 4>> b(3);
  for (auto& q : b) q = {U(rng) - 0.5, U(rng) - 0.5, 0.15 + 0.2 * U(rng), 0.5 + U(rng)};
  return SampledField::sample(Domain::disk(Vec2::Zero(), 1.0), h, [&b](double x, double y) {
    double v = 0.0;
    for (const auto& q : b) v += q[3] * std::exp(-((x - q[0]) * (x - q[0]) + (y - q[1]) * (y - q[1])) / (q[2] * q[2]));
    const double w = std::max(0.0, 1.0 - x * x - y * y);
    return v * w * w * w;
  });
}

}  // namespace

TEST_CASE("decreasing rearrangement of three cells") {
  const double vals[] = {3.0, 1.0, 2.0};
  const SampledField f = SampledField::sample(Domain::rectangle(Vec2(0, 0), Vec2(3, 1)), 1.0,
                                              [&vals](double x, double) { return vals[static_cast<int>(x)]; });
  const StepProfile s = decreasing_rearrangement(f);
  CHECK(s.measure() == doctest::Approx(3.0));
  CHECK(s(0.5) == 3.0);
  CHECK(s(1.5) == 2.0);
  CHECK(s(2.5) == 1.0);
}

TEST_CASE("rearrangement matches a sort oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SampledField f = SampledField::on_domain(Domain::rectangle(Vec2(0, 0), Vec2(1, 1)), 1.0 / 64);
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (f.weights[k] > 0) {
      f.values[k] = U(rng);
      pairs.emplace_back(std::abs(f.values[k]), f.weights[k]);
    }
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first > b.first; });
  const StepProfile s = decreasing_rearrangement(f);
  double acc = 0.0;
  for (const auto& [v, w] : pairs) {
    CHECK(s(acc + 0.5 * w) == v);
    acc += w;
  }
}

TEST_CASE("constant field gives a constant profile") {
  const SampledField f = SampledField::sample(Domain::disk(Vec2::Zero(), 1.0), 1.0 / 64, [](double, double) { return 2.5; });
  const Symmetrized s = convex_symmetrization(f, Gauge::euclidean());
  for (double t : {0.0, 0.3, 0.9, 1.0}) CHECK(s.profile(t) == doctest::Approx(2.5));
}

TEST_CASE("Wulff-radial fields are fixed points") {
  Mat A(2, 2);
  A << 2.0, 0.3, 0.3, 1.0;
  const Gauge g = Gauge::quadratic(A);
  const Domain d = Domain::wulff_ball(g, Vec2::Zero(), 1.0);
  const SampledField f = SampledField::sample(d, 1.0 / 256, [&g](double x, double y) { return 1.0 - g.polar2(x, y); });
  const Symmetrized s = convex_symmetrization(f, g);
  CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-3));
  for (double t : {0.1, 0.4, 0.7, 0.95}) CHECK(std::abs(s.profile(t) - (1.0 - t)) < 1e-2);
}

TEST_CASE("radial integrals") {
  const RadialProfile U({0.0, 1.0}, {1.0, 0.0});
  auto sq = [](double v) { return v * v; };
  CHECK(wulff_radial_integral(U, 2, pi, 1.0, 0.0, sq) == doctest::Approx(pi / 6).epsilon(1e-12));
  CHECK(wulff_radial_integral(U, 2, pi, 1.0, 1.0, sq) == doctest::Approx(2 * pi / 3).epsilon(1e-12));
  const RadialProfile Z({0.0, 1.0}, {0.0, 0.0});
  CHECK(wulff_radial_integral(Z, 2, pi, 1.0, 0.0, sq) == 0.0);
  const double direct = 2 * pi * oracle::simpson([](double r) { return (1 - r) * (1 - r) * std::pow(r, 0.5); }, 0, 1, 200000);
  CHECK(wulff_radial_integral(U, 2, pi, 1.0, 0.5, sq) == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("equimeasurability and Polya-Szego on random fields") {
  std::mt19937_64 rng(42);
  Mat A(2, 2);
  A << 1.5, 0.4, 0.4, 0.8;
  const std::vector<Gauge> gauges = {Gauge::euclidean(), Gauge::quadratic(A), Gauge::pnorm(2, 3.0)};
  for (int k = 0; k < 6; ++k) {
    const SampledField f = random_bumps(rng, 1.0 / 128);
    const Gauge& g = gauges[k % 3];
    const Symmetrized s = convex_symmetrization(f, g);
    for (double q : {1.0, 2.0}) {
      auto pw = [q](double v) { return std::pow(std::abs(v), q); };
      CHECK(wulff_radial_integral(s.profile, g, s.radius, 0.0, pw) == doctest::Approx(f.integrate(pw)).epsilon(1e-3));
    }
    CHECK(s.profile.energy(2, g.kappa(), 2.0, s.radius) <= f.dirichlet_energy(g, 2.0) + 1e-6);
  }
}

TEST_CASE("rearrangement preserves order") {
  std::mt19937_64 rng(9);
  const SampledField u = random_bumps(rng, 1.0 / 64);
  SampledField v = u;
  std::uniform_real_distribution<double> U(0.0, 0.3);
  for (auto& x : v.values) x += U(rng);
  const StepProfile su = decreasing_rearrangement(u), sv = decreasing_rearrangement(v);
  for (double s = 0.01; s < su.measure(); s += 0.01) CHECK(su(s) <= sv(s));
}

TEST_CASE("Hardy-Sobolev quotient is bounded below") {
  // any Wulff-radial profile on the Euclidean unit disk, (n, p, beta) = (2, 1.5, 0.5)
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double S = oracle::bubble_quotient(2, 1.5, 0.5);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> t = {0.0, 0.2, 0.5, 0.8, 1.0}, v(5);
    v[4] = 0.0;
    for (int i = 3; i >= 0; --i) v[i] = v[i + 1] + U(rng);
    CHECK(hardy_sobolev_quotient(RadialProfile(t, v), 2, pi, 1.5, 0.5) >= S * (1 - 1e-9));
  }
}
