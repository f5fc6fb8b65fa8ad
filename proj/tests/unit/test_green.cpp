#include <doctest.h>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/green.hpp"
#include "oracles.hpp"

using namespace anisotm;
using oracle::pi;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("Wulff-ball Green function") {
  const Gauge e = Gauge::euclidean();
  CHECK(wulff_green(e, v2(0, 0), 1.0, v2(0.5, 0)) == doctest::Approx(std::log(2.0) / (2 * pi)).epsilon(1e-14));
  CHECK(std::abs(wulff_green(e, v2(0, 0), 1.0, v2(0, 1))) < 1e-15);
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 4.0;
  A(1, 1) = 1.0;
  const Gauge q = Gauge::quadratic(A);
  // F°(y) = e^{-1} along the first axis: y1 / 2 = e^{-1}
  CHECK(wulff_green(q, v2(0, 0), 1.0, v2(2.0 * std::exp(-1.0), 0)) == doctest::Approx(1.0 / (4 * pi)).epsilon(1e-13));
}

TEST_CASE("finite-difference Robin function on the disk") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  const GreenField c = solve_robin(disk, Gauge::euclidean(), Vec2::Zero(), 1.0 / 256);
  CHECK(std::abs(c.tau()) < 1e-3);
  CHECK(std::abs(c.rho() - 1.0) < 1e-3);
  const GreenField o = solve_robin(disk, Gauge::euclidean(), Vec2(0.5, 0.0), 1.0 / 256);
  CHECK(std::abs(o.rho() - 0.75) < 1e-3);
  // against the images formula away from the pole
  double sup = 0.0;
  for (double x = -0.95; x <= 0.95; x += 0.05)
    for (double y = -0.95; y <= 0.95; y += 0.05) {
      if (x * x + y * y > 0.95 * 0.95 || std::hypot(x - 0.5, y) < 3.0 / 256) continue;
      sup = std::max(sup, std::abs(o.G(x, y) - oracle::disk_green(0.5, 0.0, x, y)));
    }
  CHECK(sup <= 5e-3);
}

TEST_CASE("images Green function") {
  const GreenField g = images_green(Domain::disk(Vec2::Zero(), 1.0), Vec2(0.5, 0.0), 1.0 / 256);
  CHECK(g.rho() == doctest::Approx(0.75).epsilon(1e-12));
  for (auto [x, y] : {std::pair{0.1, 0.2}, {-0.7, 0.3}, {0.55, -0.1}})
    CHECK(g.G(x, y) == doctest::Approx(oracle::disk_green(0.5, 0.0, x, y)).epsilon(1e-12));
}

TEST_CASE("harmonic radius") {
  Mat A(2, 2);
  A << 2.0, 0.4, 0.4, 1.0;
  const Gauge q = Gauge::quadratic(A);
  CHECK(harmonic_radius(Domain::wulff_ball(q, Vec2(0.2, -0.1), 0.3), q, Vec2(0.2, -0.1)) == doctest::Approx(0.3));
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  CHECK(std::abs(harmonic_radius(disk, Gauge::euclidean(), Vec2(0.5, 0.0), 1.0 / 256) - 0.75) < 1e-3);
  double best = 0.0;
  Vec2 arg;
  for (double x : {-0.25, 0.0, 0.25})
    for (double y : {-0.25, 0.0, 0.25}) {
      const double r = harmonic_radius(disk, Gauge::euclidean(), Vec2(x, y), 1.0 / 128);
      if (r > best) {
        best = r;
        arg = Vec2(x, y);
      }
    }
  CHECK(arg.norm() == 0.0);
  CHECK(std::abs(best - 1.0) < 1e-3);
}

TEST_CASE("square: Richardson self-consistency") {
  const Domain sq = Domain::parse("square", Gauge::euclidean());
  double rho[3];
  int k = 0;
  for (double h : {1.0 / 64, 1.0 / 128, 1.0 / 256}) rho[k++] = solve_robin(sq, Gauge::euclidean(), Vec2(0.5, 0.5), h).rho();
  const double extrap = rho[2] + (rho[2] - rho[1]) / 3.0;
  CHECK(std::abs(rho[2] - extrap) < 1e-3);
  CHECK(std::abs(rho[1] + (rho[1] - rho[0]) / 3.0 - extrap) < 1e-3);
}

TEST_CASE("level-set diagnostics") {
  const GreenField disk = images_green(Domain::disk(Vec2::Zero(), 1.0), Vec2::Zero(), 1.0 / 256);
  const auto d = level_set_diagnostics(disk, 0.2);
  CHECK(std::abs(d.energy_below - 0.2) <= 1e-4);
  CHECK(std::abs(d.isoperimetric_ratio - 1.0) <= 1e-3);
  const GreenField sq = solve_robin(Domain::rectangle(Vec2(-1, -1), Vec2(1, 1)), Gauge::euclidean(), Vec2::Zero(), 1.0 / 256);
  const double tmax = level_set_t_max(sq);
  const auto far = level_set_diagnostics(sq, 0.9 * tmax);
  CHECK(std::abs(far.radius_ratio - 1.0) <= 5e-2);
  CHECK(std::abs(far.gradient_ratio_dev) <= 5e-2);
  CHECK_THROWS_AS(level_set_diagnostics(sq, 1.1 * tmax), InputError);
}

TEST_CASE("level sets are nested") {
  const GreenField g = solve_robin(Domain::rectangle(Vec2(0, 0), Vec2(2, 1)), Gauge::euclidean(), Vec2(0.7, 0.4), 1.0 / 128);
  const SampledField G = g.sample_G();
  for (double t1 : {0.05, 0.1, 0.2})
    for (std::size_t k = 0; k < G.values.size(); ++k)
      if (G.weights[k] > 0 && G.values[k] >= t1 + 0.05) CHECK(G.values[k] >= t1);
  const auto a1 = level_set_diagnostics(g, 0.1).area_above, a2 = level_set_diagnostics(g, 0.2).area_above;
  CHECK(a2 < a1);
}

TEST_CASE("boundary consistency") {
  const GreenField g = solve_robin(Domain::rectangle(Vec2(0, 0), Vec2(1, 1)), Gauge::euclidean(), Vec2(0.3, 0.6), 1.0 / 256);
  double grad = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double s = (k + 0.5) / 400, in = 2.0 / 256;
    for (Vec2 p : {Vec2(s, in), Vec2(s, 1 - in), Vec2(in, s), Vec2(1 - in, s)}) grad = std::max(grad, g.gradG(p.x(), p.y()).norm());
  }
  CHECK(g.info.boundary_max <= 10.0 / 256 * grad);
}

TEST_CASE("pole validation") {
  const Domain disk = Domain::disk(Vec2::Zero(), 1.0);
  CHECK_THROWS_AS(solve_robin(disk, Gauge::euclidean(), Vec2(1.5, 0.0), 1.0 / 64), InputError);
  CHECK_THROWS_AS(solve_robin(disk, Gauge::pnorm(2, 3.0), Vec2(0.5, 0.0), 1.0 / 64), CapabilityError);
}
