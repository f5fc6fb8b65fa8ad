#include <doctest.h>

#include <random>

#include "anisotm/gauge.hpp"
#include "oracles.hpp"

using namespace anisotm;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Mat diag41() {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 4.0;
  A(1, 1) = 1.0;
  return A;
}

}  // namespace

TEST_CASE("gauge values") {
  CHECK(Gauge::euclidean().eval(v2(3, 4)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(Gauge::parse("pnorm:inf").eval(v2(1, -2)) == doctest::Approx(2.0));
  CHECK(Gauge::quadratic(diag41()).eval(v2(1, 0)) == doctest::Approx(2.0));
}

TEST_CASE("polar values") {
  CHECK(Gauge::euclidean().polar(v2(3, 4)) == doctest::Approx(5.0));
  const Gauge linf = Gauge::parse("pnorm:inf");
  CHECK(linf.polar(v2(1, -2)) == doctest::Approx(3.0));
  const double sup = oracle::polar_by_sup([&](double x, double y) { return linf.eval2(x, y); }, 1, -2);
  CHECK(linf.polar(v2(1, -2)) == doctest::Approx(sup).epsilon(1e-8));
  CHECK(Gauge::quadratic(diag41()).polar(v2(1, 0)) == doctest::Approx(0.5));
}

TEST_CASE("gradients") {
  const Vec g = Gauge::euclidean().grad(v2(3, 4));
  CHECK(g[0] == doctest::Approx(0.6));
  CHECK(g[1] == doctest::Approx(0.8));
  const Vec q = Gauge::quadratic(diag41()).grad(v2(1, 0));
  CHECK(q[0] == doctest::Approx(2.0));
  CHECK(q[1] == doctest::Approx(0.0));
  const Vec p4 = Gauge::pnorm(2, 4.0).grad(v2(1, 1));
  CHECK(p4[0] == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-14));
  CHECK(p4[1] == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-14));
}

TEST_CASE("kappa") {
  CHECK(Gauge::euclidean().kappa() == doctest::Approx(oracle::pi).epsilon(1e-14));
  const Gauge linf = Gauge::parse("pnorm:inf");
  CHECK(linf.kappa() == doctest::Approx(2.0).epsilon(1e-12));
  const double counted = oracle::area_by_count([&](double x, double y) { return linf.polar2(x, y); }, 1.01, 2000);
  CHECK(linf.kappa() == doctest::Approx(counted).epsilon(2e-3));
  CHECK(Gauge::quadratic(diag41()).kappa() == doctest::Approx(2.0 * oracle::pi).epsilon(1e-13));
  const Gauge p3 = Gauge::pnorm(2, 3.0);
  const double c3 = oracle::area_by_count([&](double x, double y) { return p3.polar2(x, y); }, 1.2, 3000);
  CHECK(p3.kappa() == doctest::Approx(c3).epsilon(2e-3));
  CHECK(Gauge::euclidean(3).kappa() == doctest::Approx(4.0 * oracle::pi / 3.0).epsilon(1e-14));
}

TEST_CASE("anisotropic perimeter") {
  const Gauge e = Gauge::euclidean();
  CHECK(aniso_perimeter({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, e) == doctest::Approx(4.0));
  const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  const double P = aniso_perimeter(tri, e);
  CHECK(P == doctest::Approx(2.0 + std::sqrt(2.0)));
  CHECK(P >= 2.0 * std::sqrt(oracle::pi) * std::sqrt(0.5));
  std::vector<Vec2> ngon;
  for (int k = 0; k < 4096; ++k) ngon.emplace_back(std::cos(2 * oracle::pi * k / 4096), std::sin(2 * oracle::pi * k / 4096));
  CHECK(std::abs(aniso_perimeter(ngon, e) - 2 * oracle::pi) < 1e-4);
}

TEST_CASE("homogeneity, Euler identity and duality on random points") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> T(-5.0, 5.0);
  Mat A(2, 2);
  A << 2.0, 0.7, 0.7, 1.0;
  const std::vector<Gauge> smooth = {Gauge::euclidean(), Gauge::pnorm(2, 1.5), Gauge::pnorm(2, 3.0),
                                     Gauge::pnorm(2, 4.0), Gauge::quadratic(A), Gauge::pnorm(3, 3.0)};
  for (const auto& g : smooth) {
    for (int k = 0; k < 200; ++k) {
      Vec x(g.dimension());
      for (auto& c : x) c = N(rng);
      const double t = T(rng), f = g.eval(x);
      CHECK(std::abs(g.eval(t * x) - std::abs(t) * f) <= 1e-10 * f);
      CHECK(std::abs(x.dot(g.grad(x)) - f) <= 1e-8 * f);
      CHECK(std::abs(g.eval(g.grad_polar(x)) - 1.0) <= 1e-8);
      CHECK(std::abs(g.polar(g.grad(x)) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("polar of the polar reproduces F") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 2.0 * oracle::pi);
  Mat A(2, 2);
  A << 1.5, -0.3, -0.3, 0.6;
  for (const Gauge& g : {Gauge::pnorm(2, 1.5), Gauge::pnorm(2, 4.0), Gauge::quadratic(A)}) {
    for (int k = 0; k < 200; ++k) {
      const double th = U(rng);
      const double x = 1.7 * std::cos(th), y = 1.7 * std::sin(th);
      const double pp = oracle::polar_by_sup([&](double a, double b) { return g.polar2(a, b); }, x, y, 20000);
      CHECK(pp == doctest::Approx(g.eval2(x, y)).epsilon(1e-6));
    }
  }
}

TEST_CASE("polytope gauge") {
  const Gauge hex = Gauge::parse("polytope:1,0;0.5,0.9;-0.5,0.9;-1,0;-0.5,-0.9;0.5,-0.9");
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Vec x = v2(N(rng), N(rng));
    const double f = hex.eval(x);
    CHECK(std::abs(hex.eval(-2.5 * x) - 2.5 * f) <= 1e-10 * f);
    CHECK(std::abs(x.dot(hex.grad(x)) - f) <= 1e-8 * f);
  }
  const double counted = oracle::area_by_count([&](double x, double y) { return hex.polar2(x, y); }, 1.5, 3000);
  CHECK(hex.kappa() == doctest::Approx(counted).epsilon(2e-3));
}

TEST_CASE("isoperimetric inequality on random convex polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Mat A(2, 2);
  A << 2.0, 0.5, 0.5, 1.0;
  const std::vector<Gauge> gauges = {Gauge::euclidean(), Gauge::quadratic(A), Gauge::pnorm(2, 3.0)};
  for (int k = 0; k < 100; ++k) {
    const int m = 3 + static_cast<int>(10 * U(rng));
    std::vector<double> th(m);
    for (auto& t : th) t = 2.0 * oracle::pi * U(rng);
    std::sort(th.begin(), th.end());
    // points on an ellipse in angular order are in convex position
    const double a = 0.3 + 2.0 * U(rng), b = 0.3 + 2.0 * U(rng), cx = U(rng), cy = U(rng);
    std::vector<Vec2> poly;
    for (double t : th) poly.emplace_back(cx + a * std::cos(t), cy + b * std::sin(t));
    if (polygon_area(poly) <= 1e-12) continue;
    const Gauge& g = gauges[k % gauges.size()];
    const double P = aniso_perimeter(poly, g), E = polygon_area(poly);
    CHECK(P >= 2.0 * std::sqrt(g.kappa()) * std::sqrt(E) - 1e-9);
  }
}

TEST_CASE("gauge spec errors") {
  CHECK_THROWS(Gauge::parse("pnorm:0.5"));
  CHECK_THROWS(Gauge::parse("quadratic:1,2,1"));
  CHECK_THROWS(Gauge::parse("nonsense"));
  CHECK(Gauge::parse(Gauge::quadratic(diag41()).spec()).eval(v2(1, 0)) == doctest::Approx(2.0));
}
