#pragma once

// Test-side reference computations, written without the library's quadrature.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Composite Simpson on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
  if (m % 2) ++m;
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// sup <x, xi> over the boundary of {F <= 1}, sampled along `m` directions.
// The coarse maximiser is refined by golden-section search on the neighbouring bracket.
inline double polar_by_sup(const std::function<double(double, double)>& F, double x, double y, int m = 200000) {
  auto val = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    return (x * c + y * s) / F(c, s);
  };
  double best = -1e300, arg = 0.0;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * pi * k / m;
    if (val(th) > best) {
      best = val(th);
      arg = th;
    }
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = arg - 2.0 * pi / m, b = arg + 2.0 * pi / m;
  for (int it = 0; it < 100; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (val(c) > val(d)) b = d; else a = c;
  }
  return std::max(best, val(0.5 * (a + b)));
}

// Area of {F°(x) <= 1} by midpoint cell counting in the box [-L, L]^2.
inline double area_by_count(const std::function<double(double, double)>& polar, double L, int m) {
  const double h = 2.0 * L / m;
  long count = 0;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (polar(-L + (i + 0.5) * h, -L + (j + 0.5) * h) <= 1.0) ++count;
  return count * h * h;
}

// Hardy-Sobolev quotient of the radial bubble (1 + r^{(p-b)/(p-1)})^{-(n-p)/(p-b)}, Euclidean,
// by Simpson in s = log r on [-L, L]. Returns int|u'|^p / (int |u|^{p*} r^{-b})^{p/p*}.
inline double bubble_quotient(int n, double p, double b, double L = 80.0, int m = 400000) {
  const double sphere = 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
  const double q = (p - b) / (p - 1.0), e = (n - p) / (p - b);
  const double ps = p * (n - b) / (n - p);
  auto u = [&](double r) { return std::pow(1.0 + std::pow(r, q), -e); };
  auto du = [&](double r) { return e * q * std::pow(r, q - 1.0) * std::pow(1.0 + std::pow(r, q), -e - 1.0); };
  const double I1 =
      sphere * simpson([&](double s) { const double r = std::exp(s); return std::pow(du(r), p) * std::pow(r, n); }, -L, L, m);
  const double I2 = sphere * simpson([&](double s) {
    const double r = std::exp(s);
    return std::pow(u(r), ps) * std::pow(r, n - b);
  }, -L, L, m);
  return I1 / std::pow(I2, p / ps);
}

// Images Green function of the Euclidean unit disk, (1/2pi) log |1 - conj(a) z| / |z - a|.
inline double disk_green(double ax, double ay, double x, double y) {
  const double re = 1.0 - (ax * x + ay * y), im = -(ax * y - ay * x);
  return std::log(std::hypot(re, im) / std::hypot(x - ax, y - ay)) / (2.0 * pi);
}

}  // namespace oracle
