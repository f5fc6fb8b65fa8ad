#include "anisotm/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <map>
#include <mutex>
#include <numbers>

#include "anisotm/errors.hpp"

namespace anisotm {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 32) {
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(v[i]);
    return s.value();
  }
  const std::size_t m = n / 2;
  return pairwise_sum(v, m) + pairwise_sum(v + m, n - m);
}

Integral integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (a == b) return {0.0, 0.0};
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &err);
  return {v, err};
}

Integral integrate_floor(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                         unsigned max_depth) {
  if (a == b) return {0.0, 0.0};
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err);
  if (max_depth == 0 || err <= std::max(rel_tol * std::abs(v), abs_tol)) return {v, err};
  const double m = 0.5 * (a + b);
  const Integral l = integrate_floor(f, a, m, rel_tol, 0.5 * abs_tol, max_depth - 1);
  const Integral r = integrate_floor(f, m, b, rel_tol, 0.5 * abs_tol, max_depth - 1);
  return {l.value + r.value, l.error + r.error};
}

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  if (order < 1 || order > 256) throw InputError("gauss_legendre: order out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(order);
  r.w.resize(order);
  // Newton on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[order - 1 - i] = z;
    r.w[i] = w;
    r.w[order - 1 - i] = w;
  }
  if (order % 2 == 1) r.x[order / 2] = 0.0;
  return cache.emplace(order, std::move(r)).first->second;
}

}  // namespace anisotm
