#include "anisotm/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"

namespace anisotm {

RadialProfile::RadialProfile(std::vector<double> t, std::vector<double> v) : t_(std::move(t)), v_(std::move(v)) {
  if (t_.size() < 2 || t_.size() != v_.size()) throw InputError("profile: need >= 2 nodes and matching values");
  if (t_.front() != 0.0 || t_.back() != 1.0) throw InputError("profile: nodes must start at 0 and end at 1");
  for (std::size_t k = 0; k + 1 < t_.size(); ++k)
    if (!(t_[k + 1] > t_[k])) throw InputError("profile: nodes must be strictly increasing");
  for (double x : v_)
    if (!std::isfinite(x)) throw InputError("profile: values must be finite");
}

std::size_t RadialProfile::segment(double t) const {
  if (t <= t_.front()) return 0;
  if (t >= t_.back()) return t_.size() - 2;
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  return static_cast<std::size_t>(it - t_.begin()) - 1;
}

double RadialProfile::operator()(double t) const {
  if (t <= 0.0) return v_.front();
  if (t >= 1.0) return v_.back();
  const std::size_t k = segment(t);
  const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
  return (1.0 - w) * v_[k] + w * v_[k + 1];
}

double RadialProfile::slope(double t) const { return slope_of_segment(segment(t)); }

double RadialProfile::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

RadialProfile RadialProfile::scaled(double s) const {
  std::vector<double> v = v_;
  for (double& x : v) x *= s;
  return RadialProfile(t_, std::move(v));
}

double RadialProfile::energy(int n, double kappa, double p, double radius) const {
  if (p < 0) p = n;
  if (!(p > 1.0)) throw InputError("profile energy: p must exceed 1");
  CompensatedSum acc;
  for (std::size_t k = 0; k + 1 < t_.size(); ++k) {
    const double s = std::abs(slope_of_segment(k));
    if (s == 0.0) continue;
    acc.add(std::pow(s, p) * (std::pow(t_[k + 1], n) - std::pow(t_[k], n)) / n);
  }
  return n * kappa * std::pow(radius, n - p) * acc.value();
}

double StepProfile::operator()(double s) const {
  if (s < 0.0 || values.empty()) return values.empty() ? 0.0 : values.front();
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), s);
  std::size_t k = static_cast<std::size_t>(it - breaks.begin());
  if (k == 0) return values.front();
  k -= 1;
  if (k >= values.size()) return values.back();
  return values[k];
}

StepProfile decreasing_rearrangement(const SampledField& f) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (f.weights[k] > 0.0) {
      if (!std::isfinite(f.values[k])) throw InputError("rearrangement: non-finite sample");
      idx.push_back(k);
    }
  }
  if (idx.empty()) throw InputError("rearrangement: empty field");
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(f.values[a]) > std::abs(f.values[b]); });
  StepProfile sp;
  sp.breaks.reserve(idx.size() + 1);
  sp.values.reserve(idx.size());
  CompensatedSum acc;
  sp.breaks.push_back(0.0);
  for (std::size_t k : idx) {
    acc.add(f.weights[k]);
    sp.breaks.push_back(acc.value());
    sp.values.push_back(std::abs(f.values[k]));
  }
  return sp;
}

Symmetrized convex_symmetrization(const SampledField& f, const Gauge& g, int nodes) {
  if (g.dimension() != 2) throw CapabilityError("convex_symmetrization: sampled fields are planar");
  if (nodes < 2) throw InputError("convex_symmetrization: need >= 2 nodes");
  const StepProfile sp = decreasing_rearrangement(f);
  const double kappa = g.kappa();
  const double area = sp.measure();
  const double rstar = std::sqrt(area / kappa);
  // Nodes uniform in t, read off at measure s = t^n |Omega|.
  std::vector<double> t(nodes), v(nodes);
  for (int k = 0; k < nodes; ++k) {
    t[k] = static_cast<double>(k) / (nodes - 1);
    const double s = t[k] * t[k] * area;
    v[k] = sp(std::min(s, std::nextafter(area, 0.0)));
  }
  t.back() = 1.0;
  return {RadialProfile(std::move(t), std::move(v)), rstar, kappa};
}

double wulff_radial_integral(const RadialProfile& U, int n, double kappa, double r_outer, double beta,
                             const std::function<double(double)>& integrand, double rel_tol) {
  if (!(beta >= 0.0 && beta < n)) throw InputError("wulff_radial_integral: beta must lie in [0, n)");
  if (!(r_outer > 0.0)) throw InputError("wulff_radial_integral: radius must be positive");
  const auto& t = U.nodes();
  const double m = n - beta;
  // per segment; s = t^{n-beta} removes the weight when it is singular
  const bool subst = beta > n - 1.0;
  auto seg = [&](std::size_t k, double abs_tol, unsigned depth) {
    const double a = t[k], b = t[k + 1];
    if (!subst)
      return integrate_floor([&](double x) { return integrand(U(x)) * std::pow(x, n - 1.0 - beta); }, a, b, rel_tol,
                             abs_tol, depth);
    return integrate_floor([&](double s) { return integrand(U(std::pow(s, 1.0 / m))) / m; }, std::pow(a, m),
                           std::pow(b, m), rel_tol, abs_tol, depth);
  };
  // coarse pass sets an absolute floor, so segments far below the total do not chase rounding noise
  CompensatedSum coarse;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) coarse.add(std::abs(seg(k, 0.0, 0).value));
  const double floor = rel_tol * coarse.value() / static_cast<double>(t.size() - 1);
  CompensatedSum acc;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) acc.add(seg(k, floor, 18).value);
  return n * kappa * std::pow(r_outer, m) * acc.value();
}

double wulff_radial_integral(const RadialProfile& U, const Gauge& g, double r_outer, double beta,
                             const std::function<double(double)>& integrand, double rel_tol) {
  return wulff_radial_integral(U, g.dimension(), g.kappa(), r_outer, beta, integrand, rel_tol);
}

double hardy_sobolev_quotient(const RadialProfile& U, int n, double kappa, double p, double beta, double radius) {
  if (!(p > 1.0 && p < n && beta >= 0.0 && beta < p)) throw InputError("hardy_sobolev_quotient: need 0 <= beta < p, 1 < p < n");
  const double pstar = p * (n - beta) / (n - p);
  const double num = U.energy(n, kappa, p, radius);
  const double den =
      wulff_radial_integral(U, n, kappa, radius, beta, [pstar](double u) { return std::pow(std::abs(u), pstar); });
  return num / std::pow(den, p / pstar);
}

}  // namespace anisotm
