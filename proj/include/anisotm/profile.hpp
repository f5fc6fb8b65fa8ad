#pragma once

#include <functional>
#include <vector>

namespace anisotm {

// Piecewise-linear U on [0, 1]; nodes strictly increasing, first 0, last 1.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(std::vector<double> t, std::vector<double> v);

  const std::vector<double>& nodes() const { return t_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t size() const { return t_.size(); }

  double operator()(double t) const;
  // Slope on the segment containing t (right-continuous; last segment at t = 1).
  double slope(double t) const;
  double slope_of_segment(std::size_t k) const { return (v_[k + 1] - v_[k]) / (t_[k + 1] - t_[k]); }
  std::size_t segment(double t) const;

  bool zero_trace(double tol = 0.0) const { return std::abs(v_.back()) <= tol; }
  double max_abs() const;
  RadialProfile scaled(double s) const;

  // n kappa r^{n-p} int_0^1 |U'|^p t^{n-1} dt, exact per segment.
  double energy(int n, double kappa, double p = -1.0, double radius = 1.0) const;

 private:
  std::vector<double> t_, v_;
};

// Nonincreasing step function on [0, |Omega|]: value[k] on [breaks[k], breaks[k+1]).
struct StepProfile {
  std::vector<double> breaks;
  std::vector<double> values;
  double operator()(double s) const;
  double measure() const { return breaks.back(); }
};

}  // namespace anisotm
