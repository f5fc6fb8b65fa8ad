#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace anisotm {

// Neumaier compensated accumulator; fixed order in, fixed result out.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

struct Integral {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod (61 points) on [a, b].
Integral integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12,
                   unsigned max_depth = 18);
// Bisection over single Gauss-Kronrod panels until error <= max(rel_tol |I|, abs_tol) per panel.
Integral integrate_floor(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                         unsigned max_depth = 18);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int order);

}  // namespace anisotm
