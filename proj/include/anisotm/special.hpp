#pragma once

namespace anisotm::special {

// Lanczos approximation (g = 7, 9 terms). Relative accuracy ~1e-15 on [0.5, 50].
double gamma(double x);
double lgamma(double x);  // log|Gamma(x)|
double digamma(double x);

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

}  // namespace anisotm::special
