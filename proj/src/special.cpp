#include "anisotm/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "anisotm/errors.hpp"

namespace anisotm::special {
namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// A(z) = c0 + sum c_k/(z+k) and its derivative, for the shifted argument z = x - 1.
void lanczos_sum(double z, double& a, double& da) {
  a = kCoef[0];
  da = 0.0;
  for (int k = 1; k < 9; ++k) {
    const double d = z + k;
    a += kCoef[k] / d;
    da -= kCoef[k] / (d * d);
  }
}

}  // namespace

double lgamma(double x) {
  if (!std::isfinite(x)) throw InputError("lgamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw InputError("lgamma: pole at non-positive integer");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - lgamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a, da;
  lanczos_sum(z, a, da);
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw InputError("gamma: pole at non-positive integer");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  const double z = x - 1.0;
  double a, da;
  lanczos_sum(z, a, da);
  const double t = z + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double digamma(double x) {
  if (!std::isfinite(x)) throw InputError("digamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw InputError("digamma: pole at non-positive integer");
  if (x < 0.5) {
    // psi(1-x) - psi(x) = pi cot(pi x)
    return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  }
  // Shift up so the Lanczos derivative is used where it is most accurate.
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double z = x - 1.0;
  double a, da;
  lanczos_sum(z, a, da);
  const double t = z + kG + 0.5;
  return acc + std::log(t) + (z + 0.5) / t - 1.0 + da / a;
}

}  // namespace anisotm::special
