#include "anisotm/constants.hpp"

#include <cmath>
#include <numbers>

#include "anisotm/errors.hpp"
#include "anisotm/gauge.hpp"
#include "anisotm/special.hpp"

namespace anisotm {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw InputError(msg);
}

double log_lambda(int n, double kappa) {
  return (static_cast<double>(n) / (n - 1)) * std::log(static_cast<double>(n)) + std::log(kappa) / (n - 1);
}

}  // namespace

double harmonic_sum(int n) {
  require(n >= 1, "harmonic_sum: n must be >= 1");
  double s = 0.0;
  for (int k = n - 1; k >= 1; --k) s += 1.0 / k;
  return s;
}

SharpConstants sharp_constants(int n, double kappa, double beta) {
  require(n >= 2, "sharp_constants: n must be >= 2");
  require(kappa > 0.0 && std::isfinite(kappa), "sharp_constants: kappa must be positive");
  require(beta >= 0.0 && beta < n, "sharp_constants: beta must lie in [0, n)");
  SharpConstants c{};
  c.n = n;
  c.kappa = kappa;
  c.beta = beta;
  c.lambda_n = std::exp(log_lambda(n, kappa));
  c.lambda_n_beta = (1.0 - beta / n) * c.lambda_n;
  c.omega_n = unit_ball_volume(n);
  c.omega_sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / special::gamma(0.5 * n);
  if (std::abs(n * c.omega_n - c.omega_sphere) > 1e-12 * c.omega_sphere)
    throw std::logic_error("sharp_constants: sphere measure inconsistent with ball volume");
  c.alpha_n = n * std::pow(c.omega_sphere, 1.0 / (n - 1));
  c.harmonic_sum = harmonic_sum(n);
  return c;
}

double radius_from_robin(int n, double kappa, double tau) {
  return std::exp(-std::pow(n * kappa, 1.0 / (n - 1)) * tau);
}

double robin_from_radius(int n, double kappa, double rho) {
  require(rho > 0.0, "robin_from_radius: rho must be positive");
  return -std::pow(n * kappa, -1.0 / (n - 1)) * std::log(rho);
}

double log_talenti_constant(int n, double p) {
  require(n >= 2, "talenti_constant: n must be >= 2");
  require(p > 1.0 && p < n, "talenti_constant: p must lie in (1, n)");
  using special::lgamma;
  const double nd = n;
  const double inner = std::log(nd) + 0.5 * nd * std::log(std::numbers::pi) + lgamma(nd / p) +
                       lgamma(nd + 1.0 - nd / p) - lgamma(1.0 + 0.5 * nd) - lgamma(nd);
  return ((nd - p) / nd) * std::log(nd) + (p - 1.0) * std::log((nd - p) / (p - 1.0)) + (p / nd) * inner;
}

double talenti_constant(int n, double p) { return std::exp(log_talenti_constant(n, p)); }

double log_alvino_constant(int n, double p, double beta) {
  require(n >= 2, "alvino_constant: n must be >= 2");
  require(beta >= 0.0 && beta < p && p < n, "alvino_constant: need 0 <= beta < p < n");
  require(p > 1.0, "alvino_constant: p must exceed 1");
  using special::lgamma;
  const double nd = n;
  const double pb = p - beta;
  const double inner = std::log(nd) + 0.5 * nd * std::log(std::numbers::pi) + lgamma((nd - beta) / pb) +
                       lgamma((p * (nd - beta) - nd + p) / pb) - lgamma(1.0 + 0.5 * nd) -
                       lgamma(p * (nd - beta) / pb);
  return ((nd - p) / (nd - beta)) * std::log(nd - beta) + (p - 1.0) * std::log((nd - p) / (p - 1.0)) +
         (pb / (nd - beta)) * inner;
}

double alvino_constant(int n, double p, double beta) { return std::exp(log_alvino_constant(n, p, beta)); }

double np_p_min(int n, double beta) {
  if (beta == 0.0) return 2.0 * n / (n + 1.0);
  return (2.0 * n - beta) / (n - beta + 1.0);
}

double alpha_p(double A, int n, double p, double beta, double kappa) {
  require(A > 0.0, "alpha_p: A must be positive");
  require(beta >= 0.0 && beta < n, "alpha_p: beta must lie in [0, n)");
  const double nd = n;
  const double base = ((nd - 1.0) / nd) * log_lambda(n, kappa) + (1.0 / p - 1.0 / nd) * std::log(A);
  return (1.0 - beta / nd) * std::exp(base * p / (p - 1.0));
}

double log_np_value(double A, int n, double p, double beta, double kappa) {
  require(n >= 2, "np_value: n must be >= 2");
  require(A > 0.0 && kappa > 0.0, "np_value: A and kappa must be positive");
  require(beta >= 0.0 && beta < n, "np_value: beta must lie in [0, n)");
  require(p > np_p_min(n, beta) && p < n, "np_value: p outside the admissible range");
  const double nd = n;
  const double log_omega = std::log(unit_ball_volume(n));
  const double log_ratio = std::log(kappa) - log_omega;  // log(kappa/omega)
  const double log_alpha = std::log(alpha_p(A, n, p, beta, kappa));
  if (beta == 0.0) {
    const double gamma = nd * (p - 1.0) / (nd - p);
    const double t1 = gamma * (std::log((nd - p) / (nd * (p - 1.0))) + log_alpha);
    const double t2 = -(nd / (nd - p)) * ((p / nd) * log_ratio + log_talenti_constant(n, p));
    return t1 + t2;
  }
  // N_{p,beta}: exponents follow p*(beta) = p (n - beta)/(n - p).
  require(beta < p, "np_value: beta must be below p");
  const double gamma = (nd - beta) * (p - 1.0) / (nd - p);
  const double t1 = gamma * (std::log((nd - p) / ((nd - beta) * (p - 1.0))) + log_alpha);
  const double t2 =
      -((nd - beta) / (nd - p)) * (((p - beta) / (nd - beta)) * log_ratio + log_alvino_constant(n, p, beta));
  return t1 + t2;
}

double np_value(double A, int n, double p, double beta, double kappa) {
  return std::exp(log_np_value(A, n, p, beta, kappa));
}

double np_limit(double A, int n, double beta, double kappa) {
  require(beta >= 0.0 && beta < n, "np_limit: beta must lie in [0, n)");
  const double hs = harmonic_sum(n);
  if (beta == 0.0) return A * std::exp(hs);
  const double nd = n;
  return (nd / (nd - beta)) * std::pow(kappa, beta / nd) * std::pow(A, (nd - beta) / nd) * std::exp(hs);
}

double concentration_level(double kappa, double rho, int n, double beta) {
  require(rho > 0.0 && kappa > 0.0, "concentration_level: rho and kappa must be positive");
  require(beta >= 0.0 && beta < n, "concentration_level: beta must lie in [0, n)");
  const double e = std::exp(harmonic_sum(n));
  if (beta == 0.0) return kappa * std::pow(rho, n) * e;
  return (n / (n - beta)) * std::pow(rho, n - beta) * kappa * e;
}

}  // namespace anisotm
