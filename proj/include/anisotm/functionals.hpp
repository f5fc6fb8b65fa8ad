#pragma once

#include "anisotm/field.hpp"
#include "anisotm/profile.hpp"

namespace anisotm {

struct FunctionalSpec {
  enum class Mode { Exact, Approx };
  int n = 2;
  double beta = 0.0;
  double lambda = 0.0;  // lambda_n or lambda_{n,beta}
  Mode mode = Mode::Exact;
  double p = 0.0;       // approx mode
  double A = 0.0;       // approx mode
  double kappa = 0.0;   // Wulff-ball volume of the gauge
  double log_cap = 700.0;

  // Exact mode with lambda = (1 - beta/n) lambda_n.
  static FunctionalSpec exact(int n, double kappa, double beta = 0.0);
  static FunctionalSpec approx(int n, double kappa, double p, double A, double beta = 0.0);
  void validate() const;
};

struct FunctionalValue {
  double value;           // +inf when the log-value exceeds double range
  double log_value;
  std::size_t overflow_cells;  // cells/segments whose log-integrand exceeded the cap
  double error_estimate;
};

double exp_q(double q, double r);

// Pointwise integrand e^{lambda |s|^{n/(n-1)}} - 1 (exact) or exp_q(alpha_p |s|^{p/(p-1)}) - 1 (approx).
double integrand(const FunctionalSpec& spec, double s);
double log_integrand(const FunctionalSpec& spec, double s);  // log of the exponential part

// Profile on the Wulff ball of radius r, weight F°(x)^{-beta}.
FunctionalValue tm_functional(const RadialProfile& U, const FunctionalSpec& spec, double radius = 1.0);
// Grid field; beta > 0 requires the singular weight centred at `pole`.
FunctionalValue tm_functional(const SampledField& u, const FunctionalSpec& spec, const Gauge& g,
                              const Vec2& pole = Vec2::Zero());

struct SandwichConstants {
  double gamma;  // (n-beta)(p-1)/(n-p)
  double c1;     // lower: Phi_p(s) >= c1 |s|^{p*}
  double C1;     // upper: Phi_p(s) <= c1 |s|^{p*} + C1 |s|^{p/(p-1)} + C2 |s|^{p* - p/(p-1)}
  double C2;
  double pstar;
};
SandwichConstants sandwich_constants(const FunctionalSpec& spec);

}  // namespace anisotm
