#pragma once

#include <functional>
#include <memory>

#include "anisotm/green.hpp"
#include "anisotm/profile.hpp"

namespace anisotm {

// u(x) = U(h(x)), h = exp(-(n kappa)^{1/(n-1)} G).
struct TransplantedFunction {
  RadialProfile profile;
  std::shared_ptr<const GreenField> green;
  SampledField samples;
  std::size_t pole_cells = 0;  // samples within 4h of the pole, assigned through the Gamma part only

  double value(double x, double y) const;
  Vec2 gradient(double x, double y) const;
};

TransplantedFunction transplant(const RadialProfile& U, std::shared_ptr<const GreenField> gf, double h = 0);

struct EnergyOptions {
  double h = 0;     // quadrature spacing; 0 means the Green field's spacing
  int refine = 2;
};

// int_Omega F^p(grad u): chain rule with the exact profile slopes, cells split along the
// level curves h(x) = t_k so that each piece sees a single slope.
double dirichlet_energy(const TransplantedFunction& u, double p, const EnergyOptions& opt = {});
double dirichlet_energy(const SampledField& u, const Gauge& g, double p);

struct MassComparison {
  double omega_integral;     // int_Omega H(u)
  double ball_integral;      // n kappa int_0^rho H(U(t/rho)) t^{n-1} dt
  double rescaled_integral;  // rho^n int_{unit Wulff ball} H(U)
};

MassComparison mass_comparison(const RadialProfile& U, std::shared_ptr<const GreenField> gf,
                               const std::function<double(double)>& H, const EnergyOptions& opt = {});

}  // namespace anisotm
