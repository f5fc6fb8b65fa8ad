#pragma once

#include <functional>

#include "anisotm/field.hpp"
#include "anisotm/profile.hpp"

namespace anisotm {

StepProfile decreasing_rearrangement(const SampledField& f);

struct Symmetrized {
  RadialProfile profile;  // U(t) = u#(kappa (t r*)^n), t in [0, 1]
  double radius;          // r*, kappa r*^n = |Omega|
  double kappa;
};

// nodes: number of profile nodes, uniform in the Wulff radius.
Symmetrized convex_symmetrization(const SampledField& f, const Gauge& g, int nodes = 257);

// n kappa int_0^{r_outer} integrand(U(r / r_outer)) r^{n-1-beta} dr.
// The profile is read on [0, 1] and stretched to [0, r_outer].
double wulff_radial_integral(const RadialProfile& U, int n, double kappa, double r_outer, double beta,
                             const std::function<double(double)>& integrand, double rel_tol = 1e-12);
double wulff_radial_integral(const RadialProfile& U, const Gauge& g, double r_outer, double beta,
                             const std::function<double(double)>& integrand, double rel_tol = 1e-12);

// Hardy-Sobolev quotient  int F^p(grad u) / (int |u|^{p*}/F°^beta)^{p/p*},  p* = p (n - beta)/(n - p),
// for a Wulff-radial profile on the ball of radius r.
double hardy_sobolev_quotient(const RadialProfile& U, int n, double kappa, double p, double beta,
                              double radius = 1.0);

}  // namespace anisotm
