#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anisotm/green.hpp"
#include "anisotm/profile.hpp"

namespace anisotm {

struct PsiSpec {
  std::shared_ptr<const GreenField> green;  // pole = concentration point
  double epsilon = 1e-3;
  double R = 0.0;     // 0 means epsilon^{-1/2}
  double beta = 0.0;
  double h = 0.0;     // grid spacing for the far region and the samples; 0 means the Green field's
  int angles = 256;   // Wulff-polar quadrature near the pole
  bool sample = true;
};

struct PsiReport {
  double epsilon, R, beta;
  double P;               // lambda_n / (n^{n/(n-1)} (1 - beta/n)^{1/(n-1)})
  double s;               // (n - beta)/(n - 1)
  double c, b;
  double c_pow;           // c^{n/(n-1)}
  double c_pow_expansion; // -(n/lambda_n) log eps - ((n-1)/lambda_nb) sum + (1/lambda_nb) log(n kappa/(n-beta)) - H0
  double b_expansion;     // +((n-1)/lambda_nb) sum
  double remainder_bound; // (P R^s)^{-1}
  double H0;              // tau
  double inner_energy;          // closed form ((n-1)/lambda_nb) J(P R^s) / c^{n/(n-1)}
  double inner_energy_quadrature;
  double outer_energy;
  double energy;          // total, 1 by construction up to quadrature
  double energy_check;    // direct re-quadrature of F(grad psi)^n with the final c, b
  double continuity_jump;
  double r_switch;        // Wulff-polar part covers R eps <= F° <= r_switch
};

class PsiFunction {
 public:
  PsiFunction(std::shared_ptr<const GreenField> gf, const PsiReport& r);
  double value(double x, double y) const;
  Vec2 grad(double x, double y) const;
  // radial inner cap as a function of the Wulff radius r <= R eps
  double inner(double r) const;
  double inner_slope(double r) const;
  // outer w with psi = c^{-1/(n-1)} w, and its gradient
  double outer_w(double x, double y, double r) const;
  Vec2 outer_grad_w(double x, double y, double r) const;
  const PsiReport& report() const { return rep_; }
  const GreenField& green() const { return *gf_; }

 private:
  std::shared_ptr<const GreenField> gf_;
  PsiReport rep_;
  double lambda_nb_;
};

struct PsiResult {
  PsiFunction psi;
  PsiReport report;
  std::optional<SampledField> samples;  // when PsiSpec::sample is set
};

PsiResult build_psi(const PsiSpec& spec);

struct PhiParts {
  double inner, outer, total;
  std::size_t overflow;
};
PhiParts psi_functional(const PsiFunction& psi, double beta, double h = 0.0, int angles = 256);

// Energy of psi outside B(x0, delta).
double psi_tail_energy(const PsiFunction& psi, double delta, double h = 0.0, int angles = 256);

struct SweepEntry {
  double epsilon, R;
  double phi, phi_inner, phi_outer;
  double energy, tail_energy;
  double c, b, c_pow, c_pow_expansion;
  double continuity_jump;
  double inner_energy, inner_energy_quadrature;
};

struct SweepResult {
  double beta, rho, level;
  std::vector<SweepEntry> entries;
  double extrapolated;      // limit of phi = L + K/|log eps| through the two smallest eps
  double extrapolated3;     // L + K1/l + K2/l^2 through the three smallest eps, diagnostic
  double rel_error;
  double tail_delta;
  bool tail_monotone;       // tail energy decreases along the list
  bool approach_monotone;   // |phi - level| decreases over the last three entries
};

struct SweepOptions {
  double beta = 0.0;
  double R_exponent = -0.5;  // R = eps^{R_exponent}
  double h = 0.0;
  int angles = 256;
  double tail_delta = 0.2;
};

SweepResult concentration_sweep(std::shared_ptr<const GreenField> gf, const std::vector<double>& eps,
                                const SweepOptions& opt = {});

// Hardy-Sobolev bubble (1 + r^{(p-beta)/(p-1)})^{-(n-p)/(p-beta)} and the rescaled, truncated Z_eps.
struct BubbleSpec {
  int n = 2;
  double p = 1.5;
  double beta = 0.0;
  double kappa = 0.0;     // Wulff-ball volume of the gauge
  enum class Mode { Raw, Z } mode = Mode::Raw;
  double epsilon = 0.1;   // Z mode
  double extent = 1.0;    // raw profile is returned on [0, extent]
  int nodes = 2049;
};

struct BubbleReport {
  RadialProfile profile;
  double quotient;        // Hardy-Sobolev Rayleigh quotient
  double target;          // (kappa/omega_n)^{(p-beta)/(n-beta)} S_{p,beta}
  double energy;          // int F^p(grad u)
  double mass;            // int |u|^{p*} / F°^beta
  double mass_target;     // target^{-p*/p}, the unit-energy limit
};

double bubble_value(int n, double p, double beta, double r);
double bubble_slope(int n, double p, double beta, double r);
BubbleReport bubble(const BubbleSpec& spec);

struct MaximizerOptions {
  int n = 2;
  double kappa = 0.0;
  int nodes = 64;
  double t_min = 1e-8;
  int max_iterations = 4000;
  enum class Start { Psi, Zero } start = Start::Psi;
  std::size_t validation_nodes = 1000000;
};

struct MaximizerResult {
  RadialProfile profile;
  double phi;             // optimizer quadrature
  double phi_validated;   // independent composite rule with validation_nodes points
  double level;           // kappa exp(sum 1/k)
  double margin;          // phi_validated - level
  double energy_residual; // |energy - 1|
  double max_iterate_residual;
  int iterations;
  bool converged;
  bool certified;         // phi_validated > level
};

MaximizerResult radial_maximizer(const MaximizerOptions& opt);
// n kappa int_0^1 (e^{lambda |U|^{n/(n-1)}} - 1) t^{n-1} dt by composite 2-point Gauss on `nodes` points.
double validate_phi(const RadialProfile& U, int n, double kappa, std::size_t nodes);

}  // namespace anisotm
