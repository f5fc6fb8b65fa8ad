#pragma once

#include <memory>
#include <string>

#include "anisotm/field.hpp"

namespace anisotm {

// Smooth regular part H of a Green function.
class RegularPart {
 public:
  virtual ~RegularPart() = default;
  virtual double value(double x, double y) const = 0;
  virtual Vec2 grad(double x, double y) const = 0;
};

struct SolveInfo {
  std::size_t unknowns = 0;
  double residual = 0.0;  // max-norm of the discrete residual, scaled by h^2
  double boundary_max = 0.0;  // max |G| at boundary crossings
};

// G = Gamma(F°(x - x0)) - H on a planar domain.
class GreenField {
 public:
  GreenField(Domain domain, Gauge gauge, Vec2 pole, double h, std::shared_ptr<const RegularPart> H,
             std::string method);

  const Domain& domain() const { return domain_; }
  const Gauge& gauge() const { return gauge_; }
  const Vec2& pole() const { return pole_; }
  double h() const { return h_; }
  double kappa() const { return kappa_; }
  double tau() const { return tau_; }
  double rho() const { return rho_; }
  const std::string& method() const { return method_; }
  SolveInfo info;

  // (n kappa)^{1/(n-1)}, so Gamma(t) = -log(t) / c
  double c() const { return c_; }
  double Gamma(double t) const { return -std::log(t) / c_; }

  double G(double x, double y) const;
  Vec2 gradG(double x, double y) const;
  double H(double x, double y) const { return H_->value(x, y); }
  Vec2 gradH(double x, double y) const { return H_->grad(x, y); }
  // exp(-c G) = F°(x - x0) exp(c H), evaluated without forming G.
  double hmap(double x, double y) const;
  Vec2 grad_hmap(double x, double y) const;

  SampledField sample_G(double h = 0) const;
  SampledField sample_H(double h = 0) const;

 private:
  Domain domain_;
  Gauge gauge_;
  Vec2 pole_;
  double h_;
  std::shared_ptr<const RegularPart> H_;
  std::string method_;
  double kappa_, c_, tau_, rho_;
};

// (n kappa)^{-1/(n-1)} log(r / F°(y - center)); any dimension.
double wulff_green(const Gauge& g, const Vec& center, double r, const Vec& y);

// Green function of a Wulff ball with the pole at its centre (H constant).
GreenField ball_green(const Gauge& g, const Vec2& center, double r, double h = 1.0 / 256);

// Closed-form Green function of a Euclidean disk, or of a quadratic-gauge Wulff ball, with any interior pole.
GreenField images_green(const Domain& ball, const Vec2& pole, double h = 1.0 / 256);

// Finite-difference solve for H with div(A grad H) = 0, H = Gamma(F°(. - x0)) on the boundary.
GreenField solve_robin(const Domain& d, const Gauge& g, const Vec2& x0, double h);

// Harmonic radius; Wulff balls with the pole at the centre return the radius, otherwise solve_robin.
double harmonic_radius(const Domain& d, const Gauge& g, const Vec2& x0, double h = 1.0 / 256);

struct LevelSetDiagnostics {
  double t;
  double energy_below;        // int_{G < t} F^n(grad G)
  double isoperimetric_ratio;
  double radius_ratio;
  double area_above;          // |{G > t}|
  double predicted_radius;    // rho exp(-c t)
  double gradient_ratio_dev;  // max |F(grad G) c F°(x - x0) - 1| on {G = t}
};

// Largest admissible t: predicted level-set radius must be >= 8 h.
double level_set_t_max(const GreenField& gf, double h = 0);
LevelSetDiagnostics level_set_diagnostics(const GreenField& gf, double t, double h = 0, int refine = 3);

// Directory with metadata.json, G.csv, H.csv.
void save_green(const GreenField& gf, const std::string& dir);

}  // namespace anisotm
