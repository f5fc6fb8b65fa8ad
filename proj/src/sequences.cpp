#include "anisotm/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"
#include "anisotm/special.hpp"

namespace anisotm {
namespace {

constexpr int kN = 2;

// 1 on s <= 0, 0 on s >= 1, quintic in between.
double eta_ramp(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}
double eta_ramp_slope(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return -30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double J_closed(int n, double X) {
  double v = std::log1p(X);
  const double q = X / (1.0 + X);
  double qk = 1.0;
  for (int k = 1; k < n; ++k) {
    qk *= q;
    v -= qk / k;
  }
  return v;
}

// int over {r_a <= F°(x - x0) <= r_b} of f(x, y, r) in Wulff-polar coordinates:
// x = x0 + r e/F°(e), dx = r / F°(e)^2 dr dtheta. Gauss panels in log r.
template <class F>
double polar_integral(const GreenField& gf, const std::vector<double>& breaks, int angles, F&& f) {
  const auto& gl = gauss_legendre(16);
  const Vec2 x0 = gf.pole();
  const double dth = 2.0 * std::numbers::pi / angles;
  std::vector<double> terms;
  terms.reserve(angles);
  for (int k = 0; k < angles; ++k) {
    const double th = (k + 0.5) * dth;
    const double ex = std::cos(th), ey = std::sin(th);
    const double fe = gf.gauge().polar2(ex, ey);
    const double wx = ex / fe, wy = ey / fe;
    CompensatedSum s;
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
      const double la = std::log(breaks[b]), lb = std::log(breaks[b + 1]);
      if (!(lb > la)) continue;
      const int panels = std::max(1, static_cast<int>(std::ceil((lb - la) / 0.35)));
      const double w = (lb - la) / panels;
      for (int p = 0; p < panels; ++p) {
        const double m = la + (p + 0.5) * w;
        for (std::size_t q = 0; q < gl.x.size(); ++q) {
          const double r = std::exp(m + 0.5 * w * gl.x[q]);
          s.add(0.5 * w * gl.w[q] * r * r * f(x0.x() + r * wx, x0.y() + r * wy, r));
        }
      }
    }
    terms.push_back(s.value() * dth / (fe * fe));
  }
  return pairwise_sum(terms);
}

// int over Omega ∩ {F°(x - x0) > r_min} by cut cells.
template <class F>
double grid_integral(const GreenField& gf, double r_min, double h, F&& f) {
  const Domain& dom = gf.domain();
  const Vec2 x0 = gf.pole();
  const Gauge& g = gf.gauge();
  const Grid grid = Grid::covering(dom.bbox(), h, 1);
  const std::vector<LevelFn> phis = {
      [&dom](double x, double y) { return dom.level(x, y); },
      [&g, x0, r_min](double x, double y) { return r_min - g.polar2(x - x0.x(), y - x0.y()); }};
  return integrate_region(
      grid, phis,
      [&](double x, double y) { return f(x, y, g.polar2(x - x0.x(), y - x0.y())); },
      CutCellOptions{2});
}

double spacing(const PsiFunction& psi, double h) { return h > 0 ? h : psi.green().h(); }

// Annulus [R eps, 2 R eps] kept as its own panel group.
std::vector<double> polar_breaks(double r0, double r_switch) {
  std::vector<double> b = {r0};
  if (2.0 * r0 < r_switch) b.push_back(2.0 * r0);
  b.push_back(r_switch);
  return b;
}

}  // namespace

PsiFunction::PsiFunction(std::shared_ptr<const GreenField> gf, const PsiReport& r)
    : gf_(std::move(gf)), rep_(r) {
  lambda_nb_ = sharp_constants(kN, gf_->kappa(), rep_.beta).lambda_n_beta;
}

double PsiFunction::inner(double r) const {
  const double q = -(kN - 1) / lambda_nb_ * std::log1p(rep_.P * std::pow(r / rep_.epsilon, rep_.s)) + rep_.b;
  return rep_.c + q / rep_.c;
}

double PsiFunction::inner_slope(double r) const {
  if (r <= 0.0) return 0.0;
  const double z = std::pow(r / rep_.epsilon, rep_.s);
  return -(kN - 1) / lambda_nb_ * rep_.P * rep_.s * z / (r * (1.0 + rep_.P * z)) / rep_.c;
}

double PsiFunction::outer_w(double x, double y, double r) const {
  const double re = rep_.R * rep_.epsilon;
  const double eta = eta_ramp((r - re) / re);
  const double H0 = rep_.H0;
  const double Hx = eta < 1.0 ? gf_->H(x, y) : H0;
  return gf_->Gamma(r) - H0 + (1.0 - eta) * (H0 - Hx);
}

Vec2 PsiFunction::outer_grad_w(double x, double y, double r) const {
  const double re = rep_.R * rep_.epsilon;
  const double sv = (r - re) / re;
  const double eta = eta_ramp(sv);
  const double deta = eta_ramp_slope(sv) / re;
  const Vec2 d(x - gf_->pole().x(), y - gf_->pole().y());
  const Vec2 gp = gf_->gauge().grad_polar(d);
  Vec2 out = (-1.0 / (gf_->c() * r)) * gp;
  if (eta < 1.0) {
    out -= deta * (rep_.H0 - gf_->H(x, y)) * gp;
    out -= (1.0 - eta) * gf_->gradH(x, y);
  }
  return out;
}

double PsiFunction::value(double x, double y) const {
  const Vec2 d(x - gf_->pole().x(), y - gf_->pole().y());
  const double r = gf_->gauge().polar2(d.x(), d.y());
  if (r <= rep_.R * rep_.epsilon) return inner(r);
  return outer_w(x, y, r) / rep_.c;
}

Vec2 PsiFunction::grad(double x, double y) const {
  const Vec2 d(x - gf_->pole().x(), y - gf_->pole().y());
  const double r = gf_->gauge().polar2(d.x(), d.y());
  if (r == 0.0) return Vec2::Zero();
  if (r <= rep_.R * rep_.epsilon) return inner_slope(r) * Vec2(gf_->gauge().grad_polar(d));
  return outer_grad_w(x, y, r) / rep_.c;
}

PsiResult build_psi(const PsiSpec& spec) {
  if (!spec.green) throw InputError("build_psi: missing Green field");
  const GreenField& gf = *spec.green;
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) throw InputError("build_psi: epsilon must lie in (0, 1)");
  if (!(spec.beta >= 0.0 && spec.beta < kN)) throw InputError("build_psi: beta out of range");
  const double R = spec.R > 0 ? spec.R : 1.0 / std::sqrt(spec.epsilon);
  if (R < 4.0) throw InputError("build_psi: R must be at least 4");
  const double h = spec.h > 0 ? spec.h : gf.h();

  const SharpConstants sc = sharp_constants(kN, gf.kappa(), spec.beta);
  const double lnb = sc.lambda_n_beta;
  PsiReport rep{};
  rep.epsilon = spec.epsilon;
  rep.R = R;
  rep.beta = spec.beta;
  rep.s = (kN - spec.beta) / (kN - 1.0);
  rep.P = sc.lambda_n / (std::pow(kN, kN / (kN - 1.0)) * std::pow(1.0 - spec.beta / kN, 1.0 / (kN - 1.0)));
  rep.H0 = gf.tau();

  const double re = R * spec.epsilon;
  const double inr = gf.domain().wulff_inradius(gf.pole(), gf.gauge());
  rep.r_switch = std::max(0.5 * inr, 2.0 * re);
  if (rep.r_switch > 0.9 * inr)
    throw InputError("build_psi: epsilon too large, the cutoff annulus reaches the boundary");
  if (rep.r_switch < 8.0 * h) throw InputError("build_psi: under-resolved, pole region below 8h");

  const double X = rep.P * std::pow(R, rep.s);
  const double I_in = (kN - 1) / lnb * J_closed(kN, X);

  // Provisional function with c = 1 gives the outer w, which does not depend on (c, b).
  PsiReport pre = rep;
  pre.c = 1.0;
  pre.b = 0.0;
  const PsiFunction w(spec.green, pre);
  auto energy_w = [&w](double x, double y, double r) {
    const Vec2 gw = w.outer_grad_w(x, y, r);
    return std::pow(w.green().gauge().eval2(gw.x(), gw.y()), kN);
  };
  const auto breaks = polar_breaks(re, rep.r_switch);
  const double I_polar = polar_integral(gf, breaks, spec.angles, energy_w);
  const double I_grid = grid_integral(gf, rep.r_switch, h, energy_w);
  const double I_out = I_polar + I_grid;

  rep.c_pow = I_in + I_out;
  rep.c = std::pow(rep.c_pow, (kN - 1.0) / kN);
  rep.b = gf.Gamma(re) - rep.H0 - rep.c_pow + (kN - 1) / lnb * std::log1p(X);
  rep.inner_energy = I_in / rep.c_pow;
  rep.outer_energy = I_out / rep.c_pow;
  rep.energy = rep.inner_energy + rep.outer_energy;
  rep.c_pow_expansion = -(kN / sc.lambda_n) * std::log(spec.epsilon) - (kN - 1) / lnb * sc.harmonic_sum +
                        std::log(kN * gf.kappa() / (kN - spec.beta)) / lnb - rep.H0;
  rep.b_expansion = (kN - 1) / lnb * sc.harmonic_sum;
  rep.remainder_bound = 1.0 / X;

  PsiFunction psi(spec.green, rep);
  {
    const double lr = std::log(re);
    double acc = 0.0;
    for (int k = 0; k < 12; ++k) {
      const double a = lr - 60.0 + 5.0 * k, b = a + 5.0;
      acc += integrate(
                 [&](double l) {
                   const double r = std::exp(l);
                   return kN * gf.kappa() * std::pow(std::abs(psi.inner_slope(r)), kN) * std::pow(r, kN);
                 },
                 a, b, 1e-12)
                 .value;
    }
    rep.inner_energy_quadrature = acc;
  }
  {
    // independent pass: F(grad psi)^n with the final (c, b), coarser angles, inner cap by 1D quadrature
    auto f = [&psi, &gf](double x, double y, double) {
      const Vec2 g = psi.grad(x, y);
      return std::pow(gf.gauge().eval2(g.x(), g.y()), kN);
    };
    rep.energy_check = rep.inner_energy_quadrature + polar_integral(gf, breaks, std::max(8, spec.angles / 2), f) +
                       grid_integral(gf, rep.r_switch, h, f);
  }
  double jump = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 64;
    const double ex = std::cos(th), ey = std::sin(th);
    const double fe = gf.gauge().polar2(ex, ey);
    const double x = gf.pole().x() + re * ex / fe, y = gf.pole().y() + re * ey / fe;
    jump = std::max(jump, std::abs(psi.inner(re) - psi.outer_w(x, y, re) / rep.c));
  }
  rep.continuity_jump = jump;

  PsiFunction out(spec.green, rep);
  std::optional<SampledField> samples;
  if (spec.sample) samples = SampledField::sample(gf.domain(), h, [&out](double x, double y) { return out.value(x, y); });
  return PsiResult{out, rep, std::move(samples)};
}

PhiParts psi_functional(const PsiFunction& psi, double beta, double h, int angles) {
  const PsiReport& rep = psi.report();
  const GreenField& gf = psi.green();
  const double lnb = sharp_constants(kN, gf.kappa(), beta).lambda_n_beta;
  const double ex = kN / (kN - 1.0);
  const double re = rep.R * rep.epsilon;
  std::size_t overflow = 0;
  auto term = [&](double u) {
    double a = lnb * std::pow(std::abs(u), ex);
    if (a > 700.0) {
      ++overflow;
      a = std::min(a, 709.0);
    }
    return std::expm1(a);
  };

  const double lr = std::log(re);
  double inner = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double a = lr - 60.0 + 5.0 * k, b = a + 5.0;
    inner += integrate(
                 [&](double l) {
                   const double r = std::exp(l);
                   return kN * gf.kappa() * term(psi.inner(r)) * std::pow(r, kN - beta);
                 },
                 a, b, 1e-12)
                 .value;
  }
  auto outer_f = [&](double x, double y, double r) {
    return term(psi.outer_w(x, y, r) / rep.c) * std::pow(r, -beta);
  };
  const double outer = polar_integral(gf, polar_breaks(re, rep.r_switch), angles, outer_f) +
                       grid_integral(gf, rep.r_switch, spacing(psi, h), outer_f);
  return PhiParts{inner, outer, inner + outer, overflow};
}

double psi_tail_energy(const PsiFunction& psi, double delta, double h, int angles) {
  const PsiReport& rep = psi.report();
  const GreenField& gf = psi.green();
  auto f = [&](double x, double y, double) {
    const Vec2 g = psi.grad(x, y);
    return std::pow(gf.gauge().eval2(g.x(), g.y()), kN);
  };
  const double re = rep.R * rep.epsilon;
  double acc = 0.0;
  if (delta < rep.r_switch) {
    const double a = std::max(delta, re);
    acc += polar_integral(gf, polar_breaks(a, rep.r_switch), angles, f);
    if (delta < re) {
      acc += integrate(
                 [&](double l) {
                   const double r = std::exp(l);
                   return kN * gf.kappa() * std::pow(std::abs(psi.inner_slope(r)), kN) * std::pow(r, kN);
                 },
                 std::log(delta), std::log(re), 1e-10)
                 .value;
    }
  }
  acc += grid_integral(gf, std::max(delta, rep.r_switch), spacing(psi, h), f);
  return acc;
}

SweepResult concentration_sweep(std::shared_ptr<const GreenField> gf, const std::vector<double>& eps,
                                const SweepOptions& opt) {
  if (eps.size() < 2) throw InputError("concentration_sweep: need at least two epsilon values");
  std::vector<double> list = eps;
  std::sort(list.begin(), list.end(), std::greater<>());
  SweepResult out{};
  out.beta = opt.beta;
  out.rho = gf->rho();
  out.level = concentration_level(gf->kappa(), gf->rho(), kN, opt.beta);
  out.tail_delta = opt.tail_delta;
  for (double e : list) {
    PsiSpec ps;
    ps.green = gf;
    ps.epsilon = e;
    ps.R = std::pow(e, opt.R_exponent);
    ps.beta = opt.beta;
    ps.h = opt.h;
    ps.angles = opt.angles;
    ps.sample = false;
    const PsiResult res = build_psi(ps);
    const PhiParts phi = psi_functional(res.psi, opt.beta, opt.h, opt.angles);
    SweepEntry s{};
    s.epsilon = e;
    s.R = ps.R;
    s.phi = phi.total;
    s.phi_inner = phi.inner;
    s.phi_outer = phi.outer;
    s.energy = res.report.energy_check;
    s.tail_energy = psi_tail_energy(res.psi, opt.tail_delta, opt.h, opt.angles);
    s.c = res.report.c;
    s.b = res.report.b;
    s.c_pow = res.report.c_pow;
    s.c_pow_expansion = res.report.c_pow_expansion;
    s.continuity_jump = res.report.continuity_jump;
    s.inner_energy = res.report.inner_energy;
    s.inner_energy_quadrature = res.report.inner_energy_quadrature;
    out.entries.push_back(s);
  }
  const std::size_t m = out.entries.size();
  const auto& ea = out.entries[m - 2];
  const auto& eb = out.entries[m - 1];
  const double la = -std::log(ea.epsilon), lb = -std::log(eb.epsilon);
  out.extrapolated = (lb * eb.phi - la * ea.phi) / (lb - la);
  if (m >= 3) {
    const auto& e0 = out.entries[m - 3];
    Eigen::Matrix3d A;
    Eigen::Vector3d y;
    const double ls[3] = {-std::log(e0.epsilon), la, lb};
    const double vs[3] = {e0.phi, ea.phi, eb.phi};
    for (int i = 0; i < 3; ++i) {
      A(i, 0) = 1.0;
      A(i, 1) = 1.0 / ls[i];
      A(i, 2) = 1.0 / (ls[i] * ls[i]);
      y(i) = vs[i];
    }
    out.extrapolated3 = A.colPivHouseholderQr().solve(y)(0);
  } else {
    out.extrapolated3 = out.extrapolated;
  }
  out.rel_error = std::abs(out.extrapolated / out.level - 1.0);
  out.tail_monotone = true;
  for (std::size_t k = 1; k < m; ++k)
    if (!(out.entries[k].tail_energy < out.entries[k - 1].tail_energy)) out.tail_monotone = false;
  out.approach_monotone = true;
  for (std::size_t k = (m >= 3 ? m - 2 : 1); k < m; ++k)
    if (!(std::abs(out.entries[k].phi - out.level) < std::abs(out.entries[k - 1].phi - out.level)))
      out.approach_monotone = false;
  return out;
}

double bubble_value(int n, double p, double beta, double r) {
  const double a = (p - beta) / (p - 1.0), m = (n - p) / (p - beta);
  return std::exp(-m * std::log1p(std::pow(r, a)));
}

double bubble_slope(int n, double p, double beta, double r) {
  if (r <= 0.0) return 0.0;
  const double a = (p - beta) / (p - 1.0), m = (n - p) / (p - beta);
  const double lr = std::log(r);
  return -std::exp(std::log(m * a) + (a - 1.0) * lr - (m + 1.0) * std::log1p(std::exp(a * lr)));
}

namespace {

// int over log r in [lo, hi] split into unit chunks
double log_integral(const std::function<double(double)>& f, double lo, double hi) {
  const int chunks = std::max(1, static_cast<int>(std::ceil(hi - lo)));
  const double w = (hi - lo) / chunks;
  CompensatedSum s;
  for (int k = 0; k < chunks; ++k) s.add(integrate(f, lo + k * w, lo + (k + 1) * w, 1e-13).value);
  return s.value();
}

}  // namespace

BubbleReport bubble(const BubbleSpec& spec) {
  const int n = spec.n;
  const double p = spec.p, beta = spec.beta;
  if (!(p > 1.0 && p < n)) throw InputError("bubble: need 1 < p < n");
  if (!(beta >= 0.0 && beta < p)) throw InputError("bubble: need 0 <= beta < p");
  if (!(spec.kappa > 0.0)) throw InputError("bubble: kappa must be positive");
  if (spec.nodes < 3) throw InputError("bubble: need at least 3 profile nodes");
  const double pstar = p * (n - beta) / (n - p);
  const double nk = n * spec.kappa;
  const double a = (p - beta) / (p - 1.0);
  BubbleReport rep{};
  rep.target = std::pow(spec.kappa / unit_ball_volume(n), (p - beta) / (n - beta)) * alvino_constant(n, p, beta);
  rep.mass_target = std::pow(rep.target, -pstar / p);

  std::vector<double> t(spec.nodes), v(spec.nodes);
  if (spec.mode == BubbleSpec::Mode::Raw) {
    const double L = std::min(60.0, 600.0 / a);
    const double I1 = log_integral(
        [&](double l) {
          const double r = std::exp(l);
          return std::pow(std::abs(bubble_slope(n, p, beta, r)), p) * std::pow(r, n);
        },
        -L, L);
    const double I2 = log_integral(
        [&](double l) {
          const double r = std::exp(l);
          return std::pow(bubble_value(n, p, beta, r), pstar) * std::pow(r, n - beta);
        },
        -L, L);
    rep.energy = nk * I1;
    rep.mass = nk * I2;
    rep.quotient = rep.energy / std::pow(rep.mass, p / pstar);
    for (int k = 0; k < spec.nodes; ++k) {
      t[k] = static_cast<double>(k) / (spec.nodes - 1);
      v[k] = bubble_value(n, p, beta, t[k] * spec.extent);
    }
  } else {
    const double e = spec.epsilon;
    if (!(e > 0.0 && e < 1.0)) throw InputError("bubble: epsilon must lie in (0, 1)");
    const double tail = bubble_value(n, p, beta, 1.0 / e);
    const double lo = std::log(e) - 40.0;
    const double E0 = nk * log_integral(
                               [&](double l) {
                                 const double r = std::exp(l);
                                 return std::pow(std::abs(bubble_slope(n, p, beta, r / e)) / e, p) * std::pow(r, n);
                               },
                               lo, 0.0);
    const double k = std::pow(E0, -1.0 / p);
    rep.energy = nk * log_integral(
                          [&](double l) {
                            const double r = std::exp(l);
                            return std::pow(k * std::abs(bubble_slope(n, p, beta, r / e)) / e, p) * std::pow(r, n);
                          },
                          lo, 0.0);
    rep.mass = nk * log_integral(
                        [&](double l) {
                          const double r = std::exp(l);
                          return std::pow(k * (bubble_value(n, p, beta, r / e) - tail), pstar) * std::pow(r, n - beta);
                        },
                        lo, 0.0);
    rep.quotient = rep.energy / std::pow(rep.mass, p / pstar);
    t[0] = 0.0;
    const double t1 = 1e-3 * e;
    for (int j = 1; j < spec.nodes; ++j) t[j] = t1 * std::pow(1.0 / t1, (j - 1.0) / (spec.nodes - 2));
    t.back() = 1.0;
    for (int j = 0; j < spec.nodes; ++j) v[j] = k * (bubble_value(n, p, beta, t[j] / e) - tail);
    v.back() = 0.0;
  }
  rep.profile = RadialProfile(std::move(t), std::move(v));
  return rep;
}

double validate_phi(const RadialProfile& U, int n, double kappa, std::size_t nodes) {
  const double lambda = sharp_constants(n, kappa).lambda_n;
  const double ex = n / (n - 1.0);
  const auto& t = U.nodes();
  const auto& v = U.values();
  const std::size_t nseg = t.size() - 1;
  const std::size_t sub = std::max<std::size_t>(1, nodes / (2 * nseg));
  const double g = 0.5 / std::sqrt(3.0);
  std::vector<double> seg(nseg);
  for (std::size_t k = 0; k < nseg; ++k) {
    const double a = t[k], w = (t[k + 1] - t[k]) / sub;
    CompensatedSum s;
    for (std::size_t j = 0; j < sub; ++j) {
      const double m = a + (j + 0.5) * w;
      for (double x : {m - g * w, m + g * w}) {
        const double l = (x - t[k]) / (t[k + 1] - t[k]);
        const double u = v[k] + l * (v[k + 1] - v[k]);
        s.add(0.5 * w * std::expm1(lambda * std::pow(std::abs(u), ex)) * std::pow(x, n - 1));
      }
    }
    seg[k] = s.value();
  }
  return n * kappa * pairwise_sum(seg);
}

MaximizerResult radial_maximizer(const MaximizerOptions& opt) {
  const int n = opt.n;
  if (n < 2) throw InputError("radial_maximizer: n must be at least 2");
  if (!(opt.kappa > 0.0)) throw InputError("radial_maximizer: kappa must be positive");
  if (opt.nodes < 4) throw InputError("radial_maximizer: need at least 4 nodes");
  if (!(opt.t_min > 0.0 && opt.t_min < 1.0)) throw InputError("radial_maximizer: t_min must lie in (0, 1)");
  const int N = opt.nodes;
  const double kappa = opt.kappa;
  const double lambda = sharp_constants(n, kappa).lambda_n;
  const double ex = n / (n - 1.0);

  std::vector<double> t(N);
  t[0] = 0.0;
  for (int k = 1; k < N; ++k) t[k] = opt.t_min * std::pow(1.0 / opt.t_min, (k - 1.0) / (N - 2));
  t[N - 1] = 1.0;

  const auto& gl = gauss_legendre(16);
  auto phi_and_grad = [&](const std::vector<double>& U, std::vector<double>* g) {
    CompensatedSum tot;
    if (g) g->assign(N, 0.0);
    for (int k = 0; k + 1 < N; ++k) {
      const double a = t[k], b = t[k + 1], hw = 0.5 * (b - a), m = 0.5 * (a + b);
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        const double tt = m + hw * gl.x[q];
        const double w = hw * gl.w[q];
        const double l1 = (tt - a) / (b - a), l0 = 1.0 - l1;
        const double u = U[k] * l0 + U[k + 1] * l1;
        const double au = std::abs(u);
        const double e = std::exp(lambda * std::pow(au, ex));
        const double tn = std::pow(tt, n - 1);
        tot.add(n * kappa * w * (e - 1.0) * tn);
        if (g) {
          const double d = n * kappa * w * lambda * ex * std::pow(au, ex - 1.0) * (u < 0 ? -1.0 : 1.0) * e * tn;
          (*g)[k] += d * l0;
          (*g)[k + 1] += d * l1;
        }
      }
    }
    return tot.value();
  };
  auto energy = [&](const std::vector<double>& U) {
    double e = 0.0;
    for (int k = 0; k + 1 < N; ++k) {
      const double s = (U[k + 1] - U[k]) / (t[k + 1] - t[k]);
      e += kappa * std::pow(std::abs(s), n) * (std::pow(t[k + 1], n) - std::pow(t[k], n));
    }
    return e;
  };
  auto project = [&](std::vector<double> U) {
    const double s = std::pow(energy(U), -1.0 / n);
    for (double& u : U) u *= s;
    return U;
  };
  // Tridiagonal metric on the free nodes 0..N-2: weights kappa (t_{k+1}^n - t_k^n) / dt^2.
  std::vector<double> cw(N - 1);
  for (int k = 0; k + 1 < N; ++k)
    cw[k] = kappa * (std::pow(t[k + 1], n) - std::pow(t[k], n)) / ((t[k + 1] - t[k]) * (t[k + 1] - t[k]));
  auto metric_apply = [&](const std::vector<double>& d) {
    std::vector<double> r(N, 0.0);
    for (int k = 0; k + 1 < N; ++k) {
      const double diff = d[k] - d[k + 1];
      r[k] += cw[k] * diff;
      r[k + 1] -= cw[k] * diff;
    }
    return r;
  };
  auto metric_solve = [&](const std::vector<double>& g) {
    // free block: diag = cw[k-1] + cw[k], off = -cw[k]; node N-1 fixed at zero.
    const int m = N - 1;
    std::vector<double> diag(m), off(m), rhs(g.begin(), g.begin() + m), d(N, 0.0);
    for (int k = 0; k < m; ++k) {
      diag[k] = cw[k] + (k > 0 ? cw[k - 1] : 0.0);
      off[k] = -cw[k];
    }
    for (int k = 1; k < m; ++k) {
      const double f = off[k - 1] / diag[k - 1];
      diag[k] -= f * off[k - 1];
      rhs[k] -= f * rhs[k - 1];
    }
    d[m - 1] = rhs[m - 1] / diag[m - 1];
    for (int k = m - 2; k >= 0; --k) d[k] = (rhs[k] - off[k] * d[k + 1]) / diag[k];
    return d;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  std::vector<double> U(N);
  for (int k = 0; k < N; ++k) {
    if (opt.start == MaximizerOptions::Start::Psi) {
      const double s = t[k] > 0 ? -n * std::log(t[k]) : 1e300;
      U[k] = std::min(s, 4.0);
    } else {
      U[k] = 1.0 - t[k];
    }
  }
  U[N - 1] = 0.0;
  U = project(U);

  MaximizerResult out{};
  out.level = kappa * std::exp(harmonic_sum(n));
  std::vector<double> g;
  double F = phi_and_grad(U, &g);
  double step = 1.0;
  double max_res = std::abs(energy(U) - 1.0);
  std::vector<double> history;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::vector<double> d = metric_solve(g);
    const std::vector<double> KU = metric_apply(U);
    const double coef = dot(KU, d) / dot(KU, U);
    for (int k = 0; k < N; ++k) d[k] -= coef * U[k];
    bool moved = false;
    while (step > 1e-14) {
      std::vector<double> trial(N);
      for (int k = 0; k < N; ++k) trial[k] = U[k] + step * d[k];
      trial = project(trial);
      const double Ft = phi_and_grad(trial, nullptr);
      if (Ft > F) {
        U = std::move(trial);
        F = phi_and_grad(U, &g);
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    max_res = std::max(max_res, std::abs(energy(U) - 1.0));
    history.push_back(F);
    if (!moved) break;
    if (history.size() > 100 && F - history[history.size() - 101] <= 1e-12 * F) {
      out.converged = true;
      ++it;
      break;
    }
  }
  if (!out.converged && it < opt.max_iterations) out.converged = true;  // no ascent step left
  out.iterations = it;
  out.profile = RadialProfile(t, U);
  out.phi = F;
  out.phi_validated = validate_phi(out.profile, n, kappa, opt.validation_nodes);
  out.margin = out.phi_validated - out.level;
  out.energy_residual = std::abs(energy(U) - 1.0);
  out.max_iterate_residual = max_res;
  out.certified = out.phi_validated > out.level;
  return out;
}

}  // namespace anisotm
