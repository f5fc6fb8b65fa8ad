#include "anisotm/transplant.hpp"

#include <algorithm>
#include <cmath>

#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"
#include "anisotm/symmetrize.hpp"

namespace anisotm {
namespace {

double clamp_h(double v) { return std::clamp(v, 0.0, 1.0); }

// Sum over the domain of f(x, y, k), where k is the profile segment containing h(x, y).
// Pieces straddling a node level h = t_k are clipped along that level curve first.
template <class F>
double band_integrate(const GreenField& gf, const RadialProfile& U, const EnergyOptions& opt, F&& f) {
  const double h = opt.h > 0 ? opt.h : gf.h();
  const Domain& dom = gf.domain();
  const Grid grid = Grid::covering(dom.bbox(), h, 1);
  const auto& t = U.nodes();
  const std::size_t nseg = t.size() - 1;
  const LevelFn inside = [&dom](double x, double y) { return dom.level(x, y); };
  auto hm = [&gf](double x, double y) { return gf.hmap(x, y); };
  CompensatedSum acc;
  for_each_region_piece(grid, {inside}, CutCellOptions{opt.refine}, [&](const Polygon2& piece, bool) {
    double lo = 2.0, hi = -1.0;
    Vec2 c = Vec2::Zero();
    for (const auto& v : piece) {
      const double hv = hm(v.x(), v.y());
      lo = std::min(lo, hv);
      hi = std::max(hi, hv);
      c += v;
    }
    c /= static_cast<double>(piece.size());
    const double hc = hm(c.x(), c.y());
    lo = std::min(lo, hc);
    hi = std::max(hi, hc);
    const double pad = 0.25 * (hi - lo) + 1e-12;
    const std::size_t k0 = U.segment(clamp_h(lo - pad));
    const std::size_t k1 = U.segment(clamp_h(hi + pad));
    if (k0 == k1) {
      acc.add(integrate_polygon(piece, [&](double x, double y) { return f(x, y, k0); }));
      return;
    }
    for (std::size_t k = k0; k <= k1; ++k) {
      Polygon2 p = piece;
      if (k > 0) {
        const double tk = t[k];
        p = clip_polygon(p, [&, tk](double x, double y) { return tk - hm(x, y); });
      }
      if (p.size() >= 3 && k + 1 < nseg) {
        const double tk1 = t[k + 1];
        p = clip_polygon(p, [&, tk1](double x, double y) { return hm(x, y) - tk1; });
      }
      if (p.size() < 3) continue;
      acc.add(integrate_polygon(p, [&](double x, double y) { return f(x, y, k); }));
    }
  });
  return acc.value();
}

}  // namespace

double TransplantedFunction::value(double x, double y) const {
  const GreenField& gf = *green;
  const Vec2 d(x - gf.pole().x(), y - gf.pole().y());
  double hv;
  if (d.norm() <= 4.0 * samples.grid.h) {
    hv = gf.gauge().polar2(d.x(), d.y()) * std::exp(gf.c() * gf.tau());
  } else {
    hv = gf.hmap(x, y);
  }
  return profile(clamp_h(hv));
}

Vec2 TransplantedFunction::gradient(double x, double y) const {
  const GreenField& gf = *green;
  const double hv = gf.hmap(x, y);
  if (hv >= 1.0) return Vec2::Zero();
  return profile.slope(hv) * gf.grad_hmap(x, y);
}

TransplantedFunction transplant(const RadialProfile& U, std::shared_ptr<const GreenField> gf, double h) {
  if (!gf) throw InputError("transplant: missing Green field");
  if (!U.zero_trace(1e-12)) throw InputError("transplant: profile must vanish at t = 1");
  if (h <= 0) h = gf->h();
  TransplantedFunction tf{U, gf, SampledField::on_domain(gf->domain(), h), 0};
  const Vec2 p = gf->pole();
  for (int j = 0; j < tf.samples.grid.ny; ++j)
    for (int i = 0; i < tf.samples.grid.nx; ++i) {
      const auto k = tf.samples.grid.index(i, j);
      if (tf.samples.weights[k] <= 0.0) continue;
      const double x = tf.samples.sample_x[k], y = tf.samples.sample_y[k];
      if (std::hypot(x - p.x(), y - p.y()) <= 4.0 * h) ++tf.pole_cells;
      tf.samples.values[k] = tf.value(x, y);
    }
  return tf;
}

double dirichlet_energy(const TransplantedFunction& u, double p, const EnergyOptions& opt) {
  const GreenField& gf = *u.green;
  const int n = gf.gauge().dimension();
  if (!(p > 1.0 && p <= n)) throw InputError("dirichlet_energy: p must lie in (1, n]");
  const Gauge& g = gf.gauge();
  std::vector<double> slope_p(u.profile.size() - 1);
  for (std::size_t k = 0; k < slope_p.size(); ++k) slope_p[k] = std::pow(std::abs(u.profile.slope_of_segment(k)), p);
  return band_integrate(gf, u.profile, opt, [&](double x, double y, std::size_t k) {
    if (slope_p[k] == 0.0) return 0.0;
    const Vec2 d = gf.grad_hmap(x, y);
    return slope_p[k] * std::pow(g.eval2(d.x(), d.y()), p);
  });
}

double dirichlet_energy(const SampledField& u, const Gauge& g, double p) {
  if (!(p > 1.0 && p <= g.dimension())) throw InputError("dirichlet_energy: p must lie in (1, n]");
  return u.dirichlet_energy(g, p);
}

MassComparison mass_comparison(const RadialProfile& U, std::shared_ptr<const GreenField> gf,
                               const std::function<double(double)>& H, const EnergyOptions& opt) {
  if (!gf) throw InputError("mass_comparison: missing Green field");
  const GreenField& g = *gf;
  MassComparison m{};
  m.omega_integral = band_integrate(g, U, opt, [&](double x, double y, std::size_t) {
    return H(U(clamp_h(g.hmap(x, y))));
  });
  const int n = g.gauge().dimension();
  m.ball_integral = wulff_radial_integral(U, n, g.kappa(), g.rho(), 0.0, H);
  m.rescaled_integral = std::pow(g.rho(), n) * wulff_radial_integral(U, n, g.kappa(), 1.0, 0.0, H);
  return m;
}

}  // namespace anisotm
