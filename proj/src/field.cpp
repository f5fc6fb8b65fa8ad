#include "anisotm/field.hpp"

#include <cmath>

#include "anisotm/errors.hpp"

namespace anisotm {

SampledField SampledField::on_domain(const Domain& d, double h, int margin) {
  SampledField s{d, Grid::covering(d.bbox(), h, margin), {}, {}, {}, {}};
  s.values.assign(s.grid.size(), 0.0);
  s.weights.assign(s.grid.size(), 0.0);
  s.sample_x.assign(s.grid.size(), 0.0);
  s.sample_y.assign(s.grid.size(), 0.0);
  const LevelFn phi = [&d](double x, double y) { return d.level(x, y); };
  for (int j = 0; j < s.grid.ny; ++j) {
    for (int i = 0; i < s.grid.nx; ++i) {
      const double x0 = s.grid.x0 + i * h, y0 = s.grid.y0 + j * h;
      const bool c0 = d.inside(x0, y0), c1 = d.inside(x0 + h, y0);
      const bool c2 = d.inside(x0 + h, y0 + h), c3 = d.inside(x0, y0 + h);
      const bool cc = d.inside(x0 + 0.5 * h, y0 + 0.5 * h);
      double w = 0.0;
      Vec2 at(x0 + 0.5 * h, y0 + 0.5 * h);
      if (c0 && c1 && c2 && c3 && cc) {
        w = h * h;
      } else if (c0 || c1 || c2 || c3 || cc) {
        Polygon2 poly{Vec2(x0, y0), Vec2(x0 + h, y0), Vec2(x0 + h, y0 + h), Vec2(x0, y0 + h)};
        poly = clip_polygon(poly, phi);
        w = poly.size() >= 3 ? polygon_area2(poly) : 0.0;
        if (!cc && w > 0.0) {
          Vec2 c = Vec2::Zero();
          for (const auto& v : poly) c += v;
          at = c / static_cast<double>(poly.size());
        }
      }
      s.weights[s.grid.index(i, j)] = w;
      s.sample_x[s.grid.index(i, j)] = at.x();
      s.sample_y[s.grid.index(i, j)] = at.y();
    }
  }
  return s;
}

double SampledField::total_area() const { return pairwise_sum(weights); }

std::size_t SampledField::active_cells() const {
  std::size_t c = 0;
  for (double w : weights) c += w > 0.0;
  return c;
}

Vec2 SampledField::gradient(int i, int j) const {
  const double h = grid.h;
  auto val = [&](int a, int b) { return values[grid.index(a, b)]; };
  auto ok = [&](int a, int b) { return a >= 0 && b >= 0 && a < grid.nx && b < grid.ny && active(a, b); };
  auto diff = [&](int di, int dj) {
    const bool fwd = ok(i + di, j + dj), bwd = ok(i - di, j - dj);
    if (fwd && bwd) return (val(i + di, j + dj) - val(i - di, j - dj)) / (2.0 * h);
    if (fwd) return (val(i + di, j + dj) - val(i, j)) / h;
    if (bwd) return (val(i, j) - val(i - di, j - dj)) / h;
    return 0.0;
  };
  return Vec2(diff(1, 0), diff(0, 1));
}

double SampledField::dirichlet_energy(const Gauge& g, double p) const {
  if (!(p > 1.0)) throw InputError("dirichlet_energy: p must exceed 1");
  std::vector<double> terms;
  terms.reserve(active_cells());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto k = grid.index(i, j);
      if (weights[k] <= 0.0) continue;
      const Vec2 d = gradient(i, j);
      terms.push_back(weights[k] * std::pow(g.eval2(d.x(), d.y()), p));
    }
  return pairwise_sum(terms);
}

}  // namespace anisotm
