#pragma once

#include <functional>
#include <vector>

#include "anisotm/grid.hpp"

namespace anisotm {

using LevelFn = std::function<double(double, double)>;
using Polygon2 = std::vector<Vec2>;

// Part of the polygon where phi < 0. Edge crossings are located by bracketing root search.
Polygon2 clip_polygon(const Polygon2& poly, const LevelFn& phi);

// Integrate f over a convex polygon; degree-2 exact triangle-fan rule.
template <class F>
double integrate_polygon(const Polygon2& p, F&& f);

double polygon_area2(const Polygon2& p);

struct CutCellOptions {
  int refine = 2;  // cut cells are split 2^refine times per axis before clipping
};

// Calls visit(poly, full) for each piece of the region {phi_k < 0 for all k}.
// full = true means an uncut grid cell (poly is the cell square).
void for_each_region_piece(const Grid& grid, const std::vector<LevelFn>& phis, const CutCellOptions& opt,
                           const std::function<void(const Polygon2&, bool)>& visit);

// Quadrature of f over the region: 2x2 Gauss on full cells, triangle-fan rule on cut pieces.
double integrate_region(const Grid& grid, const std::vector<LevelFn>& phis,
                        const std::function<double(double, double)>& f, const CutCellOptions& opt = {});

double region_area(const Grid& grid, const std::vector<LevelFn>& phis, const CutCellOptions& opt = {});

// --- implementation of the template ---
template <class F>
double integrate_polygon(const Polygon2& p, F&& f) {
  const std::size_t m = p.size();
  if (m < 3) return 0.0;
  Vec2 c = Vec2::Zero();
  for (const auto& v : p) c += v;
  c /= static_cast<double>(m);
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = p[k];
    const Vec2& b = p[(k + 1) % m];
    const double area = 0.5 * ((a.x() - c.x()) * (b.y() - c.y()) - (a.y() - c.y()) * (b.x() - c.x()));
    if (area == 0.0) continue;
    const Vec2 q1 = (4.0 * c + a + b) / 6.0;
    const Vec2 q2 = (c + 4.0 * a + b) / 6.0;
    const Vec2 q3 = (c + a + 4.0 * b) / 6.0;
    s += area * (f(q1.x(), q1.y()) + f(q2.x(), q2.y()) + f(q3.x(), q3.y())) / 3.0;
  }
  return s;
}

}  // namespace anisotm
