#include "anisotm/cutcell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"

namespace anisotm {

Grid Grid::covering(const Box& b, double h, int margin) {
  if (!(h > 0.0)) throw InputError("grid: spacing must be positive");
  Grid g;
  g.h = h;
  g.x0 = (std::floor(b.x0 / h) - margin) * h;
  g.y0 = (std::floor(b.y0 / h) - margin) * h;
  g.nx = static_cast<int>(std::ceil((b.x1 - g.x0) / h - 1e-9)) + margin;
  g.ny = static_cast<int>(std::ceil((b.y1 - g.y0) / h - 1e-9)) + margin;
  return g;
}

double parse_spacing(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size() || !(v > 0)) throw InputError("");
      return v;
    }
    const double a = std::stod(s.substr(0, slash), &used);
    if (used != slash) throw InputError("");
    const std::string rest = s.substr(slash + 1);
    const double b = std::stod(rest, &used);
    if (used != rest.size() || !(a > 0) || !(b > 0)) throw InputError("");
    return a / b;
  } catch (const std::exception&) {
    throw InputError("bad spacing '" + s + "'");
  }
}

namespace {

// Root of phi on the segment a->b, with phi(a) < 0 <= phi(b) (or reversed); Illinois false position.
Vec2 crossing(const LevelFn& phi, const Vec2& a, const Vec2& b, double fa, double fb) {
  double ta = 0.0, tb = 1.0;
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    double t = (ta * fb - tb * fa) / (fb - fa);
    if (!(t > ta && t < tb)) t = 0.5 * (ta + tb);
    const Vec2 p = a + t * (b - a);
    const double f = phi(p.x(), p.y());
    if (!std::isfinite(f)) {
      // Singular level function (e.g. near a pole): fall back to bisection.
      const double tm = 0.5 * (ta + tb);
      const Vec2 q = a + tm * (b - a);
      const double fm = phi(q.x(), q.y());
      if ((fm < 0) == (fa < 0)) {
        ta = tm;
        fa = std::isfinite(fm) ? fm : fa;
      } else {
        tb = tm;
        fb = std::isfinite(fm) ? fm : fb;
      }
      continue;
    }
    if ((f < 0) == (fa < 0)) {
      ta = t;
      fa = f;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      tb = t;
      fb = f;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (tb - ta < 1e-14) break;
  }
  return a + 0.5 * (ta + tb) * (b - a);
}

double safe_eval(const LevelFn& phi, const Vec2& p) {
  const double v = phi(p.x(), p.y());
  if (std::isnan(v)) return 1.0;
  if (std::isinf(v)) return v > 0 ? 1e300 : -1e300;
  return v;
}

}  // namespace

Polygon2 clip_polygon(const Polygon2& poly, const LevelFn& phi) {
  const std::size_t m = poly.size();
  Polygon2 out;
  if (m == 0) return out;
  std::vector<double> f(m);
  for (std::size_t k = 0; k < m; ++k) f[k] = safe_eval(phi, poly[k]);
  out.reserve(m + 2);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t l = (k + 1) % m;
    const bool in_k = f[k] <= 0, in_l = f[l] <= 0;
    if (in_k) out.push_back(poly[k]);
    if (in_k != in_l) out.push_back(crossing(phi, poly[k], poly[l], f[k], f[l]));
  }
  return out;
}

double polygon_area2(const Polygon2& p) {
  double s = 0.0;
  const std::size_t m = p.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = p[k];
    const Vec2& b = p[(k + 1) % m];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * s;
}

namespace {

enum class CellState { Outside, Inside, Cut };

CellState classify(const std::vector<LevelFn>& phis, double x0, double y0, double h) {
  const double xs[5] = {x0, x0 + h, x0 + h, x0, x0 + 0.5 * h};
  const double ys[5] = {y0, y0, y0 + h, y0 + h, y0 + 0.5 * h};
  bool all_in = true;
  for (const auto& phi : phis) {
    int neg = 0;
    for (int k = 0; k < 5; ++k) neg += safe_eval(phi, Vec2(xs[k], ys[k])) < 0;
    if (neg == 0) return CellState::Outside;
    if (neg < 5) all_in = false;
  }
  return all_in ? CellState::Inside : CellState::Cut;
}

void visit_cut(const std::vector<LevelFn>& phis, double x0, double y0, double h, int depth,
               const std::function<void(const Polygon2&, bool)>& visit) {
  if (depth > 0) {
    const double hh = 0.5 * h;
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) {
        const double sx = x0 + a * hh, sy = y0 + b * hh;
        const CellState st = classify(phis, sx, sy, hh);
        if (st == CellState::Inside) {
          visit(Polygon2{Vec2(sx, sy), Vec2(sx + hh, sy), Vec2(sx + hh, sy + hh), Vec2(sx, sy + hh)}, true);
        } else if (st == CellState::Cut) {
          visit_cut(phis, sx, sy, hh, depth - 1, visit);
        }
      }
    return;
  }
  Polygon2 poly{Vec2(x0, y0), Vec2(x0 + h, y0), Vec2(x0 + h, y0 + h), Vec2(x0, y0 + h)};
  for (const auto& phi : phis) {
    poly = clip_polygon(poly, phi);
    if (poly.size() < 3) return;
  }
  visit(poly, false);
}

}  // namespace

void for_each_region_piece(const Grid& grid, const std::vector<LevelFn>& phis, const CutCellOptions& opt,
                           const std::function<void(const Polygon2&, bool)>& visit) {
  const double h = grid.h;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x0 = grid.x0 + i * h, y0 = grid.y0 + j * h;
      const CellState st = classify(phis, x0, y0, h);
      if (st == CellState::Outside) continue;
      if (st == CellState::Inside) {
        visit(Polygon2{Vec2(x0, y0), Vec2(x0 + h, y0), Vec2(x0 + h, y0 + h), Vec2(x0, y0 + h)}, true);
      } else {
        visit_cut(phis, x0, y0, h, opt.refine, visit);
      }
    }
  }
}

namespace {

// 2x2 Gauss rule on an axis-aligned square given as a polygon.
template <class F>
double gauss_square(const Polygon2& sq, F&& f) {
  const double x0 = sq[0].x(), y0 = sq[0].y();
  const double h = sq[1].x() - sq[0].x();
  const double g = 0.5 / std::sqrt(3.0);
  const double a = x0 + (0.5 - g) * h, b = x0 + (0.5 + g) * h;
  const double c = y0 + (0.5 - g) * h, d = y0 + (0.5 + g) * h;
  return 0.25 * h * h * (f(a, c) + f(b, c) + f(a, d) + f(b, d));
}

}  // namespace

double integrate_region(const Grid& grid, const std::vector<LevelFn>& phis,
                        const std::function<double(double, double)>& f, const CutCellOptions& opt) {
  CompensatedSum acc;
  for_each_region_piece(grid, phis, opt, [&](const Polygon2& p, bool full) {
    acc.add(full ? gauss_square(p, f) : integrate_polygon(p, f));
  });
  return acc.value();
}

double region_area(const Grid& grid, const std::vector<LevelFn>& phis, const CutCellOptions& opt) {
  CompensatedSum acc;
  for_each_region_piece(grid, phis, opt, [&](const Polygon2& p, bool) { acc.add(polygon_area2(p)); });
  return acc.value();
}

}  // namespace anisotm
