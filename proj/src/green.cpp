#include "anisotm/green.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/quadrature.hpp"

namespace anisotm {
namespace {

class ConstantPart final : public RegularPart {
 public:
  explicit ConstantPart(double v) : v_(v) {}
  double value(double, double) const override { return v_; }
  Vec2 grad(double, double) const override { return Vec2::Zero(); }

 private:
  double v_;
};

// Euclidean disk |z - c| < R with pole a: H = -(1/2pi) (log R + log|1 - conj(alpha) z|), z = (x - c)/R.
class DiskImagesPart final : public RegularPart {
 public:
  DiskImagesPart(Vec2 c, double R, Vec2 a) : c_(c), R_(R), alpha_((a.x() - c.x()) / R, (a.y() - c.y()) / R) {}
  double value(double x, double y) const override {
    const std::complex<double> z((x - c_.x()) / R_, (y - c_.y()) / R_);
    return -(std::log(R_) + std::log(std::abs(1.0 - std::conj(alpha_) * z))) / (2.0 * std::numbers::pi);
  }
  Vec2 grad(double x, double y) const override {
    const std::complex<double> z((x - c_.x()) / R_, (y - c_.y()) / R_);
    const std::complex<double> q = -std::conj(alpha_) / (1.0 - std::conj(alpha_) * z);
    return -Vec2(q.real(), -q.imag()) / (2.0 * std::numbers::pi * R_);
  }

 private:
  Vec2 c_;
  double R_;
  std::complex<double> alpha_;
};

// H(x) = s * inner(M x) for the change of variables y = M x.
class MappedPart final : public RegularPart {
 public:
  MappedPart(std::shared_ptr<const RegularPart> inner, Eigen::Matrix2d M, double s)
      : inner_(std::move(inner)), M_(M), s_(s) {}
  double value(double x, double y) const override {
    const Vec2 q = M_ * Vec2(x, y);
    return s_ * inner_->value(q.x(), q.y());
  }
  Vec2 grad(double x, double y) const override {
    const Vec2 q = M_ * Vec2(x, y);
    return s_ * (M_.transpose() * inner_->grad(q.x(), q.y()));
  }

 private:
  std::shared_ptr<const RegularPart> inner_;
  Eigen::Matrix2d M_;
  double s_;
};

// Node values on a cell-centred grid, Catmull-Rom bicubic interpolation.
class GridPart final : public RegularPart {
 public:
  GridPart(Grid grid, std::vector<double> v, std::vector<unsigned char> known)
      : g_(grid), v_(std::move(v)), known_(std::move(known)) {}

  double value(double x, double y) const override {
    double wx[4], wy[4], dx[4], dy[4];
    int i0, j0;
    if (!stencil(x, y, i0, j0, wx, wy, dx, dy)) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (int b = 0; b < 4; ++b) {
      double r = 0.0;
      for (int a = 0; a < 4; ++a) r += wx[a] * v_[g_.index(i0 + a, j0 + b)];
      s += wy[b] * r;
    }
    return s;
  }

  Vec2 grad(double x, double y) const override {
    double wx[4], wy[4], dx[4], dy[4];
    int i0, j0;
    if (!stencil(x, y, i0, j0, wx, wy, dx, dy))
      return Vec2::Constant(std::numeric_limits<double>::quiet_NaN());
    double sx = 0.0, sy = 0.0;
    for (int b = 0; b < 4; ++b) {
      double rx = 0.0, ry = 0.0;
      for (int a = 0; a < 4; ++a) {
        const double val = v_[g_.index(i0 + a, j0 + b)];
        rx += dx[a] * val;
        ry += wx[a] * val;
      }
      sx += wy[b] * rx;
      sy += dy[b] * ry;
    }
    return Vec2(sx, sy) / g_.h;
  }

 private:
  static void weights(double t, double* w, double* d) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2 * t2 - t);
    w[1] = 0.5 * (3 * t3 - 5 * t2 + 2);
    w[2] = 0.5 * (-3 * t3 + 4 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
    d[0] = 0.5 * (-3 * t2 + 4 * t - 1);
    d[1] = 0.5 * (9 * t2 - 10 * t);
    d[2] = 0.5 * (-9 * t2 + 8 * t + 1);
    d[3] = 0.5 * (3 * t2 - 2 * t);
  }

  bool stencil(double x, double y, int& i0, int& j0, double* wx, double* wy, double* dx, double* dy) const {
    const double fx = (x - g_.x0) / g_.h - 0.5, fy = (y - g_.y0) / g_.h - 0.5;
    const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    i0 = i - 1;
    j0 = j - 1;
    if (i0 < 0 || j0 < 0 || i0 + 3 >= g_.nx || j0 + 3 >= g_.ny) return false;
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a)
        if (!known_[g_.index(i0 + a, j0 + b)]) return false;
    weights(fx - i, wx, dx);
    weights(fy - j, wy, dy);
    return true;
  }

  Grid g_;
  std::vector<double> v_;
  std::vector<unsigned char> known_;
};

Eigen::Matrix2d inverse_sqrt(const Eigen::Matrix2d& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(A);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

bool is_euclidean(const Gauge& g) { return g.kind() == GaugeKind::PNorm && g.spec() == "euclidean"; }

// Change of variables reducing div(A grad) to the Laplacian.
void linear_reduction(const Gauge& g, Eigen::Matrix2d& M, double& s) {
  if (is_euclidean(g)) {
    M.setIdentity();
    s = 1.0;
    return;
  }
  if (g.kind() != GaugeKind::Quadratic || g.dimension() != 2)
    throw CapabilityError("green: general domains need a Euclidean or quadratic planar gauge");
  const Eigen::Matrix2d A = g.matrix();
  M = inverse_sqrt(A);
  s = 1.0 / std::sqrt(A.determinant());
}

double gamma_euclid(double r) { return -std::log(r) / (2.0 * std::numbers::pi); }

}  // namespace

GreenField::GreenField(Domain domain, Gauge gauge, Vec2 pole, double h, std::shared_ptr<const RegularPart> H,
                       std::string method)
    : domain_(std::move(domain)),
      gauge_(std::move(gauge)),
      pole_(pole),
      h_(h),
      H_(std::move(H)),
      method_(std::move(method)) {
  if (gauge_.dimension() != 2) throw CapabilityError("GreenField: planar gauge required");
  kappa_ = gauge_.kappa();
  c_ = 2.0 * kappa_;
  tau_ = H_->value(pole_.x(), pole_.y());
  if (!std::isfinite(tau_)) throw ConvergenceError("GreenField: regular part undefined at the pole");
  rho_ = std::exp(-c_ * tau_);
}

double GreenField::G(double x, double y) const {
  const double r = gauge_.polar2(x - pole_.x(), y - pole_.y());
  return Gamma(r) - H_->value(x, y);
}

Vec2 GreenField::gradG(double x, double y) const {
  const Vec2 d(x - pole_.x(), y - pole_.y());
  const double r = gauge_.polar2(d.x(), d.y());
  const Vec2 gp = gauge_.grad_polar(d);
  return -gp / (c_ * r) - H_->grad(x, y);
}

double GreenField::hmap(double x, double y) const {
  const double r = gauge_.polar2(x - pole_.x(), y - pole_.y());
  return r * std::exp(c_ * H_->value(x, y));
}

Vec2 GreenField::grad_hmap(double x, double y) const {
  const Vec2 d(x - pole_.x(), y - pole_.y());
  const double r = gauge_.polar2(d.x(), d.y());
  const double e = std::exp(c_ * H_->value(x, y));
  const Vec2 gp = r > 0 ? Vec2(gauge_.grad_polar(d)) : Vec2(Vec2::Zero());
  return e * gp + c_ * r * e * H_->grad(x, y);
}

SampledField GreenField::sample_G(double h) const {
  return SampledField::sample(domain_, h > 0 ? h : h_, [this](double x, double y) { return G(x, y); });
}

SampledField GreenField::sample_H(double h) const {
  return SampledField::sample(domain_, h > 0 ? h : h_, [this](double x, double y) { return H(x, y); });
}

double wulff_green(const Gauge& g, const Vec& center, double r, const Vec& y) {
  if (!(r > 0.0)) throw InputError("wulff_green: radius must be positive");
  const int n = g.dimension();
  const double d = g.polar(y - center);
  if (d > r * (1.0 + 1e-12)) throw InputError("wulff_green: point outside the ball");
  if (d == 0.0) throw InputError("wulff_green: point at the pole");
  return std::pow(n * g.kappa(), -1.0 / (n - 1)) * std::log(r / std::min(d, r));
}

GreenField ball_green(const Gauge& g, const Vec2& center, double r, double h) {
  const double c = 2.0 * g.kappa();
  return GreenField(Domain::wulff_ball(g, center, r), g, center, h, std::make_shared<ConstantPart>(-std::log(r) / c),
                    "wulff-ball");
}

GreenField images_green(const Domain& ball, const Vec2& pole, double h) {
  if (ball.kind() != Domain::Kind::WulffBall) throw CapabilityError("images_green: domain must be a Wulff ball");
  const Gauge& g = ball.ball_gauge();
  if (!(ball.level(pole.x(), pole.y()) < 0)) throw InputError("images_green: pole must be interior");
  Eigen::Matrix2d M;
  double s;
  linear_reduction(g, M, s);
  // In y = M x the ball becomes a Euclidean disk of the same radius.
  const Vec2 cy = M * ball.ball_center();
  auto inner = std::make_shared<DiskImagesPart>(cy, ball.ball_radius(), Vec2(M * pole));
  std::shared_ptr<const RegularPart> H = inner;
  if (!is_euclidean(g)) H = std::make_shared<MappedPart>(inner, M, s);
  return GreenField(ball, g, pole, h, H, "images");
}

GreenField solve_robin(const Domain& d, const Gauge& g, const Vec2& x0, double h) {
  if (!(h > 0.0)) throw InputError("solve_robin: spacing must be positive");
  Eigen::Matrix2d M;
  double s;
  linear_reduction(g, M, s);
  if (!(d.level(x0.x(), x0.y()) < 0)) throw InputError("solve_robin: pole must be interior");
  if (d.boundary_distance(x0) <= 2.0 * h) throw InputError("solve_robin: pole closer than 2h to the boundary");

  const Domain dy = d.transformed(M);
  const Vec2 y0 = M * x0;
  constexpr int kMargin = 5;
  const Grid grid = Grid::covering(dy.bbox(), h, kMargin);
  const std::size_t N = grid.size();

  std::vector<int> id(N, -1);
  std::vector<unsigned char> interior(N, 0);
  int unknowns = 0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (dy.level(grid.cx(i), grid.cy(j)) < 0) {
        interior[grid.index(i, j)] = 1;
        id[grid.index(i, j)] = unknowns++;
      }
  if (unknowns == 0) throw InputError("solve_robin: grid too coarse for the domain");

  auto boundary_value = [&](double x, double y) { return gamma_euclid(std::hypot(x - y0.x(), y - y0.y())); };
  // Fraction theta in (0, 1] of the way from node p to its exterior neighbour where the boundary sits.
  auto crossing = [&](double px, double py, double qx, double qy) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (lo + hi);
      if (dy.level(px + m * (qx - px), py + m * (qy - py)) < 0) {
        lo = m;
      } else {
        hi = m;
      }
    }
    return std::max(0.5 * (lo + hi), 1e-10);
  };

  // Symmetric ghost-fluid discretisation of -Laplace (times h^2).
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(unknowns) * 5);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  std::vector<Vec2> crossings;
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto k = grid.index(i, j);
      if (!interior[k]) continue;
      const int row = id[k];
      double diag = 0.0;
      for (int q = 0; q < 4; ++q) {
        const int a = i + di[q], b = j + dj[q];
        if (a < 0 || b < 0 || a >= grid.nx || b >= grid.ny) throw CapabilityError("solve_robin: domain leaves the grid");
        const auto kn = grid.index(a, b);
        if (interior[kn]) {
          diag += 1.0;
          trip.emplace_back(row, id[kn], -1.0);
        } else {
          const double th = crossing(grid.cx(i), grid.cy(j), grid.cx(a), grid.cy(b));
          const double bx = grid.cx(i) + th * (grid.cx(a) - grid.cx(i));
          const double by = grid.cy(j) + th * (grid.cy(b) - grid.cy(j));
          const double gb = boundary_value(bx, by);
          diag += 1.0 / th;
          rhs[row] += gb / th;
          crossings.push_back(M.inverse() * Vec2(bx, by));
        }
      }
      trip.emplace_back(row, row, diag);
    }
  Eigen::SparseMatrix<double> K(unknowns, unknowns);
  K.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  if (solver.info() != Eigen::Success) throw ConvergenceError("solve_robin: factorisation failed");
  Eigen::VectorXd u = solver.solve(rhs);
  // One step of iterative refinement.
  Eigen::VectorXd r = rhs - K * u;
  u += solver.solve(r);
  r = rhs - K * u;
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  const double residual = r.cwiseAbs().maxCoeff() / scale;
  if (residual > 1e-10) throw ConvergenceError("solve_robin: residual above 1e-10");

  // Node values; exterior layers filled by linear extrapolation of W = H - Gamma(|y - y0|), which vanishes on the boundary.
  std::vector<double> W(N, 0.0);
  std::vector<unsigned char> known(N, 0);
  for (std::size_t k = 0; k < N; ++k)
    if (interior[k]) {
      W[k] = u[id[k]] - boundary_value(grid.cx(static_cast<int>(k % grid.nx)), grid.cy(static_cast<int>(k / grid.nx)));
      known[k] = 1;
    }
  const int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  for (int layer = 0; layer < kMargin - 1; ++layer) {
    std::vector<std::pair<std::size_t, double>> fresh;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const auto k = grid.index(i, j);
        if (known[k]) continue;
        double lin = 0.0, cst = 0.0;
        int nlin = 0, ncst = 0;
        for (const auto& dd : dirs) {
          const int a1 = i + dd[0], b1 = j + dd[1], a2 = i + 2 * dd[0], b2 = j + 2 * dd[1];
          if (a1 < 0 || b1 < 0 || a1 >= grid.nx || b1 >= grid.ny || !known[grid.index(a1, b1)]) continue;
          if (a2 >= 0 && b2 >= 0 && a2 < grid.nx && b2 < grid.ny && known[grid.index(a2, b2)]) {
            lin += 2.0 * W[grid.index(a1, b1)] - W[grid.index(a2, b2)];
            ++nlin;
          } else {
            cst += W[grid.index(a1, b1)];
            ++ncst;
          }
        }
        if (nlin > 0) {
          fresh.emplace_back(k, lin / nlin);
        } else if (ncst > 0) {
          fresh.emplace_back(k, cst / ncst);
        }
      }
    for (const auto& [k, w] : fresh) {
      W[k] = w;
      known[k] = 1;
    }
  }
  std::vector<double> Hn(N, 0.0);
  for (std::size_t k = 0; k < N; ++k)
    if (known[k]) Hn[k] = W[k] + boundary_value(grid.cx(static_cast<int>(k % grid.nx)), grid.cy(static_cast<int>(k / grid.nx)));
  auto inner = std::make_shared<GridPart>(grid, std::move(Hn), std::move(known));
  std::shared_ptr<const RegularPart> H = inner;
  if (!is_euclidean(g)) H = std::make_shared<MappedPart>(inner, M, s);
  GreenField gf(d, g, x0, h, H, "fdm");
  gf.info.unknowns = static_cast<std::size_t>(unknowns);
  gf.info.residual = residual;
  double bmax = 0.0;
  for (const auto& q : crossings) {
    const double v = gf.G(q.x(), q.y());
    if (std::isfinite(v)) bmax = std::max(bmax, std::abs(v));
  }
  gf.info.boundary_max = bmax;
  return gf;
}

double harmonic_radius(const Domain& d, const Gauge& g, const Vec2& x0, double h) {
  if (d.kind() == Domain::Kind::WulffBall && d.ball_gauge().spec() == g.spec() &&
      (x0 - d.ball_center()).norm() <= 1e-14 * (1.0 + d.ball_radius()))
    return d.ball_radius();
  return solve_robin(d, g, x0, h).rho();
}

double level_set_t_max(const GreenField& gf, double h) {
  if (h <= 0) h = gf.h();
  return std::log(gf.rho() / (8.0 * h)) / gf.c();
}

LevelSetDiagnostics level_set_diagnostics(const GreenField& gf, double t, double h, int refine) {
  if (h <= 0) h = gf.h();
  if (!(t > 0.0)) throw InputError("level_set_diagnostics: t must be positive");
  const double c = gf.c();
  const double dlt = 0.025 / c;
  if (t + 2 * dlt >= level_set_t_max(gf, h)) throw InputError("level_set_diagnostics: level set under-resolved (t >= t_max)");
  const Domain& dom = gf.domain();
  const Grid grid = Grid::covering(dom.bbox(), h, 1);
  const LevelFn inside = [&dom](double x, double y) { return dom.level(x, y); };
  const CutCellOptions opt{refine};
  const Gauge& g = gf.gauge();

  LevelSetDiagnostics out{};
  out.t = t;
  const LevelFn below = [&gf, t](double x, double y) { return gf.G(x, y) - t; };
  out.energy_below = integrate_region(
      grid, {inside, below},
      [&](double x, double y) {
        const Vec2 d = gf.gradG(x, y);
        const double f = g.eval2(d.x(), d.y());
        return f * f;
      },
      opt);

  auto area_above = [&](double s) {
    const LevelFn above = [&gf, s](double x, double y) { return s - gf.G(x, y); };
    return region_area(grid, {inside, above}, opt);
  };
  const double A = area_above(t);
  const double D1 = (area_above(t - dlt) - area_above(t + dlt)) / (2 * dlt);
  const double D2 = (area_above(t - 2 * dlt) - area_above(t + 2 * dlt)) / (4 * dlt);
  const double perim_weight = (4.0 * D1 - D2) / 3.0;  // int_{G = t} |grad G|^{-1}
  const double kappa = gf.kappa();
  out.area_above = A;
  out.isoperimetric_ratio = perim_weight / (4.0 * kappa * A);
  out.predicted_radius = gf.rho() * std::exp(-c * t);
  out.radius_ratio = std::sqrt(A / kappa) / out.predicted_radius;

  // Points on {G = t} along Wulff rays from the pole.
  double dev = 0.0;
  constexpr int kRays = 256;
  const Vec2 p = gf.pole();
  for (int k = 0; k < kRays; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kRays;
    Vec2 e(std::cos(th), std::sin(th));
    e /= g.polar2(e.x(), e.y());
    double lo = 1e-3 * out.predicted_radius, hi = dom.ray_exit(p, e.normalized()) / e.norm();
    if (!(gf.G(p.x() + lo * e.x(), p.y() + lo * e.y()) > t)) continue;
    for (int it = 0; it < 80; ++it) {
      const double m = 0.5 * (lo + hi);
      if (gf.G(p.x() + m * e.x(), p.y() + m * e.y()) > t) {
        lo = m;
      } else {
        hi = m;
      }
    }
    const double r = 0.5 * (lo + hi);
    const Vec2 q = p + r * e;
    const Vec2 dg = gf.gradG(q.x(), q.y());
    dev = std::max(dev, std::abs(g.eval2(dg.x(), dg.y()) * c * r - 1.0));
  }
  out.gradient_ratio_dev = dev;
  return out;
}

}  // namespace anisotm
