#include "anisotm/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "anisotm/errors.hpp"
#include "anisotm/special.hpp"

namespace anisotm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec lp_grad(const Vec& x, double p) {
  const auto n = x.size();
  Vec g = Vec::Zero(n);
  if (std::isinf(p)) {
    Eigen::Index k = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(x[i]) > best) {
        best = std::abs(x[i]);
        k = i;
      }
    }
    g[k] = x[k] >= 0 ? 1.0 : -1.0;
    return g;
  }
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) g[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  const double nrm = lp_norm(x, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = std::abs(x[i]) / nrm;
    g[i] = std::copysign(std::pow(r, p - 1.0), x[i]);
  }
  return g;
}

double lp_ball_volume(int n, double q) {
  if (std::isinf(q)) return std::pow(2.0, n);
  return std::exp(n * (std::log(2.0) + special::lgamma(1.0 + 1.0 / q)) -
                  special::lgamma(1.0 + n / q));
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::vector<double> parse_numbers(std::string_view s, char sep) {
  std::vector<double> out;
  std::string tok;
  auto flush = [&]() {
    if (tok.empty()) throw InputError("gauge spec: empty number");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw InputError("gauge spec: bad number '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("gauge spec: bad number '" + tok + "'");
    out.push_back(v);
    tok.clear();
  };
  for (char c : s) {
    if (c == sep) {
      flush();
    } else if (c != ' ') {
      tok.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

double unit_ball_volume(int n) {
  return std::exp(0.5 * n * std::log(std::numbers::pi) - special::lgamma(1.0 + 0.5 * n));
}

double unit_sphere_measure(int n) { return n * unit_ball_volume(n); }

Gauge Gauge::euclidean(int n) { return pnorm(n, 2.0); }

Gauge Gauge::pnorm(int n, double p) {
  if (n < 2) throw InputError("gauge: dimension must be >= 2");
  if (!(p >= 1.0)) throw InputError("gauge: pnorm requires p >= 1");
  return Gauge(n, PNormData{p});
}

Gauge Gauge::quadratic(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() < 2) throw InputError("gauge: quadratic matrix must be square, n >= 2");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * A.cwiseAbs().maxCoeff())
    throw InputError("gauge: quadratic matrix must be symmetric");
  const Mat S = 0.5 * (A + A.transpose());
  Eigen::LLT<Mat> llt(S);
  if (llt.info() != Eigen::Success) throw InputError("gauge: quadratic matrix is not positive definite");
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  if (es.eigenvalues().minCoeff() <= 0.0) throw InputError("gauge: quadratic matrix is not positive definite");
  QuadraticData d;
  d.A = S;
  d.Ainv = llt.solve(Mat::Identity(S.rows(), S.cols()));
  d.Ainv = 0.5 * (d.Ainv + d.Ainv.transpose()).eval();
  d.sqrt_det = std::sqrt(es.eigenvalues().prod());
  return Gauge(static_cast<int>(S.rows()), std::move(d));
}

Gauge Gauge::polytope(const std::vector<Vec2>& vertices) {
  if (vertices.size() < 4 || vertices.size() % 2 != 0)
    throw InputError("gauge: polytope needs an even number (>= 4) of vertices");
  const double scale = std::max_element(vertices.begin(), vertices.end(), [](const Vec2& a, const Vec2& b) {
                         return a.norm() < b.norm();
                       })->norm();
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw InputError("gauge: polytope vertex not finite");
    bool found = false;
    for (const auto& w : vertices) found = found || (v + w).norm() <= 1e-9 * scale;
    if (!found) throw InputError("gauge: polytope vertex list is not symmetric about the origin");
  }
  std::vector<Vec2> vs = vertices;
  std::sort(vs.begin(), vs.end(), [](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
  });
  const std::size_t m = vs.size();
  std::vector<Vec2> normals(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % m];
    const Vec2& c = vs[(i + 2) % m];
    if (cross(b - a, c - b) <= 1e-12 * scale * scale)
      throw InputError("gauge: polytope vertices must be in strictly convex position");
    const double area2 = cross(a, b);  // distance of the edge line from 0, times |b-a|
    if (area2 <= 1e-12 * scale * scale) throw InputError("gauge: origin must lie strictly inside the polytope");
    normals[i] = Vec2(b.y() - a.y(), a.x() - b.x()) / area2;
  }
  return Gauge(2, PolytopeData{std::move(vs), std::move(normals)});
}

Gauge Gauge::parse(std::string_view spec, int n) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "euclidean") {
    if (!rest.empty()) throw InputError("gauge spec: 'euclidean' takes no arguments");
    return euclidean(n);
  }
  if (head == "pnorm") {
    if (rest == "inf") return pnorm(n, kInf);
    const auto v = parse_numbers(rest, ',');
    if (v.size() != 1) throw InputError("gauge spec: pnorm:<p>");
    return pnorm(n, v[0]);
  }
  if (head == "quadratic") {
    if (n != 2) throw InputError("gauge spec: quadratic:<a11,a12,a22> is 2-D only");
    const auto v = parse_numbers(rest, ',');
    if (v.size() != 3) throw InputError("gauge spec: quadratic:<a11,a12,a22>");
    Mat A(2, 2);
    A << v[0], v[1], v[1], v[2];
    return quadratic(A);
  }
  if (head == "polytope") {
    if (n != 2) throw InputError("gauge spec: polytope gauges are 2-D only");
    std::vector<Vec2> verts;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto semi = rest.find(';', start);
      const auto piece = rest.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
      const auto v = parse_numbers(piece, ',');
      if (v.size() != 2) throw InputError("gauge spec: polytope vertices are x,y pairs");
      verts.emplace_back(v[0], v[1]);
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    return polytope(verts);
  }
  throw InputError("gauge spec: unknown gauge '" + std::string(spec) + "'");
}

GaugeKind Gauge::kind() const {
  switch (data_.index()) {
    case 0: return GaugeKind::PNorm;
    case 1: return GaugeKind::Quadratic;
    default: return GaugeKind::Polytope;
  }
}

bool Gauge::smooth() const {
  if (auto* p = std::get_if<PNormData>(&data_)) return p->p > 1.0 && std::isfinite(p->p);
  return kind() == GaugeKind::Quadratic;
}

std::string Gauge::spec() const {
  std::ostringstream os;
  os.precision(17);
  if (auto* p = std::get_if<PNormData>(&data_)) {
    if (p->p == 2.0) return "euclidean";
    if (std::isinf(p->p)) return "pnorm:inf";
    os << "pnorm:" << p->p;
  } else if (auto* q = std::get_if<QuadraticData>(&data_)) {
    if (n_ == 2) {
      os << "quadratic:" << q->A(0, 0) << "," << q->A(0, 1) << "," << q->A(1, 1);
    } else {
      os << "quadratic[n=" << n_ << "]";
    }
  } else {
    const auto& d = std::get<PolytopeData>(data_);
    os << "polytope:";
    for (std::size_t i = 0; i < d.verts.size(); ++i) {
      if (i) os << ";";
      os << d.verts[i].x() << "," << d.verts[i].y();
    }
  }
  return os.str();
}

void Gauge::check_dim(const Vec& x) const {
  if (x.size() != n_) throw InputError("gauge: dimension mismatch");
}

double Gauge::eval(const Vec& x) const {
  check_dim(x);
  if (auto* p = std::get_if<PNormData>(&data_)) return lp_norm(x, p->p);
  if (auto* q = std::get_if<QuadraticData>(&data_)) return std::sqrt(std::max(0.0, x.dot(q->A * x)));
  const auto& d = std::get<PolytopeData>(data_);
  double best = 0.0;
  for (const auto& a : d.normals) best = std::max(best, a.x() * x[0] + a.y() * x[1]);
  return best;
}

double Gauge::polar(const Vec& x) const {
  check_dim(x);
  if (auto* p = std::get_if<PNormData>(&data_)) return lp_norm(x, conjugate(p->p));
  if (auto* q = std::get_if<QuadraticData>(&data_)) return std::sqrt(std::max(0.0, x.dot(q->Ainv * x)));
  const auto& d = std::get<PolytopeData>(data_);
  double best = 0.0;
  for (const auto& v : d.verts) best = std::max(best, v.x() * x[0] + v.y() * x[1]);
  return best;
}

double Gauge::eval2(double x, double y) const {
  if (n_ != 2) throw InputError("gauge: eval2 on a non-planar gauge");
  if (auto* p = std::get_if<PNormData>(&data_)) {
    if (p->p == 2.0) return std::hypot(x, y);
  } else if (auto* q = std::get_if<QuadraticData>(&data_)) {
    return std::sqrt(std::max(0.0, q->A(0, 0) * x * x + 2.0 * q->A(0, 1) * x * y + q->A(1, 1) * y * y));
  }
  return eval(Vec2(x, y));
}

double Gauge::polar2(double x, double y) const {
  if (n_ != 2) throw InputError("gauge: polar2 on a non-planar gauge");
  if (auto* p = std::get_if<PNormData>(&data_)) {
    if (p->p == 2.0) return std::hypot(x, y);
  } else if (auto* q = std::get_if<QuadraticData>(&data_)) {
    const Mat& B = q->Ainv;
    return std::sqrt(std::max(0.0, B(0, 0) * x * x + 2.0 * B(0, 1) * x * y + B(1, 1) * y * y));
  }
  return polar(Vec2(x, y));
}

Vec Gauge::grad(const Vec& x) const {
  check_dim(x);
  if (x.cwiseAbs().maxCoeff() == 0.0) throw InputError("gauge: gradient undefined at the origin");
  if (auto* p = std::get_if<PNormData>(&data_)) return lp_grad(x, p->p);
  if (auto* q = std::get_if<QuadraticData>(&data_)) return q->A * x / eval(x);
  const auto& d = std::get<PolytopeData>(data_);
  std::size_t k = 0;
  double best = -kInf;
  for (std::size_t i = 0; i < d.normals.size(); ++i) {
    const double v = d.normals[i].x() * x[0] + d.normals[i].y() * x[1];
    if (v > best) {
      best = v;
      k = i;
    }
  }
  return d.normals[k];
}

Vec Gauge::grad_polar(const Vec& x) const {
  check_dim(x);
  if (x.cwiseAbs().maxCoeff() == 0.0) throw InputError("gauge: gradient undefined at the origin");
  if (auto* p = std::get_if<PNormData>(&data_)) return lp_grad(x, conjugate(p->p));
  if (auto* q = std::get_if<QuadraticData>(&data_)) return q->Ainv * x / polar(x);
  const auto& d = std::get<PolytopeData>(data_);
  std::size_t k = 0;
  double best = -kInf;
  for (std::size_t i = 0; i < d.verts.size(); ++i) {
    const double v = d.verts[i].x() * x[0] + d.verts[i].y() * x[1];
    if (v > best) {
      best = v;
      k = i;
    }
  }
  return d.verts[k];
}

double Gauge::kappa() const {
  if (auto* p = std::get_if<PNormData>(&data_)) return lp_ball_volume(n_, conjugate(p->p));
  if (auto* q = std::get_if<QuadraticData>(&data_)) return unit_ball_volume(n_) * q->sqrt_det;
  // K° is the polygon with vertices a_i.
  return polygon_area(std::get<PolytopeData>(data_).normals);
}

BiLipschitz Gauge::bilipschitz() const {
  if (auto* p = std::get_if<PNormData>(&data_)) {
    // ||x||_p against ||x||_2 in R^n
    const double e = std::isinf(p->p) ? -0.5 : 1.0 / p->p - 0.5;
    const double f = std::pow(static_cast<double>(n_), e);
    return {std::min(1.0, f), std::max(1.0, f)};
  }
  if (auto* q = std::get_if<QuadraticData>(&data_)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(q->A);
    return {std::sqrt(es.eigenvalues().minCoeff()), std::sqrt(es.eigenvalues().maxCoeff())};
  }
  constexpr int kSamples = 1 << 16;
  double lo = kInf, hi = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double th = 2.0 * std::numbers::pi * i / kSamples;
    const double f = eval2(std::cos(th), std::sin(th));
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  // The sup over a polygon direction set is attained at vertices of K°; include them exactly.
  for (const auto& a : std::get<PolytopeData>(data_).normals) hi = std::max(hi, eval(a) / a.norm());
  return {lo, hi};
}

const Mat& Gauge::matrix() const {
  auto* q = std::get_if<QuadraticData>(&data_);
  if (!q) throw CapabilityError("gauge: matrix() requires a quadratic gauge");
  return q->A;
}

const Mat& Gauge::matrix_inverse() const {
  auto* q = std::get_if<QuadraticData>(&data_);
  if (!q) throw CapabilityError("gauge: matrix_inverse() requires a quadratic gauge");
  return q->Ainv;
}

const std::vector<Vec2>& Gauge::vertices() const {
  auto* d = std::get_if<PolytopeData>(&data_);
  if (!d) throw CapabilityError("gauge: vertices() requires a polytope gauge");
  return d->verts;
}

const std::vector<Vec2>& Gauge::facet_normals() const {
  auto* d = std::get_if<PolytopeData>(&data_);
  if (!d) throw CapabilityError("gauge: facet_normals() requires a polytope gauge");
  return d->normals;
}

bool WulffBall::contains(const Vec& x) const { return gauge.polar(x - center) <= radius; }

double WulffBall::volume() const { return gauge.kappa() * std::pow(radius, gauge.dimension()); }

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) s += cross(poly[i], poly[(i + 1) % m]);
  return 0.5 * s;
}

namespace {

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); };
  auto on_seg = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= c.y() &&
           c.y() <= std::max(a.y(), b.y());
  };
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_seg(q1, q2, p1)) return true;
  if (d2 == 0 && on_seg(q1, q2, p2)) return true;
  if (d3 == 0 && on_seg(p1, p2, q1)) return true;
  if (d4 == 0 && on_seg(p1, p2, q2)) return true;
  return false;
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& poly) {
  const std::size_t m = poly.size();
  if (m < 3) return false;
  std::vector<Eigen::AlignedBox2d> boxes(m);
  for (std::size_t i = 0; i < m; ++i) {
    boxes[i].setEmpty();
    boxes[i].extend(poly[i]);
    boxes[i].extend(poly[(i + 1) % m]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;  // adjacent edges share a vertex
      if (!boxes[i].intersects(boxes[j])) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m])) return false;
    }
  }
  return true;
}

double aniso_perimeter(const std::vector<Vec2>& poly, const Gauge& g) {
  if (g.dimension() != 2) throw InputError("aniso_perimeter: gauge must be planar");
  if (!polygon_is_simple(poly)) throw InputError("aniso_perimeter: polygon is not simple");
  const double orient = polygon_area(poly) > 0 ? 1.0 : -1.0;
  const std::size_t m = poly.size();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e = poly[(i + 1) % m] - poly[i];
    // |e| F(nu) = F(|e| nu) with |e| nu the rotated edge vector
    s += g.eval2(orient * e.y(), -orient * e.x());
  }
  return s;
}

}  // namespace anisotm
