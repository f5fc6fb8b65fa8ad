#include "anisotm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "anisotm/errors.hpp"

namespace anisotm {
namespace {

std::vector<double> split_numbers(std::string_view s, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    std::string tok(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    std::size_t used = 0;
    try {
      out.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      throw InputError("domain spec: bad number '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("domain spec: bad number '" + tok + "'");
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// "<r>" or "<r>@cx,cy"
void parse_radius_center(std::string_view rest, double& r, Vec2& c) {
  const auto at = rest.find('@');
  const auto rv = split_numbers(rest.substr(0, at), ',');
  if (rv.size() != 1) throw InputError("domain spec: expected a radius");
  r = rv[0];
  c = Vec2::Zero();
  if (at != std::string_view::npos) {
    const auto cv = split_numbers(rest.substr(at + 1), ',');
    if (cv.size() != 2) throw InputError("domain spec: expected center cx,cy");
    c = Vec2(cv[0], cv[1]);
  }
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

Domain Domain::wulff_ball(const Gauge& g, const Vec2& center, double radius) {
  if (g.dimension() != 2) throw InputError("domain: planar gauge required");
  if (!(radius > 0.0)) throw InputError("domain: radius must be positive");
  Domain d;
  d.kind_ = Kind::WulffBall;
  d.gauge_ = std::make_shared<Gauge>(g);
  d.center_ = center;
  d.radius_ = radius;
  // Support function of {F° <= r} in direction e is r F(e).
  const double ex = radius * g.eval2(1, 0), ey = radius * g.eval2(0, 1);
  d.box_ = {center.x() - ex, center.y() - ey, center.x() + ex, center.y() + ey};
  std::ostringstream os;
  os.precision(17);
  os << (g.spec() == "euclidean" ? "disk:" : "wulff:") << radius;
  if (center.squaredNorm() > 0) os << "@" << center.x() << "," << center.y();
  d.spec_ = os.str();
  return d;
}

Domain Domain::disk(const Vec2& center, double radius) { return wulff_ball(Gauge::euclidean(2), center, radius); }

Domain Domain::rectangle(const Vec2& a, const Vec2& b) {
  Domain d;
  d.kind_ = Kind::Rectangle;
  d.box_ = {std::min(a.x(), b.x()), std::min(a.y(), b.y()), std::max(a.x(), b.x()), std::max(a.y(), b.y())};
  if (!(d.box_.x1 > d.box_.x0 && d.box_.y1 > d.box_.y0)) throw InputError("domain: rectangle has empty interior");
  d.rect_ = d.box_;
  std::ostringstream os;
  os.precision(17);
  os << "rect:" << d.box_.x0 << "," << d.box_.y0 << "," << d.box_.x1 << "," << d.box_.y1;
  d.spec_ = os.str();
  return d;
}

Domain Domain::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw InputError("domain: polygon needs >= 3 vertices");
  if (!polygon_is_simple(vertices)) throw InputError("domain: polygon is not simple");
  if (polygon_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());
  Domain d;
  d.kind_ = Kind::Polygon;
  d.box_ = {vertices[0].x(), vertices[0].y(), vertices[0].x(), vertices[0].y()};
  for (const auto& v : vertices) {
    d.box_.x0 = std::min(d.box_.x0, v.x());
    d.box_.y0 = std::min(d.box_.y0, v.y());
    d.box_.x1 = std::max(d.box_.x1, v.x());
    d.box_.y1 = std::max(d.box_.y1, v.y());
  }
  std::ostringstream os;
  os.precision(17);
  os << "polygon:";
  for (std::size_t i = 0; i < vertices.size(); ++i) os << (i ? ";" : "") << vertices[i].x() << "," << vertices[i].y();
  d.spec_ = os.str();
  d.poly_ = std::move(vertices);
  return d;
}

Domain Domain::mask(GridMask m) {
  if (m.nx <= 0 || m.ny <= 0 || m.inside.size() != static_cast<std::size_t>(m.nx) * m.ny || !(m.h > 0))
    throw InputError("domain: malformed grid mask");
  if (std::none_of(m.inside.begin(), m.inside.end(), [](unsigned char c) { return c != 0; }))
    throw InputError("domain: grid mask is empty");
  Domain d;
  d.kind_ = Kind::Mask;
  d.box_ = {m.x0, m.y0, m.x0 + m.nx * m.h, m.y0 + m.ny * m.h};
  d.spec_ = "mask";
  d.mask_ = std::make_shared<GridMask>(std::move(m));
  return d;
}

Domain Domain::parse(std::string_view spec, const Gauge& g) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "disk" || head == "wulff") {
    double r;
    Vec2 c;
    parse_radius_center(rest, r, c);
    return head == "disk" ? disk(c, r) : wulff_ball(g, c, r);
  }
  if (head == "square") {
    if (!rest.empty()) throw InputError("domain spec: 'square' takes no arguments");
    return rectangle(Vec2(0, 0), Vec2(1, 1));
  }
  if (head == "rect") {
    const auto v = split_numbers(rest, ',');
    if (v.size() != 4) throw InputError("domain spec: rect:<x0,y0,x1,y1>");
    return rectangle(Vec2(v[0], v[1]), Vec2(v[2], v[3]));
  }
  if (head == "polygon") {
    std::vector<Vec2> verts;
    std::size_t start = 0;
    while (true) {
      const auto semi = rest.find(';', start);
      const auto v =
          split_numbers(rest.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start), ',');
      if (v.size() != 2) throw InputError("domain spec: polygon vertices are x,y pairs");
      verts.emplace_back(v[0], v[1]);
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    return polygon(std::move(verts));
  }
  if (head == "mask") {
    // First line: x0,y0,h ; then one row of 0/1 per line, bottom row first.
    std::ifstream in{std::string(rest)};
    if (!in) throw InputError("domain spec: cannot open mask file");
    std::string line;
    std::getline(in, line);
    const auto hdr = split_numbers(line, ',');
    if (hdr.size() != 3) throw InputError("domain spec: mask header must be x0,y0,h");
    GridMask m{hdr[0], hdr[1], hdr[2], 0, 0, {}};
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto row = split_numbers(line, ',');
      if (m.nx == 0) m.nx = static_cast<int>(row.size());
      if (static_cast<int>(row.size()) != m.nx) throw InputError("domain spec: ragged mask rows");
      for (double v : row) m.inside.push_back(v != 0.0);
      ++m.ny;
    }
    return mask(std::move(m));
  }
  throw InputError("domain spec: unknown domain '" + std::string(spec) + "'");
}

double Domain::level(double x, double y) const {
  if (premap_) {
    const Vec2 q = *premap_ * Vec2(x, y);
    x = q.x();
    y = q.y();
  }
  switch (kind_) {
    case Kind::WulffBall:
      return gauge_->polar2(x - center_.x(), y - center_.y()) - radius_;
    case Kind::Rectangle:
      return std::max({rect_.x0 - x, x - rect_.x1, rect_.y0 - y, y - rect_.y1});
    case Kind::Polygon: {
      const Vec2 p(x, y);
      double dist = std::numeric_limits<double>::infinity();
      bool in = false;
      const std::size_t m = poly_.size();
      for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec2& a = poly_[i];
        const Vec2& b = poly_[j];
        if ((a.y() > y) != (b.y() > y) && x < (b.x() - a.x()) * (y - a.y()) / (b.y() - a.y()) + a.x()) in = !in;
        dist = std::min(dist, segment_distance(p, a, b));
      }
      return in ? -dist : dist;
    }
    case Kind::Mask: {
      const auto& m = *mask_;
      const int i = static_cast<int>(std::floor((x - m.x0) / m.h));
      const int j = static_cast<int>(std::floor((y - m.y0) / m.h));
      if (i < 0 || j < 0 || i >= m.nx || j >= m.ny) return 1.0;
      return m.inside[static_cast<std::size_t>(j) * m.nx + i] ? -1.0 : 1.0;
    }
  }
  return 1.0;
}

std::optional<double> Domain::exact_area() const {
  double scale = 1.0;
  if (premap_) scale = 1.0 / std::abs(premap_->determinant());
  switch (kind_) {
    case Kind::WulffBall:
      return scale * gauge_->kappa() * radius_ * radius_;
    case Kind::Rectangle:
      return scale * (rect_.x1 - rect_.x0) * (rect_.y1 - rect_.y0);
    case Kind::Polygon:
      return scale * polygon_area(poly_);
    case Kind::Mask: {
      const auto& m = *mask_;
      return scale * m.h * m.h * std::count(m.inside.begin(), m.inside.end(), 1);
    }
  }
  return std::nullopt;
}

std::string Domain::spec() const { return spec_; }

const Gauge& Domain::ball_gauge() const {
  if (kind_ != Kind::WulffBall) throw CapabilityError("domain: not a Wulff ball");
  return *gauge_;
}

double Domain::ray_exit(const Vec2& p, const Vec2& d) const {
  if (!inside(p.x(), p.y())) throw InputError("domain: ray start is not interior");
  const double diag = std::hypot(box_.x1 - box_.x0, box_.y1 - box_.y0);
  const double step = diag / 2048.0;
  double lo = 0.0, hi = step;
  while (inside(p.x() + hi * d.x(), p.y() + hi * d.y())) {
    lo = hi;
    hi += step;
    if (hi > 4.0 * diag) throw InputError("domain: ray does not leave the domain");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(p.x() + mid * d.x(), p.y() + mid * d.y())) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double Domain::boundary_distance(const Vec2& p, int directions) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const double th = 2.0 * std::numbers::pi * k / directions;
    best = std::min(best, ray_exit(p, Vec2(std::cos(th), std::sin(th))));
  }
  return best;
}

double Domain::wulff_inradius(const Vec2& p, const Gauge& g, int directions) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const double th = 2.0 * std::numbers::pi * k / directions;
    const Vec2 e(std::cos(th), std::sin(th));
    // The ray x = p + s e has F°(x - p) = s F°(e).
    best = std::min(best, ray_exit(p, e) * g.polar2(e.x(), e.y()));
  }
  return best;
}

Domain Domain::transformed(const Eigen::Matrix2d& M) const {
  Domain d = *this;
  const Eigen::Matrix2d Minv = M.inverse();
  d.premap_ = premap_ ? Eigen::Matrix2d(*premap_ * Minv) : Minv;
  Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
        -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double x : {box_.x0, box_.x1}) {
    for (double y : {box_.y0, box_.y1}) {
      const Vec2 q = M * Vec2(x, y);
      b.x0 = std::min(b.x0, q.x());
      b.y0 = std::min(b.y0, q.y());
      b.x1 = std::max(b.x1, q.x());
      b.y1 = std::max(b.y1, q.y());
    }
  }
  d.box_ = b;
  d.spec_ = spec_ + " (mapped)";
  return d;
}

}  // namespace anisotm
