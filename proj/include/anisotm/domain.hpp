#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisotm/gauge.hpp"

namespace anisotm {

struct Box {
  double x0, y0, x1, y1;
};

struct GridMask {
  double x0, y0, h;  // lower-left corner of cell (0,0)
  int nx, ny;
  std::vector<unsigned char> inside;  // row-major, index j * nx + i
};

// Planar domain described by a level function that is negative inside.
class Domain {
 public:
  enum class Kind { WulffBall, Rectangle, Polygon, Mask };

  static Domain wulff_ball(const Gauge& g, const Vec2& center, double radius);
  static Domain disk(const Vec2& center, double radius);
  static Domain rectangle(const Vec2& a, const Vec2& b);
  static Domain polygon(std::vector<Vec2> vertices);
  static Domain mask(GridMask m);
  // disk:<r>[@cx,cy] | wulff:<r>[@cx,cy] | rect:<x0,y0,x1,y1> | square | polygon:<x,y;...> | mask:<csv path>
  static Domain parse(std::string_view spec, const Gauge& g);

  Kind kind() const { return kind_; }
  double level(double x, double y) const;
  bool inside(double x, double y) const { return level(x, y) < 0.0; }
  Box bbox() const { return box_; }
  std::optional<double> exact_area() const;
  std::string spec() const;

  // Distance t >= 0 along the unit direction d from an interior point p to the first boundary crossing.
  double ray_exit(const Vec2& p, const Vec2& d) const;
  // Minimum over directions of ray_exit; Euclidean distance to the boundary up to sampling.
  double boundary_distance(const Vec2& p, int directions = 720) const;
  // Largest r with the Wulff ball {F°(x - p) <= r} inside the domain, up to sampling.
  double wulff_inradius(const Vec2& p, const Gauge& g, int directions = 720) const;

  // WulffBall data.
  const Gauge& ball_gauge() const;
  const Vec2& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

  // The image of the domain under the linear map y = M x (M invertible).
  Domain transformed(const Eigen::Matrix2d& M) const;

 private:
  Domain() = default;
  Kind kind_ = Kind::Rectangle;
  std::shared_ptr<const Gauge> gauge_;
  Vec2 center_ = Vec2::Zero();
  double radius_ = 0.0;
  Box box_{};
  Box rect_{};  // rectangle shape, in unmapped coordinates
  std::vector<Vec2> poly_;
  std::shared_ptr<const GridMask> mask_;
  // Optional linear pre-map applied before evaluating the level function: level(Minv y).
  std::optional<Eigen::Matrix2d> premap_;
  std::string spec_;
};

}  // namespace anisotm
