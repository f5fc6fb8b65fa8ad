#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace anisotm {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Mat = Eigen::MatrixXd;

enum class GaugeKind { PNorm, Quadratic, Polytope };

struct BiLipschitz {
  double alpha;  // alpha |x| <= F(x)
  double beta;   // F(x) <= beta |x|
};

// Convex, even, 1-homogeneous gauge F on R^n together with its polar F°.
class Gauge {
 public:
  static Gauge euclidean(int n = 2);
  static Gauge pnorm(int n, double p);
  static Gauge quadratic(const Mat& A);
  // Vertices of K = {F <= 1}; must be centrally symmetric with 0 inside.
  static Gauge polytope(const std::vector<Vec2>& vertices);
  // Grammar: euclidean | pnorm:<p> | quadratic:<a11,a12,a22> | polytope:<x,y;x,y;...>
  static Gauge parse(std::string_view spec, int n = 2);

  int dimension() const { return n_; }
  GaugeKind kind() const;
  bool smooth() const;
  std::string spec() const;

  double eval(const Vec& x) const;
  double polar(const Vec& x) const;
  Vec grad(const Vec& x) const;
  Vec grad_polar(const Vec& x) const;

  double eval2(double x, double y) const;
  double polar2(double x, double y) const;

  double kappa() const;  // |{F° <= 1}|
  BiLipschitz bilipschitz() const;

  // Quadratic gauges only.
  const Mat& matrix() const;
  const Mat& matrix_inverse() const;

  // Polytope gauges only; vertices of K in counter-clockwise order.
  const std::vector<Vec2>& vertices() const;
  // Facet normals a_i of K scaled so that K = {a_i . x <= 1}; these are the vertices of K°.
  const std::vector<Vec2>& facet_normals() const;

 private:
  struct PNormData {
    double p;
  };
  struct QuadraticData {
    Mat A, Ainv;
    double sqrt_det;
  };
  struct PolytopeData {
    std::vector<Vec2> verts;
    std::vector<Vec2> normals;
  };

  Gauge(int n, std::variant<PNormData, QuadraticData, PolytopeData> d)
      : n_(n), data_(std::move(d)) {}
  void check_dim(const Vec& x) const;

  int n_;
  std::variant<PNormData, QuadraticData, PolytopeData> data_;
};

struct WulffBall {
  Gauge gauge;
  Vec center;
  double radius;

  bool contains(const Vec& x) const;
  double volume() const;
};

// Sum over edges of length * F(outward unit normal). n = 2 only.
double aniso_perimeter(const std::vector<Vec2>& polygon, const Gauge& g);
double polygon_area(const std::vector<Vec2>& polygon);  // signed, CCW positive
bool polygon_is_simple(const std::vector<Vec2>& polygon);

// Unit ball volume omega_n and sphere measure n*omega_n.
double unit_ball_volume(int n);
double unit_sphere_measure(int n);

}  // namespace anisotm
