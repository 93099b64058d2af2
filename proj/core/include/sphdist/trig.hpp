#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

// Spherical and Euclidean triangle solvers, the (R, phi, t) chart for
// triangles with a marked vertex, and the 3D embedding used as an oracle
// for every closed form in the library.

namespace sphdist {

inline constexpr double kPi = std::numbers::pi;

// Circumradius of the equilateral spherical triangle with angles 2pi/3;
// arctan(sqrt 8) = arccos(1/3).
inline double b0() { return std::atan(std::sqrt(8.0)); }

// Circumradius of the (pi/2, pi/2, 2pi/3) triangle; arctan 2.
inline double r0() { return std::atan(2.0); }

// Sides and angles below this are rejected at construction.
inline constexpr double kDegeneracyFloor = 1e-12;

// Inverse-cosine arguments may overshoot [-1, 1] by at most this much
// before the input is declared degenerate.
inline constexpr double kClampGuard = 1e-9;

class degenerate_error : public std::domain_error {
  using std::domain_error::domain_error;
};

// acos/asin with the [-1,1] clamp guard.
double clamped_acos(double x);
double clamped_asin(double x);

// chd t = 2 sin(t/2), the Euclidean chord of a spherical arc. Domain [0, pi].
double chd(double t);
// Inverse of chd. Domain [0, 2].
double chd_inv(double x);

struct Angles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double sum() const { return alpha + beta + gamma; }
  std::array<double, 3> as_array() const { return {alpha, beta, gamma}; }
};

// Triangle on the unit sphere, stored by side lengths (angles are always
// recomputed). Side a is opposite angle alpha, etc.
class SphericalTriangle {
 public:
  SphericalTriangle(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  std::array<double, 3> sides() const { return {a_, b_, c_}; }

  Angles angles() const;
  // alpha + beta + gamma - pi, in steradians.
  double area() const;
  // Spherical circumscribed radius, in (0, pi).
  double circumradius() const;
  // True when circumradius() < pi/2 - tol, the regime every distortion
  // operation requires.
  bool circumradius_proper(double tol = 1e-12) const;
  // Longest side. Equals the spherical diameter of the triangle for
  // moderate triangles (verified numerically by the oracle module for
  // perimeter <= 3); fat triangles with perimeter beyond pi can have two
  // boundary points farther apart than any side.
  double diameter() const;

 private:
  double a_, b_, c_;
};

// Plane triangle stored by side lengths.
class EuclideanTriangle {
 public:
  EuclideanTriangle(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  std::array<double, 3> sides() const { return {a_, b_, c_}; }

  Angles angles() const;
  double circumradius() const;
  double area() const;  // Heron
  double diameter() const;

 private:
  double a_, b_, c_;
};

// (R, phi, t) chart: R is the circumradius, 2*phi the angle of the chord
// triangle at the marked vertex, t the angle between the bisector at the
// marked vertex and the circumscribed circle. Chord sides are
//   a' = 2 sin R sin(t - phi), b' = 2 sin R sin(t + phi), c' = 2 sin R sin 2phi.
struct TriangleParams {
  double R = 0.0;
  double phi = 0.0;
  double t = 0.0;

  // t and pi - t give congruent triangles; fold t into (phi, pi/2].
  TriangleParams canonical() const;
  bool valid() const;
  void require_valid() const;  // throws degenerate_error
};

SphericalTriangle triangle_from_params(const TriangleParams& p);

// Recover params (canonical form) from a spherical triangle, marking the
// vertex at gamma (opposite side c).
TriangleParams params_from_triangle(const SphericalTriangle& tri);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

// Great-circle distance between unit vectors.
double spherical_distance(const Vec3& u, const Vec3& v);

// Three unit vectors realizing a TriangleParams chart on the sphere.
// Vertices sit on the circle of Euclidean radius sin R in the plane
// z = cos R, at circle angles 0, 2(t - phi), 2(t + phi); the marked vertex
// (angle gamma) is at circle angle 0.
struct EmbeddedTriangle {
  Vec3 v1, v2, v3;  // v1 is the marked vertex

  std::array<double, 3> side_lengths() const;  // (a, b, c), c opposite v1
  // Unit normal of the plane through the vertices, oriented so the offset
  // is positive, and the offset itself (= cos R when R < pi/2).
  Vec3 plane_normal() const;
  double plane_offset() const;
  // Interior angles measured from tangent-plane projections of the
  // great-circle initial velocities. Order (alpha, beta, gamma).
  Angles vertex_angles() const;
};

EmbeddedTriangle embed(const TriangleParams& p);

// Residuals of three classical identities evaluated on a triangle:
// Napier's analogy, Delambre's (Gauss's) formula, and the Law of Cosines
// for Angles. All should vanish for a valid triangle.
struct IdentityResiduals {
  double napier = 0.0;
  double delambre = 0.0;
  double cosines_for_angles = 0.0;

  double max() const;
  std::string worst_name() const;
};

IdentityResiduals napier_delambre_mollweide_check(const SphericalTriangle& tri);

// Third side from two sides and the included angle,
// c = sqrt((a+b)^2 - 4ab cos^2(gamma/2)).
double half_angle_side(double a, double b, double gamma);

// Spherical side-angle-side solve: side opposite the included angle.
double spherical_sas(double a, double b, double gamma);

}  // namespace sphdist
