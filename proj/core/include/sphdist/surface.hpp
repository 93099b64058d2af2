#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sphdist/distortion.hpp"
#include "sphdist/trig.hpp"

// Triangle complexes: side-glued collections of spherical or Euclidean
// triangles, vertex total angles, discrete Gauss-Bonnet, the extremal
// 8-triangle complex, and the hyperbolic cone density.

namespace sphdist {

enum class Geometry { Spherical, Euclidean };

// Corner i of a triangle is opposite side i; side i joins corners
// (i+1)%3 and (i+2)%3.
struct SideRef {
  int tri = 0;
  int side = 0;
};

// Identification of two sides of equal length. With reversed == false the
// corner (a.side+1)%3 is identified with (b.side+2)%3 (the usual gluing of
// two coherently oriented faces); reversed == true matches (a.side+1)%3
// with (b.side+1)%3.
struct Gluing {
  SideRef a, b;
  bool reversed = false;
};

class fixture_error : public std::runtime_error {
 public:
  fixture_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Stored combinatorially: side lengths plus the gluing graph, never an
// embedding, so two triangles may share several vertices without sharing
// a side. Unglued (boundary) sides are allowed.
class TriangleComplex {
 public:
  explicit TriangleComplex(Geometry g) : geometry_(g) {}

  // Sides validated by the corresponding triangle constructor.
  int add_triangle(double a, double b, double c);
  // Both sides must be unglued and of equal length within kGluingTol.
  void glue(SideRef a, SideRef b, bool reversed = false);

  Geometry geometry() const { return geometry_; }
  int num_triangles() const { return static_cast<int>(sides_.size()); }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  std::array<double, 3> triangle_sides(int t) const { return sides_.at(t); }
  double side_length(SideRef s) const { return sides_.at(s.tri).at(s.side); }
  bool side_glued(SideRef s) const;

  // Interior angles of triangle t; entry i is the angle at corner i.
  std::array<double, 3> corner_angles(int t) const;
  // Signed face curvature contribution: spherical area for spherical
  // faces, zero for flat ones.
  double face_area(int t) const;

  bool closed() const;  // every side glued
  // Vertex classes from the gluing graph: corners identified by following
  // side identifications around each vertex. Corner (t, i) is encoded as
  // 3t + i.
  std::vector<std::vector<int>> vertex_classes() const;
  // V - E + F with V the vertex classes, E glued pairs plus boundary
  // sides, F the triangles.
  int euler_characteristic() const;

  static constexpr double kGluingTol = 1e-9;

 private:
  Geometry geometry_;
  std::vector<std::array<double, 3>> sides_;
  std::vector<Gluing> gluings_;
  std::vector<std::array<int, 3>> glued_;  // index into gluings_ or -1
};

struct VertexAngle {
  std::vector<int> corners;  // encoded 3t + i
  double total = 0.0;        // sum of corner angles in the class
  bool boundary = false;     // class touches an unglued side
};

struct ConeAngleReport {
  std::vector<VertexAngle> vertices;

  // Minimum over interior vertices of total - 2*pi; +inf if none.
  double min_excess() const;
  bool all_interior_equal(double value, double tol) const;
};

ConeAngleReport total_angles(const TriangleComplex& c);

// Hypotheses of the two covering variants: (i) every circumradius at most
// b0 - eps and every interior vertex angle at least 4*pi; (ii) radii at
// most pi/2 - eps and vertex angles at least 6*pi.
enum class CoveringVariant { I, II };

struct HypothesisCheck {
  bool pass = false;
  bool radii_ok = false;
  bool angles_ok = false;
  std::optional<int> violating_triangle;  // first radius violation
  std::optional<int> violating_vertex;    // index into the cone report
  double radius_cap = 0.0;
  double angle_floor = 0.0;
};

HypothesisCheck check_covering_hypotheses(const TriangleComplex& c, double eps,
                                          CoveringVariant variant);

struct TransformedComplex {
  TriangleComplex complex;
  ConeAngleReport before;
  ConeAngleReport after;
  double min_excess = 0.0;  // over 2*pi, after transform
};

// Apply F to every side; the gluing graph is preserved exactly (equal
// lengths map to equal lengths) and the result is a flat complex.
TransformedComplex transform_complex(const DistortionFamily& f, const TriangleComplex& c);

struct GaussBonnetReport {
  double face_total = 0.0;    // sum of face areas (spherical) or 0 (flat)
  double defect_total = 0.0;  // sum of 2*pi - theta_v
  int euler_characteristic = 0;
  double residual = 0.0;  // face_total + defect_total - 2*pi*chi
};

// Requires a closed complex.
GaussBonnetReport discrete_gauss_bonnet(const TriangleComplex& c);

// The extremal configuration: 8 copies of the equilateral spherical
// triangle with angles 2*pi/3 (sides arccos(-1/3), circumradius b0),
// glued as the degree-2 pullback of the tetrahedral triangulation of the
// sphere. V = 4, E = 12, F = 8, chi = 0, every vertex total angle 4*pi.
TriangleComplex weierstrass_complex();

// The tetrahedral triangulation itself: 4 equilateral faces, chi = 2,
// every vertex total angle 2*pi.
TriangleComplex tetrahedron_complex();

// Plain-text fixture round-trip; grammar documented in docs/fixtures.md.
TriangleComplex parse_fixture(std::istream& in);
TriangleComplex parse_fixture_file(const std::string& path);
void write_fixture(std::ostream& out, const TriangleComplex& c);

// Hyperbolic cone density lambda(r) = 2 q R^q r^{q-1} / (R^{2q} - r^{2q})
// with R = cone_metric_radius(q); defined for 0 < r < sqrt(2).
double cone_density(double q, double r);
// R(q) = sqrt(2) ((1+q)/(1-q))^{1/(2q)}.
double cone_metric_radius(double q);
// lim_{r -> sqrt(2)} lambda = sqrt((1 - q^2) / 2).
double cone_density_limit(double q);
// Gauss curvature -(laplacian log lambda)/lambda^2 at radius r by a
// fourth-order nine-point stencil with step h.
double cone_density_curvature_fd(double q, double r, double h = 1e-3);

// Every cone angle 2*pi*alpha_v of the flat complex must satisfy
// alpha_v * q > 1.
struct AlphaQCheck {
  bool pass = false;
  double min_alpha_q = 0.0;
  std::optional<int> violating_vertex;
};

AlphaQCheck alpha_q_check(const ConeAngleReport& flat_angles, double q);

// Lower bound 2 arctan sqrt(m / (m+2)) for the branching order m;
// pass +inf for the unbranched limit pi/2.
double branched_bloch_bound(double m);
// arctan sqrt(-cos(pi q / 2) / cos^3(pi q / 6)) for q in (1, 3]; the
// q = 3 endpoint is a 0/0 form and is returned as its limit pi/2.
double spherical_bloch_radius(double q);

}  // namespace sphdist
