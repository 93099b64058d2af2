#include "sphdist/trig.hpp"

#include <algorithm>
#include <cmath>

namespace sphdist {

double clamped_acos(double x) {
  if (std::abs(x) > 1.0 + kClampGuard) {
    throw degenerate_error("inverse-cosine argument " + std::to_string(x) +
                           " exceeds clamp guard");
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

double clamped_asin(double x) {
  if (std::abs(x) > 1.0 + kClampGuard) {
    throw degenerate_error("inverse-sine argument " + std::to_string(x) +
                           " exceeds clamp guard");
  }
  return std::asin(std::clamp(x, -1.0, 1.0));
}

double chd(double t) {
  if (t < 0.0 || t > kPi) throw std::domain_error("chd: arc outside [0, pi]");
  return 2.0 * std::sin(0.5 * t);
}

double chd_inv(double x) {
  if (x < 0.0 || x > 2.0) throw std::domain_error("chd_inv: chord outside [0, 2]");
  return 2.0 * std::asin(0.5 * x);
}

namespace {

void check_spherical_sides(double a, double b, double c) {
  for (double s : {a, b, c}) {
    if (!(s > kDegeneracyFloor)) throw degenerate_error("spherical side below degeneracy floor");
    if (!(s < kPi)) throw degenerate_error("spherical side must be < pi");
  }
  if (!(a + b + c < 2.0 * kPi)) throw degenerate_error("spherical perimeter must be < 2pi");
  if (!(a < b + c && b < a + c && c < a + b)) {
    throw degenerate_error("spherical triangle inequality violated");
  }
}

// Half-angle forms via atan2: well conditioned down to needle-thin
// triangles, where the plain law-of-cosines acos loses ~half the digits.
double spherical_angle(double opposite, double s1, double s2) {
  double s = 0.5 * (opposite + s1 + s2);
  double num = std::sin(s - s1) * std::sin(s - s2);
  double den = std::sin(s) * std::sin(s - opposite);
  return 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)), std::sqrt(std::max(den, 0.0)));
}

double euclidean_angle(double opposite, double s1, double s2) {
  double s = 0.5 * (opposite + s1 + s2);
  double num = (s - s1) * (s - s2);
  double den = s * (s - opposite);
  return 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)), std::sqrt(std::max(den, 0.0)));
}

}  // namespace

SphericalTriangle::SphericalTriangle(double a, double b, double c) : a_(a), b_(b), c_(c) {
  check_spherical_sides(a, b, c);
}

Angles SphericalTriangle::angles() const {
  return {spherical_angle(a_, b_, c_), spherical_angle(b_, c_, a_),
          spherical_angle(c_, a_, b_)};
}

double SphericalTriangle::area() const { return angles().sum() - kPi; }

double SphericalTriangle::circumradius() const {
  // sin R is the plane circumradius of the chord triangle; this is the
  // classical tan R = tan(a/2) / cos(S - alpha) in a form that keeps full
  // precision on thin triangles. The half-angle-sum cosine only decides
  // the hemisphere (R above or below pi/2).
  double re = EuclideanTriangle(chd(a_), chd(b_), chd(c_)).circumradius();
  double c2 = (1.0 - re) * (1.0 + re);
  double offset = c2 > 0.0 ? std::sqrt(c2) : 0.0;
  Angles an = angles();
  if (std::cos(0.5 * an.sum() - an.alpha) < 0.0) offset = -offset;
  return std::atan2(re, offset);
}

bool SphericalTriangle::circumradius_proper(double tol) const {
  return circumradius() < 0.5 * kPi - tol;
}

double SphericalTriangle::diameter() const { return std::max({a_, b_, c_}); }

EuclideanTriangle::EuclideanTriangle(double a, double b, double c) : a_(a), b_(b), c_(c) {
  for (double s : {a, b, c}) {
    if (!(s > kDegeneracyFloor) || !std::isfinite(s)) {
      throw degenerate_error("euclidean side must be positive and finite");
    }
  }
  if (!(a < b + c && b < a + c && c < a + b)) {
    throw degenerate_error("euclidean triangle inequality violated");
  }
}

Angles EuclideanTriangle::angles() const {
  return {euclidean_angle(a_, b_, c_), euclidean_angle(b_, c_, a_),
          euclidean_angle(c_, a_, b_)};
}

double EuclideanTriangle::area() const {
  // Numerically stable Heron (Kahan ordering).
  double x = a_, y = b_, z = c_;
  if (x < y) std::swap(x, y);
  if (x < z) std::swap(x, z);
  if (y < z) std::swap(y, z);
  double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(t, 0.0));
}

double EuclideanTriangle::circumradius() const {
  return a_ * b_ * c_ / (4.0 * area());
}

double EuclideanTriangle::diameter() const { return std::max({a_, b_, c_}); }

TriangleParams TriangleParams::canonical() const {
  TriangleParams p = *this;
  if (p.t > 0.5 * kPi) p.t = kPi - p.t;
  return p;
}

bool TriangleParams::valid() const {
  if (!(R > 0.0 && R < 0.5 * kPi)) return false;
  if (!(phi > 0.0 && phi < 0.5 * kPi)) return false;
  if (!(t > phi && t < kPi - phi)) return false;
  double r = std::sin(R);
  for (double ch : {2.0 * r * std::sin(t - phi), 2.0 * r * std::sin(t + phi),
                    2.0 * r * std::sin(2.0 * phi)}) {
    if (!(ch > kDegeneracyFloor)) return false;
  }
  return true;
}

void TriangleParams::require_valid() const {
  if (!valid()) throw degenerate_error("invalid (R, phi, t) parameters");
}

SphericalTriangle triangle_from_params(const TriangleParams& p) {
  p.require_valid();
  double r = std::sin(p.R);
  return SphericalTriangle(chd_inv(2.0 * r * std::sin(p.t - p.phi)),
                           chd_inv(2.0 * r * std::sin(p.t + p.phi)),
                           chd_inv(2.0 * r * std::sin(2.0 * p.phi)));
}

TriangleParams params_from_triangle(const SphericalTriangle& tri) {
  double R = tri.circumradius();
  if (!(R < 0.5 * kPi)) throw degenerate_error("circumradius must be below pi/2");
  // The chord triangle is inscribed in the circle of radius sin R; its
  // angle opposite chd(x) equals the half central angle of that chord.
  EuclideanTriangle chords(chd(tri.a()), chd(tri.b()), chd(tri.c()));
  Angles prim = chords.angles();
  TriangleParams p;
  p.R = R;
  p.phi = 0.5 * prim.gamma;
  p.t = p.phi + std::min(prim.alpha, prim.beta);
  return p.canonical();
}

Vec3 Vec3::normalized() const {
  double n = norm();
  if (!(n > 0.0)) throw degenerate_error("cannot normalize zero vector");
  return {x / n, y / n, z / n};
}

double spherical_distance(const Vec3& u, const Vec3& v) {
  // atan2 form is accurate for both small and near-pi separations.
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

EmbeddedTriangle embed(const TriangleParams& p) {
  p.require_valid();
  double r = std::sin(p.R);
  double z = std::cos(p.R);
  auto on_circle = [&](double theta) -> Vec3 {
    return {r * std::cos(theta), r * std::sin(theta), z};
  };
  return {on_circle(0.0), on_circle(2.0 * (p.t - p.phi)), on_circle(2.0 * (p.t + p.phi))};
}

std::array<double, 3> EmbeddedTriangle::side_lengths() const {
  return {spherical_distance(v1, v2), spherical_distance(v1, v3),
          spherical_distance(v2, v3)};
}

Vec3 EmbeddedTriangle::plane_normal() const {
  Vec3 n = (v2 - v1).cross(v3 - v1).normalized();
  if (n.dot(v1) < 0.0) n = n * -1.0;
  return n;
}

double EmbeddedTriangle::plane_offset() const { return plane_normal().dot(v1); }

namespace {

double corner_angle(const Vec3& at, const Vec3& p, const Vec3& q) {
  // Tangent-plane projections of the great-circle initial velocities.
  Vec3 wp = (p - at * at.dot(p)).normalized();
  Vec3 wq = (q - at * at.dot(q)).normalized();
  return std::atan2(wp.cross(wq).norm(), wp.dot(wq));
}

}  // namespace

Angles EmbeddedTriangle::vertex_angles() const {
  return {corner_angle(v3, v1, v2),   // alpha, opposite side a = (v1, v2)
          corner_angle(v2, v1, v3),   // beta, opposite side b = (v1, v3)
          corner_angle(v1, v2, v3)};  // gamma at the marked vertex
}

IdentityResiduals napier_delambre_mollweide_check(const SphericalTriangle& tri) {
  double a = tri.a(), b = tri.b(), c = tri.c();
  Angles an = tri.angles();
  IdentityResiduals res;
  res.napier = std::abs(std::tan(0.5 * (c - b)) * std::sin(0.5 * (an.gamma + an.beta)) -
                        std::sin(0.5 * (an.gamma - an.beta)) * std::tan(0.5 * a));
  res.delambre =
      std::abs(std::cos(0.5 * an.gamma) * std::cos(0.5 * (a - b)) -
               std::cos(0.5 * c) * std::sin(0.5 * (an.alpha + an.beta)));
  // "d" here is the side opposite gamma.
  res.cosines_for_angles =
      std::abs(std::cos(an.gamma) -
               (-std::cos(an.alpha) * std::cos(an.beta) +
                std::sin(an.alpha) * std::sin(an.beta) * std::cos(c)));
  return res;
}

double IdentityResiduals::max() const {
  return std::max({napier, delambre, cosines_for_angles});
}

std::string IdentityResiduals::worst_name() const {
  double m = max();
  if (m == napier) return "napier";
  if (m == delambre) return "delambre";
  return "cosines_for_angles";
}

double half_angle_side(double a, double b, double gamma) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("half_angle_side: sides must be positive");
  if (!(gamma > 0.0 && gamma < kPi)) throw std::domain_error("half_angle_side: angle outside (0, pi)");
  double cg = std::cos(0.5 * gamma);
  double s = a + b;
  return std::sqrt(std::max(s * s - 4.0 * a * b * cg * cg, 0.0));
}

double spherical_sas(double a, double b, double gamma) {
  return clamped_acos(std::cos(a) * std::cos(b) +
                      std::sin(a) * std::sin(b) * std::cos(gamma));
}

}  // namespace sphdist
