#include "sphdist/projection.hpp"

#include <algorithm>
#include <cmath>

namespace sphdist {

double eta(double tau, double R) {
  if (!(tau > 0.0 && tau < kPi)) throw std::domain_error("eta: tau outside (0, pi)");
  if (!(R >= 0.0 && R < 0.5 * kPi)) throw std::domain_error("eta: R outside [0, pi/2)");
  // arccot with range (0, pi).
  return std::atan2(std::sin(tau), std::cos(tau) / std::cos(R));
}

double eta_derivative(double tau, double R) {
  if (!(tau >= 0.0 && tau <= kPi)) throw std::domain_error("eta_derivative: tau outside [0, pi]");
  if (!(R >= 0.0 && R < 0.5 * kPi)) throw std::domain_error("eta_derivative: R outside [0, pi/2)");
  double ct = std::cos(tau), st = std::sin(tau), cr = std::cos(R);
  return cr / (ct * ct + cr * cr * st * st);
}

double eta_unit_slope_tau(double R) {
  return std::asin(1.0 / (std::sqrt(2.0) * std::cos(0.5 * R)));
}

double gamma_of_t(double R, double phi, double t) {
  TriangleParams{R, phi, t}.require_valid();
  return eta(t + phi, R) - eta(t - phi, R);
}

SmallTriangleBounds small_triangle_bounds(const SphericalTriangle& tri, double tol) {
  double R = tri.circumradius();
  if (!(R < 0.5 * kPi)) throw degenerate_error("small_triangle_bounds requires R < pi/2");
  double chd_d = chd(tri.diameter());

  Angles an = tri.angles();
  auto sph = an.as_array();
  std::sort(sph.begin(), sph.end());

  SmallTriangleBounds out;
  out.sum_alpha_beta = sph[0] + sph[1];
  out.lower = 0.5 * chd_d / std::tan(R);
  out.upper = 4.0 * chd_d / std::sin(2.0 * R);
  out.sandwich_holds = out.lower <= out.sum_alpha_beta + tol &&
                       out.sum_alpha_beta <= out.upper + tol;

  out.hypothesis_met = chd_d <= std::sin(0.5 * R) / std::sqrt(2.0);
  EuclideanTriangle chords(chd(tri.a()), chd(tri.b()), chd(tri.c()));
  auto prim = chords.angles().as_array();
  auto orig = an.as_array();
  // Sorting preserves the vertex correspondence: larger angles stay
  // opposite larger sides under chd.
  std::sort(prim.begin(), prim.end());
  std::sort(orig.begin(), orig.end());
  out.alpha_le_alpha_prime = orig[0] <= prim[0] + tol;
  out.beta_le_beta_prime = orig[1] <= prim[1] + tol;
  return out;
}

AngleRatios angle_ratio_bounds(const SphericalTriangle& tri) {
  double R = tri.circumradius();
  if (!(R < 0.5 * kPi)) throw degenerate_error("angle_ratio_bounds requires R < pi/2");
  Angles sph = tri.angles();
  EuclideanTriangle chords(chd(tri.a()), chd(tri.b()), chd(tri.c()));
  Angles prim = chords.angles();
  AngleRatios out;
  out.ratio_alpha = prim.alpha / sph.alpha;
  out.ratio_beta = prim.beta / sph.beta;
  out.ratio_gamma = prim.gamma / sph.gamma;
  out.cos_r = std::cos(R);
  out.sec_r = 1.0 / std::cos(R);
  return out;
}

bool AngleRatios::within_bounds(double tol) const {
  for (double r : {ratio_alpha, ratio_beta, ratio_gamma}) {
    if (r < cos_r - tol || r > sec_r + tol) return false;
  }
  return true;
}

namespace {

struct PlanarVertices {
  // v0 = (0, 0), v1 = (c, 0), v2 placed by the side lengths; side c is
  // opposite v2, side a opposite v0, side b opposite v1.
  double v1x, v2x, v2y;
};

PlanarVertices place(const EuclideanTriangle& t) {
  double a = t.a(), b = t.b(), c = t.c();
  double x = (b * b + c * c - a * a) / (2.0 * c);
  double y2 = b * b - x * x;
  if (!(y2 > 0.0)) throw degenerate_error("affine map: near-collinear triangle");
  return {c, x, std::sqrt(y2)};
}

}  // namespace

AffineLipschitz affine_lipschitz_bound(const EuclideanTriangle& from,
                                       const EuclideanTriangle& to) {
  PlanarVertices p = place(from);
  PlanarVertices q = place(to);

  // Linear part M maps edge vectors e1 = v1, e2 = v2 to their images.
  // M = [f1 f2] [e1 e2]^{-1} with e1 = (p.v1x, 0).
  double det = p.v1x * p.v2y;
  double m00 = (q.v1x * p.v2y) / det;
  double m01 = (q.v2x * p.v1x - q.v1x * p.v2x) / det;
  double m10 = 0.0;
  double m11 = (q.v2y * p.v1x) / det;

  // Largest singular value of the 2x2 matrix.
  double e = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
  double d = m00 * m11 - m01 * m10;
  double disc = std::sqrt(std::max(e * e - 4.0 * d * d, 0.0));
  AffineLipschitz out;
  out.L_true = std::sqrt(0.5 * (e + disc));

  out.l = std::max({to.a() / from.a(), to.b() / from.b(), to.c() / from.c()});

  auto an = from.angles().as_array();
  std::sort(an.begin(), an.end());
  double beta = an[1];
  out.bound = out.l * kPi * kPi / (beta * beta);
  return out;
}

}  // namespace sphdist
