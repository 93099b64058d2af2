#pragma once

#include "sphdist/trig.hpp"

// Central projection of a spherical triangle onto the plane through its
// vertices: the angle distortion law eta(tau), the small-triangle
// comparison bounds, and the affine Lipschitz estimate.

namespace sphdist {

// Angle a plane direction makes with the circumscribed circle, mapped to
// the angle its spherical preimage makes: eta = arccot(sec R cot tau),
// with arccot ranged over (0, pi) so eta is continuous across tau = pi/2.
double eta(double tau, double R);

// d eta / d tau = cos R / (cos^2 tau + cos^2 R sin^2 tau); increases from
// cos R at tau = 0 to sec R at tau = pi/2.
double eta_derivative(double tau, double R);

// Unique solution of eta'(tau) = 1 on [0, pi/2]:
// tau0 = arcsin(2^{-1/2} sec(R/2)).
double eta_unit_slope_tau(double R);

// Spherical angle at the marked vertex: gamma(t) = eta(t+phi) - eta(t-phi).
double gamma_of_t(double R, double phi, double t);

// Two-sided comparison of the sum of the two smaller spherical angles with
// the chord diameter,
//   (1/2) chd d cot R <= alpha + beta <= 4 chd d csc(2R),
// plus the small-triangle angle comparison alpha <= alpha', beta <= beta'
// that holds whenever chd d <= 2^{-1/2} sin(R/2).
struct SmallTriangleBounds {
  double lower = 0.0;
  double sum_alpha_beta = 0.0;
  double upper = 0.0;
  bool sandwich_holds = false;
  bool hypothesis_met = false;  // chd d <= 2^{-1/2} sin(R/2)
  bool alpha_le_alpha_prime = false;
  bool beta_le_beta_prime = false;
};

SmallTriangleBounds small_triangle_bounds(const SphericalTriangle& tri, double tol = 1e-12);

// Per-vertex ratios of the chord-triangle angles to the spherical angles;
// all lie in [cos R, sec R].
struct AngleRatios {
  double ratio_alpha = 0.0;
  double ratio_beta = 0.0;
  double ratio_gamma = 0.0;
  double cos_r = 0.0;
  double sec_r = 0.0;

  bool within_bounds(double tol = 1e-12) const;
};

AngleRatios angle_ratio_bounds(const SphericalTriangle& tri);

// Largest singular value of the vertex-to-vertex affine map between two
// Euclidean triangles, the max side-length ratio l, and the bound
// l * pi^2 / beta^2 with beta the intermediate angle of the source.
struct AffineLipschitz {
  double L_true = 0.0;
  double l = 0.0;
  double bound = 0.0;
};

AffineLipschitz affine_lipschitz_bound(const EuclideanTriangle& from,
                                       const EuclideanTriangle& to);

}  // namespace sphdist
