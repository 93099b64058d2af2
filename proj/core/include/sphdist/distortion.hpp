#pragma once

#include <limits>
#include <span>
#include <string>

#include "sphdist/trig.hpp"

// Side-distortion families (chd, F_k, F_k*, G_k, ...) and the
// angle-distortion functional D(F, triangle) = min of the three ratios
// of transformed to original angles.

namespace sphdist {

enum class FamilyTag { Chd, Finf, Fk, FkStar, Gk, G1, G1Star, Ginf, Identity };

// Every member is increasing, concave, vanishes at 0 and is positive on the
// rest of its domain, hence subadditive; transformed side triples therefore
// always satisfy the triangle inequality.
class DistortionFamily {
 public:
  static DistortionFamily chd_family() { return {FamilyTag::Chd, 0.0}; }
  static DistortionFamily finf() { return {FamilyTag::Finf, 0.0}; }
  static DistortionFamily fk(double k);
  static DistortionFamily fk_star(double k);
  static DistortionFamily gk(double k);
  static DistortionFamily g1() { return {FamilyTag::G1, 1.0}; }
  static DistortionFamily g1_star() { return {FamilyTag::G1Star, 1.0}; }
  static DistortionFamily ginf() { return {FamilyTag::Ginf, 0.0}; }
  static DistortionFamily identity() { return {FamilyTag::Identity, 0.0}; }

  FamilyTag tag() const { return tag_; }
  double k() const { return k_; }

  // Input is a spherical arc in [0, pi] (true) or a plain length in
  // [0, inf) (false).
  bool spherical_domain() const;

  double operator()(double t) const;

  // Input value at which the two min{.,.} branches meet, or NaN for the
  // single-branch members. For the spherical families this is an arc
  // length; its chord is 1/k^2 (F_k) or 1/k (F_k*).
  double crossover() const;

  // Right derivative at 0: k for F_k, F_k*, G_k, G_k*; 1 for chd and
  // identity; +inf for F_inf and G_inf.
  double derivative_at_zero() const;

  std::string name() const;

 private:
  DistortionFamily(FamilyTag tag, double k) : tag_(tag), k_(k) {}
  FamilyTag tag_;
  double k_;
};

// Per-triangle distortion record: the transformed Euclidean triangle,
// the three per-vertex angle ratios, and D = their minimum.
struct DistortionReport {
  EuclideanTriangle transformed;
  Angles original;
  Angles image;
  double ratio_alpha = 0.0;
  double ratio_beta = 0.0;
  double ratio_gamma = 0.0;
  double D = 0.0;
};

EuclideanTriangle transform(const DistortionFamily& f, const SphericalTriangle& tri);
EuclideanTriangle transform(const DistortionFamily& f, const EuclideanTriangle& tri);

DistortionReport angle_distortion(const DistortionFamily& f, const SphericalTriangle& tri);
DistortionReport angle_distortion(const DistortionFamily& f, const EuclideanTriangle& tri);

// 1/2 for the F/G families, 1/3 for the starred cutoff families.
double distortion_threshold(const DistortionFamily& f);

// Grid check of the three structural conditions used for the planar
// families: subadditivity G(x+y) <= G(x)+G(y), square superadditivity
// G^2(x+y) >= G^2(x)+G^2(y), and the square law G(x^2) = G^2(x).
struct GConditionReport {
  bool subadditive = true;
  bool square_superadditive = true;
  bool square_law = true;
  double worst_subadditive = 0.0;         // max positive violation
  double worst_square_superadditive = 0.0;
  double worst_square_law = 0.0;          // max |G(x^2) - G^2(x)|

  bool all() const { return subadditive && square_superadditive && square_law; }
};

GConditionReport g_conditions_check(const DistortionFamily& g, std::span<const double> grid,
                                    double tol = 1e-12);

// Isosceles closed forms at t = pi/2 (two equal sides meeting at gamma).
// cos of the transformed apex angle under F_inf:
//   cos(gamma~) = 1 - sqrt(1 - sin^2(a/2) / sin^2 R).
double isosceles_cos_gamma_tilde(double R, double phi);
// cos(gamma/2) = tan(a/2) / tan R for the same isosceles triangle.
double isosceles_cos_gamma_half(double R, double phi);
// Equal side a of the isosceles triangle at t = pi/2.
double isosceles_equal_side(double R, double phi);

// Algebraic witness that gamma~ > gamma/2: value of t^2 - T t + 2 at
// t = tan(a/2), T = tan R. Positive for all R < b0.
double isosceles_apex_margin(double R, double phi);

}  // namespace sphdist
