#include "sphdist/distortion.hpp"

#include <algorithm>
#include <cmath>

namespace sphdist {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

DistortionFamily DistortionFamily::fk(double k) {
  if (!(k > 0.0)) throw std::domain_error("F_k requires k > 0");
  return {FamilyTag::Fk, k};
}

DistortionFamily DistortionFamily::fk_star(double k) {
  if (!(k > 0.0)) throw std::domain_error("F_k* requires k > 0");
  return {FamilyTag::FkStar, k};
}

DistortionFamily DistortionFamily::gk(double k) {
  if (!(k > 0.0)) throw std::domain_error("G_k requires k > 0");
  return {FamilyTag::Gk, k};
}

bool DistortionFamily::spherical_domain() const {
  switch (tag_) {
    case FamilyTag::Chd:
    case FamilyTag::Finf:
    case FamilyTag::Fk:
    case FamilyTag::FkStar:
      return true;
    default:
      return false;
  }
}

double DistortionFamily::operator()(double t) const {
  if (spherical_domain()) {
    if (t < 0.0 || t > kPi) throw std::domain_error(name() + ": arc outside [0, pi]");
  } else if (t < 0.0 || !std::isfinite(t)) {
    throw std::domain_error(name() + ": length must be finite and >= 0");
  }
  switch (tag_) {
    case FamilyTag::Chd:
      return chd(t);
    case FamilyTag::Finf:
      return std::sqrt(chd(t));
    case FamilyTag::Fk: {
      double x = chd(t);
      return std::min(k_ * x, std::sqrt(x));
    }
    case FamilyTag::FkStar:
      return std::min(k_ * chd(t), 1.0);
    case FamilyTag::Gk:
      return std::min(k_ * t, std::sqrt(t));
    case FamilyTag::G1:
      return std::min(t, std::sqrt(t));
    case FamilyTag::G1Star:
      return std::min(t, 1.0);
    case FamilyTag::Ginf:
      return std::sqrt(t);
    case FamilyTag::Identity:
      return t;
  }
  return kNan;
}

double DistortionFamily::crossover() const {
  switch (tag_) {
    case FamilyTag::Fk: {
      double x = 1.0 / (k_ * k_);
      return x <= 2.0 ? chd_inv(x) : kNan;
    }
    case FamilyTag::FkStar: {
      double x = 1.0 / k_;
      return x <= 2.0 ? chd_inv(x) : kNan;
    }
    case FamilyTag::Gk:
      return 1.0 / (k_ * k_);
    case FamilyTag::G1:
      return 1.0;
    case FamilyTag::G1Star:
      return 1.0;
    default:
      return kNan;
  }
}

double DistortionFamily::derivative_at_zero() const {
  switch (tag_) {
    case FamilyTag::Chd:
    case FamilyTag::Identity:
      return 1.0;
    case FamilyTag::Fk:
    case FamilyTag::FkStar:
    case FamilyTag::Gk:
      return k_;
    case FamilyTag::G1:
    case FamilyTag::G1Star:
      return 1.0;
    default:
      return kInf;
  }
}

std::string DistortionFamily::name() const {
  switch (tag_) {
    case FamilyTag::Chd: return "chd";
    case FamilyTag::Finf: return "finf";
    case FamilyTag::Fk: return "fk";
    case FamilyTag::FkStar: return "fkstar";
    case FamilyTag::Gk: return "gk";
    case FamilyTag::G1: return "g1";
    case FamilyTag::G1Star: return "g1star";
    case FamilyTag::Ginf: return "ginf";
    case FamilyTag::Identity: return "identity";
  }
  return "?";
}

namespace {

EuclideanTriangle transform_sides(const DistortionFamily& f, double a, double b, double c) {
  double ta = f(a), tb = f(b), tc = f(c);
  // Concavity guarantees the triangle inequality; the constructor enforces
  // it and any failure beyond rounding indicates a broken family.
  try {
    return EuclideanTriangle(ta, tb, tc);
  } catch (const degenerate_error&) {
    throw std::runtime_error("transform: " + f.name() +
                             " produced an invalid side triple (non-subadditive?)");
  }
}

template <typename Triangle>
DistortionReport report_for(const DistortionFamily& f, const Triangle& tri,
                            const EuclideanTriangle& image) {
  Angles in = tri.angles();
  Angles out = image.angles();
  DistortionReport rep{image, in, out,
                       out.alpha / in.alpha, out.beta / in.beta, out.gamma / in.gamma, 0.0};
  rep.D = std::min({rep.ratio_alpha, rep.ratio_beta, rep.ratio_gamma});
  return rep;
}

}  // namespace

EuclideanTriangle transform(const DistortionFamily& f, const SphericalTriangle& tri) {
  if (!f.spherical_domain() && f.tag() != FamilyTag::Identity) {
    throw std::domain_error("family " + f.name() + " is not defined on spherical sides");
  }
  return transform_sides(f, tri.a(), tri.b(), tri.c());
}

EuclideanTriangle transform(const DistortionFamily& f, const EuclideanTriangle& tri) {
  if (f.spherical_domain()) {
    throw std::domain_error("family " + f.name() + " expects spherical sides");
  }
  return transform_sides(f, tri.a(), tri.b(), tri.c());
}

DistortionReport angle_distortion(const DistortionFamily& f, const SphericalTriangle& tri) {
  if (!tri.circumradius_proper()) {
    throw degenerate_error("angle distortion requires circumradius < pi/2");
  }
  return report_for(f, tri, transform(f, tri));
}

DistortionReport angle_distortion(const DistortionFamily& f, const EuclideanTriangle& tri) {
  return report_for(f, tri, transform(f, tri));
}

double distortion_threshold(const DistortionFamily& f) {
  switch (f.tag()) {
    case FamilyTag::FkStar:
    case FamilyTag::G1Star:
      return 1.0 / 3.0;
    default:
      return 0.5;
  }
}

GConditionReport g_conditions_check(const DistortionFamily& g, std::span<const double> grid,
                                    double tol) {
  GConditionReport rep;
  for (double x : grid) {
    double gx = g(x);
    double law = std::abs(g(x * x) - gx * gx);
    rep.worst_square_law = std::max(rep.worst_square_law, law);
    for (double y : grid) {
      double gy = g(y);
      double gs = g(x + y);
      rep.worst_subadditive = std::max(rep.worst_subadditive, gs - (gx + gy));
      rep.worst_square_superadditive =
          std::max(rep.worst_square_superadditive, gx * gx + gy * gy - gs * gs);
    }
  }
  rep.subadditive = rep.worst_subadditive <= tol;
  rep.square_superadditive = rep.worst_square_superadditive <= tol;
  rep.square_law = rep.worst_square_law <= tol;
  return rep;
}

double isosceles_equal_side(double R, double phi) {
  if (!(R > 0.0 && R < 0.5 * kPi && phi > 0.0 && phi < 0.5 * kPi)) {
    throw std::domain_error("isosceles forms require R, phi in (0, pi/2)");
  }
  return chd_inv(2.0 * std::sin(R) * std::cos(phi));
}

double isosceles_cos_gamma_tilde(double R, double phi) {
  double a = isosceles_equal_side(R, phi);
  double q = std::sin(0.5 * a) / std::sin(R);
  return 1.0 - std::sqrt(std::max(1.0 - q * q, 0.0));
}

double isosceles_cos_gamma_half(double R, double phi) {
  double a = isosceles_equal_side(R, phi);
  return std::tan(0.5 * a) / std::tan(R);
}

double isosceles_apex_margin(double R, double phi) {
  double a = isosceles_equal_side(R, phi);
  double t = std::tan(0.5 * a);
  double T = std::tan(R);
  return t * t - T * t + 2.0;
}

}  // namespace sphdist
