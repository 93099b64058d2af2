#include <cmath>
#include <random>

#include "doctest.h"
#include "sphdist/certify.hpp"  // random_params sampler
#include "sphdist/trig.hpp"

using namespace sphdist;

namespace {

// Side of the regular triangle cut from the sphere by a tetrahedron face.
const double kTetraSide = std::acos(-1.0 / 3.0);

}  // namespace

TEST_SUITE("trig") {

TEST_CASE("named constants") {
  CHECK(b0() == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-16));
  CHECK(std::abs(b0() - std::acos(1.0 / 3.0)) <= 1e-15);
  CHECK(b0() == doctest::Approx(1.2309594173407747).epsilon(1e-15));
  CHECK(r0() == doctest::Approx(1.1071487177940904).epsilon(1e-15));
}

TEST_CASE("chord function endpoints and midpoint") {
  CHECK(chd(0.0) == 0.0);
  CHECK(chd(kPi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(chd(b0()) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(chd_inv(0.0) == 0.0);
  CHECK(chd_inv(2.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(chd_inv(1.0) == doctest::Approx(kPi / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(chd(-0.1), std::domain_error);
  CHECK_THROWS_AS(chd(kPi + 0.1), std::domain_error);
  CHECK_THROWS_AS(chd_inv(2.5), std::domain_error);
}

TEST_CASE("chord round trip and monotonicity") {
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    double t = kPi * i / 200.0;
    double c = chd(t);
    CHECK(c > prev);
    prev = c;
    CHECK(chd(chd_inv(c)) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("clamped inverse trig guard") {
  CHECK(clamped_acos(1.0 + 5e-10) == 0.0);
  CHECK(clamped_asin(-1.0 - 5e-10) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(clamped_acos(1.0 + 1e-8), degenerate_error);
  CHECK_THROWS_AS(clamped_asin(-1.0 - 1e-8), degenerate_error);
}

TEST_CASE("spherical triangle construction rejects degenerate sides") {
  CHECK_THROWS_AS(SphericalTriangle(0.1, 0.1, 0.5), degenerate_error);
  CHECK_THROWS_AS(SphericalTriangle(0.0, 0.5, 0.5), degenerate_error);
  CHECK_THROWS_AS(SphericalTriangle(kPi, 0.5, 0.5), degenerate_error);
  CHECK_THROWS_AS(SphericalTriangle(2.5, 2.5, 2.0), degenerate_error);  // perimeter
  CHECK_NOTHROW(SphericalTriangle(0.5, 0.6, 0.7));
}

TEST_CASE("equilateral tetra-face triangle has angles 2pi/3") {
  SphericalTriangle tri(kTetraSide, kTetraSide, kTetraSide);
  Angles an = tri.angles();
  CHECK(an.alpha == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(an.beta == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(an.gamma == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(tri.area() == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(tri.circumradius() == doctest::Approx(b0()).epsilon(1e-13));
}

TEST_CASE("tiny equilateral triangle approaches the planar limit") {
  SphericalTriangle tri(1e-4, 1e-4, 1e-4);
  Angles an = tri.angles();
  for (double a : an.as_array()) CHECK(std::abs(a - kPi / 3.0) < 1e-6);
  CHECK(tri.circumradius() == doctest::Approx(1e-4 / std::sqrt(3.0)).epsilon(1e-8));
}

TEST_CASE("octant triangle") {
  SphericalTriangle tri(kPi / 2, kPi / 2, kPi / 2);
  Angles an = tri.angles();
  for (double a : an.as_array()) CHECK(a == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(tri.area() == doctest::Approx(kPi / 2).epsilon(1e-13));
  CHECK(tri.diameter() == doctest::Approx(kPi / 2).epsilon(1e-15));
  // center of the octant cap is (1,1,1)/sqrt(3)
  CHECK(tri.circumradius() == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-13));
}

TEST_CASE("triangle with two right angles and one 2pi/3 angle has circumradius arctan 2") {
  // Law of cosines for angles gives sides (pi/2, pi/2, 2pi/3).
  SphericalTriangle tri(kPi / 2, kPi / 2, 2.0 * kPi / 3.0);
  Angles an = tri.angles();
  CHECK(an.alpha == doctest::Approx(kPi / 2).epsilon(1e-13));
  CHECK(an.beta == doctest::Approx(kPi / 2).epsilon(1e-13));
  CHECK(an.gamma == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(tri.circumradius() == doctest::Approx(r0()).epsilon(1e-12));
}

TEST_CASE("tiny triangle area matches the planar chord area") {
  SphericalTriangle tri(1e-3, 1.2e-3, 1.5e-3);
  EuclideanTriangle flat(chd(1e-3), chd(1.2e-3), chd(1.5e-3));
  CHECK(tri.area() == doctest::Approx(flat.area()).epsilon(1e-6));
}

TEST_CASE("side ordering matches angle ordering") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    TriangleParams p = random_params(rng, 1.5, 1e-2);
    SphericalTriangle tri = triangle_from_params(p);
    auto s = tri.sides();
    auto a = tri.angles().as_array();
    for (int u = 0; u < 3; ++u) {
      for (int v = 0; v < 3; ++v) {
        if (s[u] < s[v]) CHECK(a[u] <= a[v] + 1e-12);
      }
    }
  }
}

TEST_CASE("parameter chart produces the stated chord sides") {
  double R = 1.1, phi = kPi / 6.0, t = kPi / 2.0;
  SphericalTriangle tri = triangle_from_params({R, phi, t});
  // phi = pi/6, t = pi/2 is the equilateral section of the chart.
  CHECK(tri.a() == doctest::Approx(tri.b()).epsilon(1e-15));
  CHECK(tri.b() == doctest::Approx(tri.c()).epsilon(1e-15));
  CHECK(chd(tri.a()) ==
        doctest::Approx(std::sqrt(3.0) * std::sin(R)).epsilon(1e-14));
  // isosceles at t = pi/2: chd a = chd b = 2 sin R cos phi
  SphericalTriangle iso = triangle_from_params({1.0, 0.4, kPi / 2.0});
  CHECK(chd(iso.a()) == doctest::Approx(2.0 * std::sin(1.0) * std::cos(0.4)).epsilon(1e-14));
  CHECK(iso.a() == doctest::Approx(iso.b()).epsilon(1e-15));
}

TEST_CASE("equilateral chart point at R = b0 gives the tetra-face side") {
  SphericalTriangle tri = triangle_from_params({b0(), kPi / 6.0, kPi / 2.0});
  CHECK(tri.a() == doctest::Approx(kTetraSide).epsilon(1e-13));
}

TEST_CASE("chart round trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100000; ++i) {
    TriangleParams p = random_params(rng, 1.5, 2e-2);
    TriangleParams q = params_from_triangle(triangle_from_params(p));
    CHECK(std::abs(q.R - p.R) < 1e-9);
    CHECK(std::abs(q.phi - p.phi) < 1e-9);
    CHECK(std::abs(q.t - p.t) < 1e-9);
  }
}

TEST_CASE("chart reflection symmetry in t") {
  TriangleParams p{1.0, 0.3, 1.2};
  TriangleParams q{1.0, 0.3, kPi - 1.2};
  auto sp = triangle_from_params(p).sides();
  auto sq = triangle_from_params(q).sides();
  // reflection swaps the two legs
  CHECK(sp[0] == doctest::Approx(sq[1]).epsilon(1e-15));
  CHECK(sp[1] == doctest::Approx(sq[0]).epsilon(1e-15));
  CHECK(sp[2] == doctest::Approx(sq[2]).epsilon(1e-15));
  CHECK(q.canonical().t == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("chart validity checks") {
  CHECK_FALSE(TriangleParams{0.0, 0.3, 1.0}.valid());
  CHECK_FALSE(TriangleParams{1.0, 0.0, 1.0}.valid());
  CHECK_FALSE(TriangleParams{1.0, 0.5, 0.4}.valid());  // t <= phi
  CHECK_FALSE(TriangleParams{1.0, 0.5, kPi - 0.4}.valid());
  CHECK(TriangleParams{1.0, 0.5, 1.0}.valid());
  CHECK_THROWS_AS(triangle_from_params({1.0, 0.5, 0.4}), degenerate_error);
}

TEST_CASE("embedding agrees with the closed-form sides and angles") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    TriangleParams p = random_params(rng, 1.5, 2e-2);
    SphericalTriangle tri = triangle_from_params(p);
    EmbeddedTriangle emb = embed(p);
    auto arcs = emb.side_lengths();
    auto sides = tri.sides();
    for (int j = 0; j < 3; ++j) CHECK(std::abs(arcs[j] - sides[j]) < 1e-10);
    Angles an = tri.angles();
    Angles em = emb.vertex_angles();
    CHECK(std::abs(an.alpha - em.alpha) < 1e-9);
    CHECK(std::abs(an.beta - em.beta) < 1e-9);
    CHECK(std::abs(an.gamma - em.gamma) < 1e-9);
    CHECK(std::abs(emb.plane_offset() - std::cos(p.R)) < 1e-12);
  }
}

TEST_CASE("embedded equilateral has equal mutual angles") {
  EmbeddedTriangle emb = embed({kPi / 3.0, kPi / 6.0, kPi / 2.0});
  double d12 = spherical_distance(emb.v1, emb.v2);
  double d13 = spherical_distance(emb.v1, emb.v3);
  double d23 = spherical_distance(emb.v2, emb.v3);
  CHECK(d12 == doctest::Approx(d13).epsilon(1e-14));
  CHECK(d12 == doctest::Approx(d23).epsilon(1e-14));
  for (const Vec3* v : {&emb.v1, &emb.v2, &emb.v3}) {
    CHECK(v->norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("law of sines ratio is constant") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20000; ++i) {
    TriangleParams p = random_params(rng, 1.5, 2e-2);
    SphericalTriangle tri = triangle_from_params(p);
    Angles an = tri.angles();
    auto s = tri.sides();
    double r0v = std::sin(s[0]) / std::sin(an.alpha);
    double r1v = std::sin(s[1]) / std::sin(an.beta);
    double r2v = std::sin(s[2]) / std::sin(an.gamma);
    double hi = std::max({r0v, r1v, r2v});
    double lo = std::min({r0v, r1v, r2v});
    CHECK((hi - lo) / hi < 1e-10);
  }
}

TEST_CASE("classical identity residuals vanish") {
  for (auto sides : {std::array<double, 3>{kTetraSide, kTetraSide, kTetraSide},
                     std::array<double, 3>{kPi / 2, kPi / 2, kPi / 2},
                     std::array<double, 3>{0.5, 0.8, 1.1}}) {
    SphericalTriangle tri(sides[0], sides[1], sides[2]);
    IdentityResiduals res = napier_delambre_mollweide_check(tri);
    CHECK(res.max() < 1e-12);
    CHECK((res.worst_name() == "napier" || res.worst_name() == "delambre" ||
           res.worst_name() == "cosines_for_angles"));
  }
}

TEST_CASE("euclidean triangle angles") {
  EuclideanTriangle eq(1.0, 1.0, 1.0);
  for (double a : eq.angles().as_array()) {
    CHECK(a == doctest::Approx(kPi / 3.0).epsilon(1e-14));
  }
  EuclideanTriangle right(3.0, 4.0, 5.0);
  Angles an = right.angles();
  CHECK(an.alpha == doctest::Approx(std::asin(3.0 / 5.0)).epsilon(1e-14));
  CHECK(an.beta == doctest::Approx(std::asin(4.0 / 5.0)).epsilon(1e-14));
  CHECK(an.gamma == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(an.sum() == doctest::Approx(kPi).epsilon(1e-14));
  EuclideanTriangle obtuse(1.0, 1.0, std::sqrt(3.0));
  Angles ob = obtuse.angles();
  CHECK(ob.alpha == doctest::Approx(kPi / 6.0).epsilon(1e-13));
  CHECK(ob.gamma == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-13));
}

TEST_CASE("euclidean triangle invariants and errors") {
  CHECK_THROWS_AS(EuclideanTriangle(1.0, 1.0, 3.0), degenerate_error);
  CHECK_THROWS_AS(EuclideanTriangle(0.0, 1.0, 1.0), degenerate_error);
  EuclideanTriangle t(3.0, 4.0, 5.0);
  CHECK(t.area() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(t.circumradius() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(t.diameter() == 5.0);
}

TEST_CASE("third side from two sides and the included angle") {
  CHECK(half_angle_side(1.0, 1.0, kPi / 3.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(half_angle_side(1.0, 1.0, kPi - 1e-9) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(half_angle_side(3.0, 4.0, kPi / 2.0) == doctest::Approx(5.0).epsilon(1e-13));
  // agreement with the plain law of cosines
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng), g = u(rng);
    double lc = std::sqrt(a * a + b * b - 2.0 * a * b * std::cos(g));
    CHECK(half_angle_side(a, b, g) == doctest::Approx(lc).epsilon(1e-12));
  }
  CHECK_THROWS_AS(half_angle_side(-1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("spherical side-angle-side solve") {
  // octant: two quarter arcs meeting at a right angle close with a quarter arc
  CHECK(spherical_sas(kPi / 2, kPi / 2, kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-13));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    TriangleParams p = random_params(rng, 1.5, 2e-2);
    SphericalTriangle tri = triangle_from_params(p);
    Angles an = tri.angles();
    CHECK(spherical_sas(tri.a(), tri.b(), an.gamma) ==
          doctest::Approx(tri.c()).epsilon(1e-9));
  }
}

}  // TEST_SUITE
