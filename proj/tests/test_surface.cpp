#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sphdist/distortion.hpp"
#include "sphdist/surface.hpp"
#include "sphdist/trig.hpp"

using namespace sphdist;

namespace {

const double kTetraSide = std::acos(-1.0 / 3.0);

// Four equilateral spherical triangles glued so that all twelve corners
// fall into one vertex class (found by randomized search, frozen here).
TriangleComplex one_vertex_complex(double R) {
  double s = triangle_from_params({R, kPi / 6.0, kPi / 2.0}).a();
  TriangleComplex c(Geometry::Spherical);
  for (int i = 0; i < 4; ++i) c.add_triangle(s, s, s);
  c.glue({3, 1}, {0, 2}, false);
  c.glue({2, 2}, {3, 2}, false);
  c.glue({1, 1}, {0, 0}, false);
  c.glue({2, 1}, {1, 2}, true);
  c.glue({2, 0}, {1, 0}, true);
  c.glue({0, 1}, {3, 0}, true);
  return c;
}

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("double-cover complex of the tetrahedral triangulation") {
  TriangleComplex c = weierstrass_complex();
  CHECK(c.num_triangles() == 8);
  CHECK(c.closed());
  CHECK(c.euler_characteristic() == 0);
  for (int t = 0; t < 8; ++t) {
    auto s = c.triangle_sides(t);
    SphericalTriangle tri(s[0], s[1], s[2]);
    CHECK(std::abs(tri.circumradius() - b0()) < 1e-12);
  }
  ConeAngleReport rep = total_angles(c);
  CHECK(rep.vertices.size() == 4);
  CHECK(rep.all_interior_equal(4.0 * kPi, 1e-10));
  CHECK(rep.min_excess() == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  GaussBonnetReport gb = discrete_gauss_bonnet(c);
  CHECK(gb.euler_characteristic == 0);
  CHECK(std::abs(gb.residual) < 1e-9);
  CHECK(gb.face_total == doctest::Approx(8.0 * kPi).epsilon(1e-10));
}

TEST_CASE("tetrahedral sphere triangulation") {
  TriangleComplex c = tetrahedron_complex();
  CHECK(c.num_triangles() == 4);
  CHECK(c.closed());
  CHECK(c.euler_characteristic() == 2);
  ConeAngleReport rep = total_angles(c);
  CHECK(rep.vertices.size() == 4);
  CHECK(rep.all_interior_equal(2.0 * kPi, 1e-10));
  GaussBonnetReport gb = discrete_gauss_bonnet(c);
  CHECK(std::abs(gb.residual) < 1e-9);
  CHECK(gb.face_total == doctest::Approx(4.0 * kPi).epsilon(1e-10));
}

TEST_CASE("single triangle has only boundary vertices") {
  TriangleComplex c(Geometry::Spherical);
  c.add_triangle(0.5, 0.6, 0.7);
  CHECK_FALSE(c.closed());
  CHECK(c.euler_characteristic() == 1);  // 3 - 3 + 1
  ConeAngleReport rep = total_angles(c);
  CHECK(rep.vertices.size() == 3);
  for (const auto& v : rep.vertices) CHECK(v.boundary);
  CHECK(std::isinf(rep.min_excess()));
}

TEST_CASE("double of a triangle") {
  TriangleComplex c(Geometry::Spherical);
  c.add_triangle(0.5, 0.6, 0.7);
  c.add_triangle(0.5, 0.6, 0.7);
  c.glue({0, 0}, {1, 0}, true);
  c.glue({0, 1}, {1, 1}, true);
  c.glue({0, 2}, {1, 2}, true);
  CHECK(c.closed());
  CHECK(c.euler_characteristic() == 2);
  ConeAngleReport rep = total_angles(c);
  CHECK(rep.vertices.size() == 3);
  auto corner = c.corner_angles(0);
  for (const auto& v : rep.vertices) {
    CHECK(v.corners.size() == 2);
    int i = v.corners[0] % 3;
    CHECK(v.total == doctest::Approx(2.0 * corner[i]).epsilon(1e-13));
  }
  CHECK(std::abs(discrete_gauss_bonnet(c).residual) < 1e-9);
}

TEST_CASE("gluing validation") {
  TriangleComplex c(Geometry::Euclidean);
  c.add_triangle(1.0, 1.0, 1.0);
  c.add_triangle(1.0, 1.0, 1.5);
  CHECK_THROWS(c.glue({0, 0}, {1, 2}, false));  // length mismatch
  c.glue({0, 0}, {1, 0}, false);
  CHECK_THROWS(c.glue({0, 0}, {1, 1}, false));  // side already glued
  CHECK_THROWS(c.glue({0, 1}, {2, 0}, false));  // triangle out of range
  CHECK(c.side_glued({0, 0}));
  CHECK_FALSE(c.side_glued({0, 1}));
}

TEST_CASE("four-triangle complex with a single vertex class") {
  TriangleComplex c = one_vertex_complex(b0() - 0.15);
  CHECK(c.closed());
  auto classes = c.vertex_classes();
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].size() == 12);
  CHECK(c.euler_characteristic() == -1);  // 1 - 6 + 4
  ConeAngleReport rep = total_angles(c);
  CHECK(rep.vertices[0].total > 4.0 * kPi);
  CHECK(std::abs(discrete_gauss_bonnet(c).residual) < 1e-9);
}

TEST_CASE("covering hypothesis checks") {
  // extremal double cover: radius cap is violated for any positive margin
  TriangleComplex w = weierstrass_complex();
  HypothesisCheck h1 = check_covering_hypotheses(w, 0.1, CoveringVariant::I);
  CHECK_FALSE(h1.pass);
  CHECK_FALSE(h1.radii_ok);
  CHECK(h1.angles_ok);  // 4 pi meets the 4 pi floor
  REQUIRE(h1.violating_triangle.has_value());

  // with a large margin in the second variant both clauses fail
  HypothesisCheck h2 = check_covering_hypotheses(w, 0.35, CoveringVariant::II);
  CHECK_FALSE(h2.pass);
  CHECK_FALSE(h2.radii_ok);
  CHECK_FALSE(h2.angles_ok);

  // shrunken single-vertex complex passes the first variant
  HypothesisCheck h3 =
      check_covering_hypotheses(one_vertex_complex(b0() - 0.15), 0.1, CoveringVariant::I);
  CHECK(h3.pass);
  CHECK(h3.radii_ok);
  CHECK(h3.angles_ok);

  // a fatter instance passes the second variant too
  HypothesisCheck h4 =
      check_covering_hypotheses(one_vertex_complex(1.3), 0.1, CoveringVariant::II);
  CHECK(h4.pass);
}

TEST_CASE("transforming the extremal complex flattens every vertex to 2pi") {
  TriangleComplex w = weierstrass_complex();
  for (auto f : {DistortionFamily::finf(), DistortionFamily::fk(2.0),
                 DistortionFamily::fk_star(4.0)}) {
    TransformedComplex tc = transform_complex(f, w);
    CHECK(tc.complex.geometry() == Geometry::Euclidean);
    CHECK(tc.after.all_interior_equal(2.0 * kPi, 1e-10));
    CHECK(std::abs(tc.min_excess) < 1e-10);
    // flat closed complex: vertex defects alone must balance to 2 pi chi
    GaussBonnetReport gb = discrete_gauss_bonnet(tc.complex);
    CHECK(gb.face_total == 0.0);
    CHECK(std::abs(gb.residual) < 1e-9);
    // combinatorics preserved exactly
    CHECK(tc.complex.gluings().size() == w.gluings().size());
    CHECK(tc.complex.euler_characteristic() == w.euler_characteristic());
  }
}

TEST_CASE("transformed shrunken complex keeps a positive angle excess") {
  TransformedComplex tc =
      transform_complex(DistortionFamily::finf(), one_vertex_complex(b0() - 0.15));
  CHECK(tc.min_excess > 0.0);
  AlphaQCheck aq = alpha_q_check(tc.after, 0.99);
  CHECK(aq.pass);
  CHECK(aq.min_alpha_q > 1.0);

  // no excess anywhere: the check must fail for every q < 1
  TransformedComplex flat =
      transform_complex(DistortionFamily::finf(), weierstrass_complex());
  AlphaQCheck bad = alpha_q_check(flat.after, 0.9);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.violating_vertex.has_value());
}

TEST_CASE("fixture round trip") {
  TriangleComplex c = one_vertex_complex(1.0);
  std::ostringstream out;
  write_fixture(out, c);
  std::istringstream in(out.str());
  TriangleComplex back = parse_fixture(in);
  CHECK(back.geometry() == c.geometry());
  REQUIRE(back.num_triangles() == c.num_triangles());
  for (int t = 0; t < c.num_triangles(); ++t) {
    auto a = c.triangle_sides(t), b = back.triangle_sides(t);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == b[i]);  // %.17g is lossless
  }
  REQUIRE(back.gluings().size() == c.gluings().size());
  for (size_t i = 0; i < c.gluings().size(); ++i) {
    CHECK(back.gluings()[i].a.tri == c.gluings()[i].a.tri);
    CHECK(back.gluings()[i].a.side == c.gluings()[i].a.side);
    CHECK(back.gluings()[i].b.tri == c.gluings()[i].b.tri);
    CHECK(back.gluings()[i].b.side == c.gluings()[i].b.side);
    CHECK(back.gluings()[i].reversed == c.gluings()[i].reversed);
  }
  CHECK(back.vertex_classes() == c.vertex_classes());
}

TEST_CASE("fixture parsing accepts comments and vertex records") {
  std::istringstream in(
      "# a flat square from two right triangles\n"
      "geometry euclidean\n"
      "triangle 3 4 5   # sides\n"
      "triangle 3 4 5\n"
      "glue 0:2 1:2 reversed\n"
      "vertex 0:0 1:0\n"
      "vertex 0:1 1:1\n"
      "vertex 0:2\n"
      "vertex 1:2\n");
  TriangleComplex c = parse_fixture(in);
  CHECK(c.num_triangles() == 2);
  CHECK(c.vertex_classes().size() == 4);
}

TEST_CASE("fixture errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      parse_fixture(in);
      FAIL("expected a fixture error");
    } catch (const fixture_error& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("geometry euclidean\ntriangle 1 2\n", 2);
  expect_line("geometry flat\n", 1);
  expect_line("triangle 1 1 1\n", 1);  // geometry must come first
  expect_line("geometry euclidean\nfrobnicate 1\n", 2);
  expect_line("geometry euclidean\ntriangle 1 1 1\nglue 0:0 0:5\n", 3);
  expect_line("geometry euclidean\ntriangle 1 1 1\nglue 0:0\n", 3);
  expect_line("geometry euclidean\ntriangle 3 4 5\ntriangle 3 4 5\nglue 0:0 1:1\n", 4);
  expect_line(
      "geometry euclidean\ntriangle 3 4 5\ntriangle 3 4 5\nglue 0:2 1:2\n"
      "vertex 0:0 0:1\n",
      5);
  expect_line("", 0);
}

TEST_CASE("cone density closed forms") {
  CHECK(cone_density(0.5, 1.0) == doctest::Approx(0.63521288439052592).epsilon(1e-14));
  CHECK(cone_metric_radius(0.5) ==
        doctest::Approx(std::sqrt(2.0) * std::pow(3.0, 1.0)).epsilon(1e-14));
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(cone_density_limit(q) ==
          doctest::Approx(std::sqrt((1.0 - q * q) / 2.0)).epsilon(1e-14));
    CHECK(std::abs(cone_density(q, std::sqrt(2.0) - 1e-9) - cone_density_limit(q)) <
          1e-8);
  }
  CHECK_THROWS_AS(cone_density(0.5, 1.5), std::domain_error);
  CHECK_THROWS_AS(cone_density(1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(cone_metric_radius(1.0), std::domain_error);
}

TEST_CASE("cone density decreases in the radius") {
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 10000; ++i) {
      double r = std::sqrt(2.0) * i / 10001.0;
      double v = cone_density(q, r);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("cone density has constant curvature minus one") {
  for (double q : {0.1, 0.5, 0.9}) {
    for (double r = 0.3; r <= 1.401; r += 0.1) {
      CHECK(std::abs(cone_density_curvature_fd(q, r) + 1.0) < 1e-6);
    }
  }
}

TEST_CASE("branched covering radius lower bound") {
  CHECK(branched_bloch_bound(1.0) == doctest::Approx(kPi / 3.0).epsilon(1e-14));
  CHECK(branched_bloch_bound(2.0) == doctest::Approx(b0()).epsilon(1e-14));
  CHECK(branched_bloch_bound(std::numeric_limits<double>::infinity()) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-15));
  // increasing in the branching order
  CHECK(branched_bloch_bound(3.0) > branched_bloch_bound(2.0));
}

TEST_CASE("cone exponent covering radius") {
  CHECK(spherical_bloch_radius(2.0) == doctest::Approx(b0()).epsilon(1e-13));
  CHECK(spherical_bloch_radius(1.5) ==
        doctest::Approx(std::atan(std::sqrt(2.0))).epsilon(1e-13));
  // the endpoint is a 0/0 form, returned as its limit
  CHECK(spherical_bloch_radius(3.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
}

}  // TEST_SUITE
