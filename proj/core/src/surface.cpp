#include "sphdist/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace sphdist {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

int corner_id(int tri, int corner) { return 3 * tri + corner; }

// The two corners each gluing identifies, as (corner of a, corner of b).
std::array<std::pair<int, int>, 2> glued_corners(const Gluing& g) {
  int a1 = (g.a.side + 1) % 3, a2 = (g.a.side + 2) % 3;
  int b1 = (g.b.side + 1) % 3, b2 = (g.b.side + 2) % 3;
  if (g.reversed) return {{{a1, b1}, {a2, b2}}};
  return {{{a1, b2}, {a2, b1}}};
}

}  // namespace

int TriangleComplex::add_triangle(double a, double b, double c) {
  if (geometry_ == Geometry::Spherical) {
    SphericalTriangle check(a, b, c);
  } else {
    EuclideanTriangle check(a, b, c);
  }
  sides_.push_back({a, b, c});
  glued_.push_back({-1, -1, -1});
  return num_triangles() - 1;
}

void TriangleComplex::glue(SideRef a, SideRef b, bool reversed) {
  auto check_ref = [&](SideRef s) {
    if (s.tri < 0 || s.tri >= num_triangles() || s.side < 0 || s.side > 2) {
      throw std::out_of_range("gluing references a nonexistent side");
    }
  };
  check_ref(a);
  check_ref(b);
  if (a.tri == b.tri && a.side == b.side) {
    throw std::invalid_argument("cannot glue a side to itself");
  }
  if (side_glued(a) || side_glued(b)) {
    throw std::invalid_argument("side already glued");
  }
  if (std::abs(side_length(a) - side_length(b)) > kGluingTol) {
    throw std::invalid_argument("glued sides differ in length beyond tolerance");
  }
  glued_[a.tri][a.side] = glued_[b.tri][b.side] = static_cast<int>(gluings_.size());
  gluings_.push_back({a, b, reversed});
}

bool TriangleComplex::side_glued(SideRef s) const {
  return glued_.at(s.tri).at(s.side) >= 0;
}

std::array<double, 3> TriangleComplex::corner_angles(int t) const {
  auto s = triangle_sides(t);
  Angles an = geometry_ == Geometry::Spherical
                  ? SphericalTriangle(s[0], s[1], s[2]).angles()
                  : EuclideanTriangle(s[0], s[1], s[2]).angles();
  return an.as_array();  // angle at corner i is opposite side i
}

double TriangleComplex::face_area(int t) const {
  if (geometry_ != Geometry::Spherical) return 0.0;
  auto s = triangle_sides(t);
  return SphericalTriangle(s[0], s[1], s[2]).area();
}

bool TriangleComplex::closed() const {
  for (int t = 0; t < num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      if (glued_[t][i] < 0) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> TriangleComplex::vertex_classes() const {
  UnionFind uf(3 * num_triangles());
  for (const Gluing& g : gluings_) {
    for (auto [ca, cb] : glued_corners(g)) {
      uf.unite(corner_id(g.a.tri, ca), corner_id(g.b.tri, cb));
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int c = 0; c < 3 * num_triangles(); ++c) by_root[uf.find(c)].push_back(c);
  std::vector<std::vector<int>> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

int TriangleComplex::euler_characteristic() const {
  int v = static_cast<int>(vertex_classes().size());
  int boundary_sides = 0;
  for (int t = 0; t < num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      if (glued_[t][i] < 0) ++boundary_sides;
    }
  }
  int e = static_cast<int>(gluings_.size()) + boundary_sides;
  return v - e + num_triangles();
}

double ConeAngleReport::min_excess() const {
  double m = std::numeric_limits<double>::infinity();
  for (const VertexAngle& v : vertices) {
    if (!v.boundary) m = std::min(m, v.total - 2.0 * kPi);
  }
  return m;
}

bool ConeAngleReport::all_interior_equal(double value, double tol) const {
  for (const VertexAngle& v : vertices) {
    if (!v.boundary && std::abs(v.total - value) > tol) return false;
  }
  return true;
}

ConeAngleReport total_angles(const TriangleComplex& c) {
  std::vector<std::array<double, 3>> angles(c.num_triangles());
  for (int t = 0; t < c.num_triangles(); ++t) angles[t] = c.corner_angles(t);

  ConeAngleReport rep;
  for (auto& cls : c.vertex_classes()) {
    VertexAngle v;
    v.corners = cls;
    for (int corner : cls) {
      int t = corner / 3, i = corner % 3;
      v.total += angles[t][i];
      // Corner i touches sides (i+1)%3 and (i+2)%3.
      if (!c.side_glued({t, (i + 1) % 3}) || !c.side_glued({t, (i + 2) % 3})) {
        v.boundary = true;
      }
    }
    rep.vertices.push_back(std::move(v));
  }
  return rep;
}

HypothesisCheck check_covering_hypotheses(const TriangleComplex& c, double eps,
                                          CoveringVariant variant) {
  if (c.geometry() != Geometry::Spherical) {
    throw std::invalid_argument("covering hypotheses apply to spherical complexes");
  }
  HypothesisCheck out;
  out.radius_cap = (variant == CoveringVariant::I ? b0() : 0.5 * kPi) - eps;
  out.angle_floor = (variant == CoveringVariant::I ? 4.0 : 6.0) * kPi;

  out.radii_ok = true;
  for (int t = 0; t < c.num_triangles(); ++t) {
    auto s = c.triangle_sides(t);
    if (SphericalTriangle(s[0], s[1], s[2]).circumradius() > out.radius_cap) {
      out.radii_ok = false;
      out.violating_triangle = t;
      break;
    }
  }

  out.angles_ok = true;
  ConeAngleReport rep = total_angles(c);
  for (size_t i = 0; i < rep.vertices.size(); ++i) {
    const VertexAngle& v = rep.vertices[i];
    if (!v.boundary && v.total < out.angle_floor - 1e-12) {
      out.angles_ok = false;
      out.violating_vertex = static_cast<int>(i);
      break;
    }
  }
  out.pass = out.radii_ok && out.angles_ok;
  return out;
}

TransformedComplex transform_complex(const DistortionFamily& f, const TriangleComplex& c) {
  if (c.geometry() != Geometry::Spherical) {
    throw std::invalid_argument("transform_complex expects a spherical complex");
  }
  TriangleComplex flat(Geometry::Euclidean);
  for (int t = 0; t < c.num_triangles(); ++t) {
    auto s = c.triangle_sides(t);
    flat.add_triangle(f(s[0]), f(s[1]), f(s[2]));
  }
  for (const Gluing& g : c.gluings()) flat.glue(g.a, g.b, g.reversed);

  TransformedComplex out{std::move(flat), total_angles(c), {}, 0.0};
  out.after = total_angles(out.complex);
  out.min_excess = out.after.min_excess();
  return out;
}

GaussBonnetReport discrete_gauss_bonnet(const TriangleComplex& c) {
  if (!c.closed()) {
    throw std::invalid_argument("Gauss-Bonnet requires a closed complex");
  }
  GaussBonnetReport rep;
  for (int t = 0; t < c.num_triangles(); ++t) rep.face_total += c.face_area(t);
  for (const VertexAngle& v : total_angles(c).vertices) {
    rep.defect_total += 2.0 * kPi - v.total;
  }
  rep.euler_characteristic = c.euler_characteristic();
  rep.residual = rep.face_total + rep.defect_total - 2.0 * kPi * rep.euler_characteristic;
  return rep;
}

namespace {

// Tetrahedral combinatorics shared by the two builders. Face f is the one
// opposite tetrahedron vertex f; its vertices, ascending, label its
// corners. Side j of a face is the tetrahedron edge avoiding corner j.
struct TetFace {
  std::array<int, 3> verts;
};

std::array<TetFace, 4> tet_faces() {
  std::array<TetFace, 4> faces;
  for (int f = 0; f < 4; ++f) {
    int n = 0;
    for (int v = 0; v < 4; ++v) {
      if (v != f) faces[f].verts[n++] = v;
    }
  }
  return faces;
}

int side_avoiding(const TetFace& face, int u, int v) {
  for (int j = 0; j < 3; ++j) {
    if (face.verts[j] != u && face.verts[j] != v) return j;
  }
  throw std::logic_error("edge not on face");
}

// Whether gluing side ja of face fa to side jb of face fb must set the
// reversed flag so that identified corners carry the same tetrahedron
// vertex.
bool tet_reversed(const TetFace& fa, int ja, const TetFace& fb, int jb) {
  return fa.verts[(ja + 1) % 3] == fb.verts[(jb + 1) % 3];
}

}  // namespace

TriangleComplex weierstrass_complex() {
  double side = std::acos(-1.0 / 3.0);
  TriangleComplex c(Geometry::Spherical);
  // Triangle 2f + s is sheet s over face f.
  for (int i = 0; i < 8; ++i) c.add_triangle(side, side, side);

  auto faces = tet_faces();
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      // The two faces sharing edge (u, v).
      std::array<int, 2> fs{};
      int n = 0;
      for (int f = 0; f < 4; ++f) {
        if (f != u && f != v) fs[n++] = f;
      }
      int ja = side_avoiding(faces[fs[0]], u, v);
      int jb = side_avoiding(faces[fs[1]], u, v);
      bool rev = tet_reversed(faces[fs[0]], ja, faces[fs[1]], jb);
      // Crossing any edge of the base triangulation swaps sheets, so each
      // base edge lifts to two gluings.
      c.glue({2 * fs[0] + 0, ja}, {2 * fs[1] + 1, jb}, rev);
      c.glue({2 * fs[0] + 1, ja}, {2 * fs[1] + 0, jb}, rev);
    }
  }
  return c;
}

TriangleComplex tetrahedron_complex() {
  double side = std::acos(-1.0 / 3.0);
  TriangleComplex c(Geometry::Spherical);
  for (int i = 0; i < 4; ++i) c.add_triangle(side, side, side);

  auto faces = tet_faces();
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) {
      std::array<int, 2> fs{};
      int n = 0;
      for (int f = 0; f < 4; ++f) {
        if (f != u && f != v) fs[n++] = f;
      }
      int ja = side_avoiding(faces[fs[0]], u, v);
      int jb = side_avoiding(faces[fs[1]], u, v);
      c.glue({fs[0], ja}, {fs[1], jb}, tet_reversed(faces[fs[0]], ja, faces[fs[1]], jb));
    }
  }
  return c;
}

namespace {

SideRef parse_side_ref(const std::string& tok, int line) {
  auto colon = tok.find(':');
  if (colon == std::string::npos) {
    throw fixture_error(line, "expected tri:side, got '" + tok + "'");
  }
  try {
    SideRef s{std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))};
    return s;
  } catch (const std::exception&) {
    throw fixture_error(line, "malformed side reference '" + tok + "'");
  }
}

}  // namespace

TriangleComplex parse_fixture(std::istream& in) {
  std::optional<TriangleComplex> c;
  std::vector<std::vector<int>> declared_classes;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;

    if (kw == "geometry") {
      std::string g;
      if (!(ls >> g)) throw fixture_error(line, "geometry requires spherical|euclidean");
      if (c) throw fixture_error(line, "duplicate geometry record");
      if (g == "spherical") {
        c.emplace(Geometry::Spherical);
      } else if (g == "euclidean") {
        c.emplace(Geometry::Euclidean);
      } else {
        throw fixture_error(line, "unknown geometry '" + g + "'");
      }
      continue;
    }
    if (!c) throw fixture_error(line, "geometry record must come first");

    if (kw == "triangle") {
      double a, b, s;
      if (!(ls >> a >> b >> s)) throw fixture_error(line, "triangle requires three side lengths");
      try {
        c->add_triangle(a, b, s);
      } catch (const std::exception& e) {
        throw fixture_error(line, e.what());
      }
    } else if (kw == "glue") {
      std::string ta, tb, flag;
      if (!(ls >> ta >> tb)) throw fixture_error(line, "glue requires two side references");
      bool rev = false;
      if (ls >> flag) {
        if (flag != "reversed") throw fixture_error(line, "unknown glue flag '" + flag + "'");
        rev = true;
      }
      try {
        c->glue(parse_side_ref(ta, line), parse_side_ref(tb, line), rev);
      } catch (const std::exception& e) {
        throw fixture_error(line, e.what());
      }
    } else if (kw == "vertex") {
      std::vector<int> cls;
      std::string tok;
      while (ls >> tok) {
        SideRef r = parse_side_ref(tok, line);
        if (r.tri < 0 || r.tri >= c->num_triangles() || r.side < 0 || r.side > 2) {
          throw fixture_error(line, "vertex corner out of range: " + tok);
        }
        cls.push_back(3 * r.tri + r.side);
      }
      if (cls.empty()) throw fixture_error(line, "vertex record lists no corners");
      std::sort(cls.begin(), cls.end());
      declared_classes.push_back(std::move(cls));
    } else {
      throw fixture_error(line, "unknown record '" + kw + "'");
    }
  }
  if (!c) throw fixture_error(line, "empty fixture: no geometry record");

  if (!declared_classes.empty()) {
    // Declared classes must exactly reproduce the ones the gluing graph
    // implies.
    auto derived = c->vertex_classes();
    for (auto& d : derived) std::sort(d.begin(), d.end());
    std::sort(derived.begin(), derived.end());
    std::sort(declared_classes.begin(), declared_classes.end());
    if (derived != declared_classes) {
      throw fixture_error(line, "vertex records disagree with the gluing graph");
    }
  }
  return *c;
}

TriangleComplex parse_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path);
  return parse_fixture(in);
}

void write_fixture(std::ostream& out, const TriangleComplex& c) {
  out << "geometry "
      << (c.geometry() == Geometry::Spherical ? "spherical" : "euclidean") << "\n";
  char buf[96];
  for (int t = 0; t < c.num_triangles(); ++t) {
    auto s = c.triangle_sides(t);
    std::snprintf(buf, sizeof buf, "triangle %.17g %.17g %.17g", s[0], s[1], s[2]);
    out << buf << "\n";
  }
  for (const Gluing& g : c.gluings()) {
    out << "glue " << g.a.tri << ':' << g.a.side << ' ' << g.b.tri << ':' << g.b.side;
    if (g.reversed) out << " reversed";
    out << "\n";
  }
  for (const auto& cls : c.vertex_classes()) {
    out << "vertex";
    for (int corner : cls) out << ' ' << corner / 3 << ':' << corner % 3;
    out << "\n";
  }
}

double cone_metric_radius(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("cone metric requires q in (0, 1)");
  return std::sqrt(2.0) * std::pow((1.0 + q) / (1.0 - q), 1.0 / (2.0 * q));
}

double cone_density(double q, double r) {
  if (!(r > 0.0 && r < std::sqrt(2.0))) {
    throw std::domain_error("cone density requires r in (0, sqrt 2)");
  }
  double R = cone_metric_radius(q);
  double Rq = std::pow(R, q);
  return 2.0 * q * Rq * std::pow(r, q - 1.0) / (Rq * Rq - std::pow(r, 2.0 * q));
}

double cone_density_limit(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("cone metric requires q in (0, 1)");
  return std::sqrt((1.0 - q * q) / 2.0);
}

double cone_density_curvature_fd(double q, double r, double h) {
  if (!(r - 2.0 * h > 0.0 && r + 2.0 * h < std::sqrt(2.0))) {
    throw std::domain_error("curvature stencil leaves the domain");
  }
  // Laplacian of log lambda at (r, 0) via the 4th-order 1D stencil on
  // each axis; lambda is radial, so off-axis points only need |z|.
  auto loglam = [&](double x, double y) {
    return std::log(cone_density(q, std::hypot(x, y)));
  };
  const double w[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  double lap = 0.0;
  for (int i = -2; i <= 2; ++i) {
    lap += w[i + 2] * (loglam(r + i * h, 0.0) + loglam(r, i * h));
  }
  lap /= 12.0 * h * h;
  double lam = cone_density(q, r);
  return -lap / (lam * lam);
}

AlphaQCheck alpha_q_check(const ConeAngleReport& flat_angles, double q) {
  AlphaQCheck out;
  out.pass = true;
  out.min_alpha_q = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < flat_angles.vertices.size(); ++i) {
    const VertexAngle& v = flat_angles.vertices[i];
    if (v.boundary) continue;
    double aq = v.total / (2.0 * kPi) * q;
    if (aq < out.min_alpha_q) out.min_alpha_q = aq;
    if (aq <= 1.0 && out.pass) {
      out.pass = false;
      out.violating_vertex = static_cast<int>(i);
    }
  }
  return out;
}

double branched_bloch_bound(double m) {
  if (std::isinf(m)) return 0.5 * kPi;
  if (!(m >= 1.0)) throw std::domain_error("branched_bloch_bound requires m >= 1");
  return 2.0 * std::atan(std::sqrt(m / (m + 2.0)));
}

double spherical_bloch_radius(double q) {
  if (!(q > 1.0 && q <= 3.0)) throw std::domain_error("spherical_bloch_radius requires q in (1, 3]");
  // 0/0 at q = 3; the ratio diverges, so the value is the arctan limit.
  if (q > 3.0 - 1e-9) return 0.5 * kPi;
  double num = -std::cos(0.5 * kPi * q);
  double den = std::pow(std::cos(kPi * q / 6.0), 3.0);
  return std::atan(std::sqrt(num / den));
}

}  // namespace sphdist
