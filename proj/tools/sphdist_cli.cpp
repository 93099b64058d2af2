#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "sphdist/certify.hpp"
#include "sphdist/oracle.hpp"
#include "sphdist/surface.hpp"
#include "sphdist/trig.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;  // a mathematical claim failed to hold
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double maybe_deg(double rad, bool degrees) {
  return degrees ? rad * 180.0 / sphdist::kPi : rad;
}

// All output goes through a stream that is either stdout or the -o file.
struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  int open(const std::string& path) {
    if (path.empty()) return kExitOk;
    file.open(path);
    if (!file) {
      std::cerr << "error: cannot open output file: " << path << "\n";
      return kExitInput;
    }
    os = &file;
    return kExitOk;
  }
};

sphdist::DistortionFamily make_family(const std::string& name, double k) {
  using sphdist::DistortionFamily;
  if (name == "chd") return DistortionFamily::chd_family();
  if (name == "finf") return DistortionFamily::finf();
  if (name == "fk") return DistortionFamily::fk(k);
  if (name == "fkstar") return DistortionFamily::fk_star(k);
  if (name == "gk") return DistortionFamily::gk(k);
  if (name == "g1") return DistortionFamily::g1();
  if (name == "g1star") return DistortionFamily::g1_star();
  if (name == "ginf") return DistortionFamily::ginf();
  if (name == "identity") return DistortionFamily::identity();
  throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

int cmd_constants(const std::string& out_path, bool degrees) {
  Output out;
  if (int rc = out.open(out_path)) return rc;
  std::ostream& os = *out.os;
  double b0 = sphdist::b0();
  double r0 = sphdist::r0();
  os << "# sphdist constants" << (degrees ? " (degrees)" : " (radians)") << "\n";
  os << "name,value\n";
  os << "b0," << fmt(maybe_deg(b0, degrees)) << "\n";
  os << "r0," << fmt(maybe_deg(r0, degrees)) << "\n";
  os << "chd_b0," << fmt(sphdist::chd(b0)) << "\n";
  for (double m : {1.0, 2.0, 3.0}) {
    os << "branched_bloch_m" << int(m) << ","
       << fmt(maybe_deg(sphdist::branched_bloch_bound(m), degrees)) << "\n";
  }
  os << "branched_bloch_minf,"
     << fmt(maybe_deg(sphdist::branched_bloch_bound(
                          std::numeric_limits<double>::infinity()),
                      degrees))
     << "\n";
  for (double q : {1.5, 2.0, 2.5, 3.0}) {
    std::ostringstream name;
    name << "bloch_radius_q" << q;
    os << name.str() << ","
       << fmt(maybe_deg(sphdist::spherical_bloch_radius(q), degrees)) << "\n";
  }
  return kExitOk;
}

int cmd_scan(const sphdist::ScanSpec& spec, const std::string& out_path) {
  if (!spec.valid()) {
    std::cerr << "error: invalid scan configuration (family/rmax/grid)\n";
    return kExitInput;
  }
  Output out;
  if (int rc = out.open(out_path)) return rc;
  std::vector<sphdist::ScanSample> rows;
  sphdist::CertificationResult res = sphdist::scan_infimum(spec, &rows);
  sphdist::write_scan_csv(*out.os, spec, rows);
  std::cerr << "infimum=" << fmt(res.infimum) << " at R=" << fmt(res.argmin.R)
            << " phi=" << fmt(res.argmin.phi) << " t=" << fmt(res.argmin.t)
            << " margin=" << fmt(res.margin) << "\n";
  return kExitOk;
}

int cmd_certify(const std::string& theorem, double eps, double delta_floor, double k_cap,
                int threads, const std::string& out_path) {
  sphdist::CertVariant variant;
  if (theorem == "1.5") {
    variant = sphdist::CertVariant::Fk;
  } else if (theorem == "1.6") {
    variant = sphdist::CertVariant::FkStar;
  } else {
    std::cerr << "error: --theorem must be 1.5 or 1.6\n";
    return kExitInput;
  }
  double cap = variant == sphdist::CertVariant::Fk ? sphdist::b0() : 0.5 * sphdist::kPi;
  if (!(eps > 0.0 && eps < cap)) {
    std::cerr << "error: --eps must lie in (0, " << fmt(cap) << ")\n";
    return kExitInput;
  }
  Output out;
  if (int rc = out.open(out_path)) return rc;
  try {
    sphdist::KSearchResult res =
        sphdist::k_search(eps, variant, delta_floor, k_cap, threads);
    if (res.delta_emp <= 0.0) return kExitViolation;
    *out.os << "# sphdist certify\n";
    *out.os << "# theorem=" << theorem << " eps=" << fmt(eps)
            << " delta_floor=" << fmt(delta_floor) << " k_cap=" << fmt(k_cap) << "\n";
    *out.os << "epsilon,variant,k,delta_emp\n";
    *out.os << fmt(eps) << ',' << theorem << ',' << fmt(res.k) << ','
            << fmt(res.delta_emp) << "\n";
    return kExitOk;
  } catch (const sphdist::budget_exhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  }
}

int cmd_surface(const std::string& fixture, const std::string& transform_name,
                double transform_k, double eps, const std::string& variant_name,
                bool degrees, const std::string& out_path) {
  std::unique_ptr<sphdist::TriangleComplex> complex;
  try {
    if (fixture == "weierstrass") {
      complex = std::make_unique<sphdist::TriangleComplex>(sphdist::weierstrass_complex());
    } else if (fixture == "tetrahedron") {
      complex = std::make_unique<sphdist::TriangleComplex>(sphdist::tetrahedron_complex());
    } else {
      complex = std::make_unique<sphdist::TriangleComplex>(
          sphdist::parse_fixture_file(fixture));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  Output out;
  if (int rc = out.open(out_path)) return rc;
  std::ostream& os = *out.os;

  os << "# sphdist surface " << fixture << "\n";
  os << "triangles=" << complex->num_triangles() << " closed=" << complex->closed()
     << " chi=" << complex->euler_characteristic() << "\n";
  sphdist::ConeAngleReport rep = sphdist::total_angles(*complex);
  os << "vertex,corners,total_angle,boundary\n";
  for (size_t i = 0; i < rep.vertices.size(); ++i) {
    const auto& v = rep.vertices[i];
    os << i << ',' << v.corners.size() << ',' << fmt(maybe_deg(v.total, degrees)) << ','
       << v.boundary << "\n";
  }
  if (complex->closed()) {
    sphdist::GaussBonnetReport gb = sphdist::discrete_gauss_bonnet(*complex);
    os << "gauss_bonnet_residual=" << fmt(gb.residual) << "\n";
  }

  if (eps > 0.0) {
    if (complex->geometry() != sphdist::Geometry::Spherical) {
      std::cerr << "error: hypothesis check needs a spherical complex\n";
      return kExitInput;
    }
    auto variant = sphdist::CoveringVariant::I;
    if (variant_name == "ii") {
      variant = sphdist::CoveringVariant::II;
    } else if (variant_name != "i") {
      std::cerr << "error: --variant must be i or ii\n";
      return kExitInput;
    }
    auto check = sphdist::check_covering_hypotheses(*complex, eps, variant);
    os << "hypotheses_pass=" << check.pass << " radii_ok=" << check.radii_ok
       << " angles_ok=" << check.angles_ok << "\n";
  }

  if (!transform_name.empty()) {
    if (complex->geometry() != sphdist::Geometry::Spherical) {
      std::cerr << "error: --transform needs a spherical complex\n";
      return kExitInput;
    }
    sphdist::DistortionFamily fam = make_family(transform_name, transform_k);
    auto tc = sphdist::transform_complex(fam, *complex);
    os << "transformed_min_excess=" << fmt(tc.min_excess) << "\n";
    os << "transformed_vertex,total_angle\n";
    for (size_t i = 0; i < tc.after.vertices.size(); ++i) {
      os << i << ',' << fmt(maybe_deg(tc.after.vertices[i].total, degrees)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_oracle(std::uint64_t samples, std::uint64_t seed, double tol, double r_max,
               const std::string& out_path) {
  if (samples == 0 || !(r_max > 0.0 && r_max < 0.5 * sphdist::kPi)) {
    std::cerr << "error: need samples > 0 and rmax in (0, pi/2)\n";
    return kExitInput;
  }
  Output out;
  if (int rc = out.open(out_path)) return rc;
  sphdist::OracleReport rep = sphdist::run_oracle(samples, seed, r_max);
  std::ostream& os = *out.os;
  os << "# sphdist oracle samples=" << samples << " seed=" << seed
     << " rmax=" << fmt(r_max) << " tol=" << fmt(tol) << "\n";
  os << "check,max_residual\n";
  os << "sides," << fmt(rep.side_residual) << "\n";
  os << "angles," << fmt(rep.angle_residual) << "\n";
  os << "circumradius," << fmt(rep.circumradius_residual) << "\n";
  os << "params_roundtrip," << fmt(rep.roundtrip_residual) << "\n";
  os << "eta," << fmt(rep.eta_residual) << "\n";
  os << "eta_slope," << fmt(rep.eta_slope_residual) << "\n";
  os << "law_of_sines," << fmt(rep.sines_residual) << "\n";
  os << "diameter_excess," << fmt(rep.diameter_excess) << "\n";
  os << "identities," << fmt(rep.identity_residual) << "\n";
  return rep.max_residual() <= tol ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical triangle distortion toolkit"};
  app.require_subcommand(1);

  std::string out_path;
  bool degrees = false;
  int threads = 0;
  app.add_option("-o,--output", out_path, "Write output to this file (default stdout)");
  app.add_flag("--degrees", degrees, "Print angles in degrees");
  app.add_option("--threads", threads,
                 "Worker cap (default: SPHERE_DISTORT_THREADS or all cores)");

  auto* constants = app.add_subcommand("constants", "Print the constants table");

  auto* scan = app.add_subcommand("scan", "Grid scan of the angle distortion D");
  std::string family = "finf";
  double fam_k = 1.0;
  sphdist::ScanSpec spec;
  spec.n_r = 16;
  spec.n_phi = 32;
  spec.n_t = 32;
  scan->add_option("--family", family, "chd|finf|fk|fkstar")->capture_default_str();
  scan->add_option("--k", fam_k, "Family parameter k")->capture_default_str();
  scan->add_option("--rmax", spec.r_max, "Circumradius cap (radians)")->required();
  scan->add_option("--nr", spec.n_r, "Radius grid count")->capture_default_str();
  scan->add_option("--nphi", spec.n_phi, "Phi grid count")->capture_default_str();
  scan->add_option("--nt", spec.n_t, "t grid count")->capture_default_str();
  scan->add_option("--seeds", spec.refine_seeds, "Refinement seed count")
      ->capture_default_str();
  scan->add_option("--budget", spec.refine_budget, "Refinement evals per seed")
      ->capture_default_str();
  scan->add_option("--floor", spec.floor, "Degeneracy floor")->capture_default_str();
  scan->add_option("--seed", spec.seed, "Provenance seed")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "Search a certifying k for a variant");
  std::string theorem = "1.5";
  double eps = 0.0, delta_floor = 1e-4, k_cap = 65536.0;
  certify->add_option("--theorem", theorem, "1.5 or 1.6")->capture_default_str();
  certify->add_option("--eps", eps, "Radius margin epsilon")->required();
  certify->add_option("--delta-floor", delta_floor, "Required margin")
      ->capture_default_str();
  certify->add_option("--kcap", k_cap, "Largest k tried")->capture_default_str();

  auto* surface = app.add_subcommand("surface", "Triangle complex report");
  std::string fixture, transform_name, variant_name = "i";
  double transform_k = 1.0, surf_eps = 0.0;
  surface->add_option("fixture", fixture, "Fixture path, 'weierstrass' or 'tetrahedron'")
      ->required();
  surface->add_option("--transform", transform_name, "Apply this family");
  surface->add_option("--k", transform_k, "Family parameter k")->capture_default_str();
  surface->add_option("--eps", surf_eps, "Check covering hypotheses at this epsilon");
  surface->add_option("--variant", variant_name, "i or ii")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "3D cross-validation residuals");
  std::uint64_t samples = 10000, oracle_seed = 1;
  double tol = 1e-9, oracle_rmax = 1.5;
  oracle->add_option("--samples", samples, "Sample count")->capture_default_str();
  oracle->add_option("--seed", oracle_seed, "RNG seed")->capture_default_str();
  oracle->add_option("--tol", tol, "Residual tolerance")->capture_default_str();
  oracle->add_option("--rmax", oracle_rmax, "Circumradius cap")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*constants) return cmd_constants(out_path, degrees);
    if (*scan) {
      spec.family = make_family(family, fam_k);
      spec.threads = threads;
      return cmd_scan(spec, out_path);
    }
    if (*certify) {
      return cmd_certify(theorem, eps, delta_floor, k_cap, threads, out_path);
    }
    if (*surface) {
      return cmd_surface(fixture, transform_name, transform_k, surf_eps, variant_name,
                         degrees, out_path);
    }
    if (*oracle) return cmd_oracle(samples, oracle_seed, tol, oracle_rmax, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitInput;
}
