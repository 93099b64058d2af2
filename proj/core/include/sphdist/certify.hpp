#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <vector>

#include "sphdist/distortion.hpp"
#include "sphdist/trig.hpp"

// Numerical certification engine: deterministic grid-then-refine scans of
// the angle-distortion functional over the (R, phi, t) chart, the doubling
// search for a certifying k, empirical moduli, degenerating-family tail
// tests, and the sliver asymptotics of the planar families.

namespace sphdist {

class budget_exhausted : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Worker count: explicit request, else SPHERE_DISTORT_THREADS, else the
// hardware concurrency. Always >= 1.
int thread_count(int requested = 0);

struct ScanSpec {
  DistortionFamily family = DistortionFamily::finf();
  double r_max = 0.0;
  int n_r = 64;
  int n_phi = 128;
  int n_t = 128;
  int refine_seeds = 100;   // best grid points taken as refinement starts
  int refine_budget = 200;  // objective evaluations per refinement
  double floor = 1e-4;      // distance kept from the degenerate chart edges
  std::uint64_t seed = 0;   // recorded for provenance; the scan is grid-based
  int threads = 0;          // 0 = all available

  bool valid() const;
};

struct ScanSample {
  TriangleParams params;
  double D = 0.0;
  int case_id = 0;
};

struct CertificationResult {
  double infimum = 0.0;
  TriangleParams argmin;
  double threshold = 0.0;
  double margin = 0.0;        // infimum - threshold
  double grid_minimum = 0.0;  // before refinement
  std::array<double, 4> case_minima{};  // +inf where a case bucket is empty
  std::uint64_t grid_evaluations = 0;
  std::uint64_t refine_evaluations = 0;
};

// Exhaustive deterministic grid over the canonical chart (log-densified
// near the degenerate edges, with the family's branch-crossover surfaces
// inserted as mandatory nodes), followed by simplex refinement from the
// best grid points. Results are independent of the thread count; ties
// break lexicographically on (R, phi, t). The chart is kept a hair's
// breadth (1e-9) inside R <= r_max so the reported infimum stays strictly
// above the sharp threshold attained on the boundary.
// If rows is non-null it receives every grid sample in grid order.
CertificationResult scan_infimum(const ScanSpec& spec,
                                 std::vector<ScanSample>* rows = nullptr);

// Scan CSV with a self-describing config header; identical spec =>
// byte-identical output.
void write_scan_csv(std::ostream& out, const ScanSpec& spec,
                    const std::vector<ScanSample>& rows);

// Which sharp inequality is being certified: the spherical family
// min{k chd, sqrt(chd)} against threshold 1/2 over R <= b0 - eps, or the
// cutoff family min{k chd, 1} against 1/3 over R <= pi/2 - eps.
enum class CertVariant { Fk, FkStar };

struct KSearchResult {
  double k = 0.0;
  double delta_emp = 0.0;  // measured scan margin at that k
  int scans = 0;
};

// Doubling search k = 1, 2, 4, ... up to k_cap; returns the first k whose
// scan margin exceeds delta_floor. Throws budget_exhausted if none does
// (which would contradict the certified inequality).
KSearchResult k_search(double eps, CertVariant variant, double delta_floor = 1e-4,
                       double k_cap = 65536.0, int threads = 0);

struct ModulusPoint {
  double mu = 0.0;  // lower bound on alpha + beta
  double g = 0.0;   // inf of D - threshold over triangles with alpha+beta >= mu
};

// Empirical modulus table for the planar families (G1 or G1*): for each mu
// in the grid, the worst margin of D over a deterministic sweep of
// Euclidean triangles whose two smallest angles sum to at least mu.
// Nondecreasing in mu by construction.
std::vector<ModulusPoint> empirical_modulus(const DistortionFamily& family,
                                            const std::vector<double>& mu_grid);

// Degenerating triangle sequences: smallest angle -> 0 while the second
// angle tends to beta0. The j-th triangle has sides a_j = 2^{-j}, b = 1
// and included angle pi - beta0; the spherical variant pairs triangle j
// with the family min{2^j chd, sqrt(chd)}, the planar variants use G1
// (threshold 1/2) and G1* (threshold 1/3).
enum class DegenerateKind { SphericalShrinking, PlanarShrinking, PlanarShrinkingCutoff };

struct DegenerateTailResult {
  std::vector<double> values;  // D at j = j_min .. j_max
  double tail_min = 0.0;
  double threshold = 0.0;
};

DegenerateTailResult degenerate_family_test(DegenerateKind kind, double beta0,
                                            int j_min = 2, int j_max = 24);

// Sliver asymptotics of the planar k-families: over k = 2^0..2^{k_exp_max},
// angle sums sigma = alpha + beta log-spaced in [1e-4, 1e-1], shape and
// scale sweeps, the largest value of (pi/2 - apex~)/sigma^2 together with
// per-case maxima.
struct ApexAsymptoticFit {
  double fitted_c = 0.0;
  std::array<double, 4> case_maxima{};
  std::uint64_t samples = 0;
};

ApexAsymptoticFit apex_asymptotic_fit(int k_exp_max = 10, int n_sigma = 24,
                                      int n_shape = 5, int n_scale = 9);

// Apex angle of the sqrt-image of a Euclidean isosceles triangle with base
// angle beta when every side is above the linear branch:
// cos(apex~) = 2 sin^2(beta / 2).
double sqrt_isosceles_apex(double beta);

// The largest transformed angle is the largest angle of a Euclidean
// triangle, hence >= pi/3; verified over random samples.
struct LargestAngleFloor {
  double min_largest = 0.0;
  std::uint64_t samples = 0;
  bool pass = false;
};

LargestAngleFloor largest_angle_floor_check(const DistortionFamily& family,
                                            std::uint64_t n, std::uint64_t seed);

// Bucketing of a shrinking triangle against its k by (d, d/R, k^2 d/R):
// 1 = diameter bounded away from zero, 2 = d -> 0 with d/R bounded below,
// 3 = d/R -> 0 with k^2 d/R -> 0, 4 = d/R -> 0 with k^2 d/R bounded below.
int case_classify(double d, double R, double k);

// Samplers shared by the sweep-style checks. Sides are log-uniform in
// [lo, hi], rejection-sampled to a valid triangle.
EuclideanTriangle random_euclidean_triangle(std::mt19937_64& rng, double lo = 1e-6,
                                            double hi = 1e6);
// Uniform over the canonical chart box with R <= r_max, rejected until
// valid.
TriangleParams random_params(std::mt19937_64& rng, double r_max,
                             double floor = 1e-4);

}  // namespace sphdist
