#include "sphdist/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <utility>
#include <ostream>
#include <thread>

namespace sphdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Scans stay this far inside R <= r_max; the sharp configurations sit
// exactly on the boundary, and the guard keeps the reported infimum
// strictly above the threshold instead of equal to it up to roundoff.
constexpr double kEdgeGuard = 1e-9;

double family_k(const DistortionFamily& f) {
  switch (f.tag()) {
    case FamilyTag::Fk:
    case FamilyTag::FkStar:
    case FamilyTag::Gk:
      return f.k();
    case FamilyTag::Finf:
    case FamilyTag::Ginf:
      return kInf;
    default:
      return 1.0;
  }
}

struct Eval {
  double D = kInf;
  double diam = 0.0;
};

Eval eval_point(const DistortionFamily& f, double R, double phi, double t) {
  TriangleParams p{R, phi, t};
  if (!p.valid()) return {};
  try {
    SphericalTriangle tri = triangle_from_params(p);
    Angles in = tri.angles();
    EuclideanTriangle img(f(tri.a()), f(tri.b()), f(tri.c()));
    Angles out = img.angles();
    double d = std::min({out.alpha / in.alpha, out.beta / in.beta, out.gamma / in.gamma});
    return {d, tri.diameter()};
  } catch (const std::exception&) {
    return {};
  }
}

bool sample_less(const ScanSample& a, const ScanSample& b) {
  if (a.D != b.D) return a.D < b.D;
  if (a.params.R != b.params.R) return a.params.R < b.params.R;
  if (a.params.phi != b.params.phi) return a.params.phi < b.params.phi;
  return a.params.t < b.params.t;
}

void sorted_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    double u = n > 1 ? double(i) / (n - 1) : 0.0;
    v[i] = lo * std::pow(hi / lo, u);
  }
  return v;
}

// Base phi grid: log-dense toward both degenerate edges phi -> 0 and
// phi -> pi/2. The equilateral symmetry point phi = pi/6 (with t = pi/2,
// always a grid node) is inserted unconditionally: minima of the
// distortion pinch there as R approaches its cap, and the log grids leave
// the middle of the range sparse.
std::vector<double> phi_grid(const ScanSpec& spec) {
  int m = std::max(spec.n_phi / 2, 2);
  std::vector<double> v;
  for (double x : logspace(spec.floor, 0.25 * kPi, m)) v.push_back(x);
  for (double x : logspace(spec.floor, 0.25 * kPi, spec.n_phi - m)) {
    v.push_back(0.5 * kPi - x);
  }
  v.push_back(kPi / 6.0);
  sorted_unique(v);
  return v;
}

// t grid on (phi, pi/2]: log-dense toward t -> phi, always ending at pi/2.
std::vector<double> t_grid(const ScanSpec& spec, double phi) {
  double span = 0.5 * kPi - phi;
  int m = std::max(spec.n_t / 2, 2);
  std::vector<double> v;
  for (double s : logspace(1e-4, 1.0, m)) v.push_back(phi + span * s);
  for (int i = 0; i < spec.n_t - m; ++i) {
    v.push_back(phi + span * (i + 1.0) / (spec.n_t - m));
  }
  sorted_unique(v);
  return v;
}

// Chord value at which the family switches branch, or 0 if single-branch.
double crossover_chord(const DistortionFamily& f) {
  double arc = f.crossover();
  return std::isnan(arc) ? 0.0 : chd(arc);
}

void add_crossover_phis(std::vector<double>& phis, double x, double R, double floor) {
  // Solve 2 sin R sin(2 phi) = x.
  double v = x / (2.0 * std::sin(R));
  if (!(v > 0.0 && v < 1.0)) return;
  double s = std::asin(v);
  for (double phi : {0.5 * s, 0.5 * (kPi - s)}) {
    if (phi > floor && phi < 0.5 * kPi - 1e-12) phis.push_back(phi);
  }
  sorted_unique(phis);
}

void add_crossover_ts(std::vector<double>& ts, double x, double R, double phi) {
  // Solve 2 sin R sin(t -+ phi) = x within the canonical strip.
  double v = x / (2.0 * std::sin(R));
  if (!(v > 0.0 && v < 1.0)) return;
  double s = std::asin(v);
  for (double t : {phi + s, s - phi, kPi - s - phi}) {
    if (t > phi + 1e-12 && t <= 0.5 * kPi) ts.push_back(t);
  }
  sorted_unique(ts);
}

struct PerR {
  ScanSample best;
  std::vector<ScanSample> top;
  std::vector<ScanSample> rows;
  std::uint64_t evals = 0;
};

using Objective = std::function<double(const std::array<double, 3>&)>;

struct RefineResult {
  std::array<double, 3> x{};
  double value = kInf;
  std::uint64_t evals = 0;
};

// Plain Nelder-Mead on 3 parameters; the objective returns +inf outside
// the feasible set. Terminates on simplex diameter < xtol or the
// evaluation budget.
RefineResult nelder_mead(const Objective& fn, std::array<double, 3> x0,
                         std::array<double, 3> h, int budget, double xtol) {
  struct Vertex {
    std::array<double, 3> x;
    double f;
  };
  RefineResult out;
  auto eval = [&](const std::array<double, 3>& x) {
    ++out.evals;
    double f = fn(x);
    if (f < out.value) {
      out.value = f;
      out.x = x;
    }
    return f;
  };

  std::array<Vertex, 4> s;
  s[0] = {x0, eval(x0)};
  for (int i = 0; i < 3; ++i) {
    auto x = x0;
    x[i] += h[i];
    s[i + 1] = {x, eval(x)};
  }

  auto order = [&] {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
      if (a.f != b.f) return a.f < b.f;
      return a.x < b.x;
    });
  };
  auto diameter = [&] {
    double d = 0.0;
    for (int i = 1; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(s[i].x[j] - s[0].x[j]));
    }
    return d;
  };

  while (static_cast<int>(out.evals) < budget) {
    order();
    if (diameter() < xtol) break;

    std::array<double, 3> centroid{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) centroid[j] += s[i].x[j] / 3.0;
    }
    auto along = [&](double coef) {
      std::array<double, 3> x;
      for (int j = 0; j < 3; ++j) x[j] = centroid[j] + coef * (s[3].x[j] - centroid[j]);
      return x;
    };

    auto xr = along(-1.0);
    double fr = eval(xr);
    if (fr < s[0].f) {
      auto xe = along(-2.0);
      double fe = eval(xe);
      s[3] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[2].f) {
      s[3] = {xr, fr};
    } else {
      auto xc = along(fr < s[3].f ? -0.5 : 0.5);
      double fc = eval(xc);
      if (fc < std::min(fr, s[3].f)) {
        s[3] = {xc, fc};
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int j = 0; j < 3; ++j) s[i].x[j] = 0.5 * (s[i].x[j] + s[0].x[j]);
          s[i].f = eval(s[i].x);
        }
      }
    }
  }
  return out;
}

}  // namespace

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPHERE_DISTORT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

bool ScanSpec::valid() const {
  return family.spherical_domain() && r_max > 0.0 && r_max < 0.5 * kPi && n_r >= 2 &&
         n_phi >= 2 && n_t >= 2 && refine_seeds >= 0 && refine_budget >= 0 &&
         floor > 0.0 && floor < 0.1;
}

int case_classify(double d, double R, double k) {
  if (d >= 0.01) return 1;
  if (d / R >= 0.1) return 2;
  if (k * k * d / R >= 0.1) return 4;
  return 3;
}

CertificationResult scan_infimum(const ScanSpec& spec, std::vector<ScanSample>* rows) {
  if (!spec.valid()) throw std::invalid_argument("invalid scan spec");
  const double r_hi = spec.r_max - kEdgeGuard;
  const double k_eff = family_k(spec.family);
  const double xchord = crossover_chord(spec.family);
  const std::vector<double> base_phis = phi_grid(spec);

  std::vector<PerR> per_r(spec.n_r);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < spec.n_r;) {
      double R = r_hi * (i + 1.0) / spec.n_r;
      PerR& slot = per_r[i];
      slot.best.D = kInf;

      std::vector<double> phis = base_phis;
      if (xchord > 0.0) add_crossover_phis(phis, xchord, R, spec.floor);
      for (double phi : phis) {
        std::vector<double> ts = t_grid(spec, phi);
        if (xchord > 0.0) add_crossover_ts(ts, xchord, R, phi);
        for (double t : ts) {
          Eval e = eval_point(spec.family, R, phi, t);
          ++slot.evals;
          if (!std::isfinite(e.D)) continue;
          ScanSample sm{{R, phi, t}, e.D, case_classify(e.diam, R, k_eff)};
          if (sample_less(sm, slot.best)) slot.best = sm;
          slot.top.push_back(sm);
          if (rows) slot.rows.push_back(sm);
        }
      }
      if (static_cast<int>(slot.top.size()) > spec.refine_seeds) {
        std::partial_sort(slot.top.begin(), slot.top.begin() + spec.refine_seeds,
                          slot.top.end(), sample_less);
        slot.top.resize(spec.refine_seeds);
      } else {
        std::sort(slot.top.begin(), slot.top.end(), sample_less);
      }
    }
  };
  int nthreads = std::min(thread_count(spec.threads), spec.n_r);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CertificationResult res;
  res.threshold = distortion_threshold(spec.family);
  res.case_minima.fill(kInf);
  ScanSample best;
  best.D = kInf;
  std::vector<ScanSample> seeds;
  for (PerR& slot : per_r) {
    res.grid_evaluations += slot.evals;
    if (sample_less(slot.best, best)) best = slot.best;
    seeds.insert(seeds.end(), slot.top.begin(), slot.top.end());
    for (const ScanSample& sm : slot.top) {
      res.case_minima[sm.case_id - 1] = std::min(res.case_minima[sm.case_id - 1], sm.D);
    }
    if (rows) rows->insert(rows->end(), slot.rows.begin(), slot.rows.end());
  }
  if (!std::isfinite(best.D)) throw std::invalid_argument("scan grid contains no valid triangle");
  res.grid_minimum = best.D;

  std::sort(seeds.begin(), seeds.end(), sample_less);
  if (static_cast<int>(seeds.size()) > spec.refine_seeds) seeds.resize(spec.refine_seeds);

  Objective obj = [&](const std::array<double, 3>& x) {
    if (x[0] > r_hi) return kInf;
    return eval_point(spec.family, x[0], x[1], x[2]).D;
  };
  double h0 = 0.5 * r_hi / spec.n_r;
  std::vector<RefineResult> refined(seeds.size());
  std::atomic<int> next_seed{0};
  auto refine_worker = [&] {
    for (int i; (i = next_seed.fetch_add(1)) < static_cast<int>(seeds.size());) {
      const TriangleParams& p = seeds[i].params;
      std::array<double, 3> x0{p.R, p.phi, p.t};
      std::array<double, 3> h{p.R + h0 > r_hi ? -h0 : h0,
                              p.phi + h0 > 0.5 * kPi - 1e-9 ? -h0 : h0,
                              p.t + h0 > 0.5 * kPi ? -h0 : h0};
      refined[i] = nelder_mead(obj, x0, h, spec.refine_budget, 1e-5);
    }
  };
  pool.clear();
  int rthreads =
      std::min(thread_count(spec.threads), std::max(1, static_cast<int>(seeds.size())));
  for (int i = 1; i < rthreads; ++i) pool.emplace_back(refine_worker);
  refine_worker();
  for (auto& th : pool) th.join();

  best.case_id = case_classify(eval_point(spec.family, best.params.R, best.params.phi,
                                          best.params.t)
                                   .diam,
                               best.params.R, k_eff);
  for (const RefineResult& r : refined) {
    res.refine_evaluations += r.evals;
    ScanSample sm{{r.x[0], r.x[1], r.x[2]}, r.value, 0};
    if (std::isfinite(r.value) && sample_less(sm, best)) {
      Eval e = eval_point(spec.family, sm.params.R, sm.params.phi, sm.params.t);
      sm.case_id = case_classify(e.diam, sm.params.R, k_eff);
      best = sm;
    }
  }
  res.infimum = best.D;
  res.argmin = best.params;
  res.margin = res.infimum - res.threshold;
  res.case_minima[best.case_id - 1] = std::min(res.case_minima[best.case_id - 1], best.D);
  return res;
}

void write_scan_csv(std::ostream& out, const ScanSpec& spec,
                    const std::vector<ScanSample>& rows) {
  char buf[512];
  out << "# sphdist scan\n";
  std::snprintf(buf, sizeof buf,
                "# family=%s k=%.17g r_max=%.17g n_r=%d n_phi=%d n_t=%d "
                "refine_seeds=%d refine_budget=%d floor=%.17g seed=%llu",
                spec.family.name().c_str(), spec.family.k(), spec.r_max, spec.n_r,
                spec.n_phi, spec.n_t, spec.refine_seeds, spec.refine_budget, spec.floor,
                static_cast<unsigned long long>(spec.seed));
  out << buf << "\n";
  out << "R,phi,t,a,b,c,alpha,beta,gamma,alpha_t,beta_t,gamma_t,D,case\n";
  for (const ScanSample& sm : rows) {
    SphericalTriangle tri = triangle_from_params(sm.params);
    Angles in = tri.angles();
    EuclideanTriangle img(spec.family(tri.a()), spec.family(tri.b()),
                          spec.family(tri.c()));
    Angles ot = img.angles();
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%d",
                  sm.params.R, sm.params.phi, sm.params.t, tri.a(), tri.b(), tri.c(),
                  in.alpha, in.beta, in.gamma, ot.alpha, ot.beta, ot.gamma, sm.D,
                  sm.case_id);
    out << buf << "\n";
  }
}

KSearchResult k_search(double eps, CertVariant variant, double delta_floor, double k_cap,
                       int threads) {
  double cap = variant == CertVariant::Fk ? b0() : 0.5 * kPi;
  if (!(eps > 0.0 && eps < cap)) {
    throw std::invalid_argument("k_search: eps must lie in (0, radius cap)");
  }
  KSearchResult out;
  for (double k = 1.0; k <= k_cap; k *= 2.0) {
    ScanSpec spec;
    spec.family =
        variant == CertVariant::Fk ? DistortionFamily::fk(k) : DistortionFamily::fk_star(k);
    spec.r_max = cap - eps;
    spec.n_r = 48;
    spec.n_phi = 64;
    spec.n_t = 64;
    spec.refine_seeds = 40;
    spec.refine_budget = 120;
    spec.threads = threads;
    CertificationResult res = scan_infimum(spec);
    ++out.scans;
    if (res.margin >= delta_floor) {
      out.k = k;
      out.delta_emp = res.margin;
      return out;
    }
  }
  throw budget_exhausted("no k <= k_cap reached the requested margin");
}

std::vector<ModulusPoint> empirical_modulus(const DistortionFamily& family,
                                            const std::vector<double>& mu_grid) {
  if (family.tag() != FamilyTag::G1 && family.tag() != FamilyTag::G1Star) {
    throw std::invalid_argument("empirical_modulus expects G1 or G1*");
  }
  const double threshold = distortion_threshold(family);
  const double sigma_max = 2.0 * kPi / 3.0;
  for (double mu : mu_grid) {
    if (!(mu > 0.0 && mu <= sigma_max + 1e-12)) {
      throw std::invalid_argument("empirical_modulus: mu outside (0, 2pi/3]");
    }
  }

  // (sum of two smallest angles, D - threshold) samples over a
  // deterministic shape/scale sweep.
  std::vector<std::pair<double, double>> samples;
  std::vector<double> sigmas = logspace(1e-3, sigma_max, 64);
  sigmas.push_back(sigma_max);
  sorted_unique(sigmas);
  const double fractions[] = {0.5, 0.35, 0.2, 0.1, 0.02};
  std::vector<double> scales = logspace(1e-4, 1e4, 33);
  for (double sigma : sigmas) {
    for (double f : fractions) {
      double alpha = f * sigma, beta = (1.0 - f) * sigma, gamma = kPi - sigma;
      // alpha, beta must really be the two smallest angles.
      if (beta > gamma + 1e-15) continue;
      for (double s : scales) {
        double a = s * std::sin(alpha) / std::sin(gamma);
        double b = s * std::sin(beta) / std::sin(gamma);
        if (a <= kDegeneracyFloor) continue;
        try {
          DistortionReport rep = angle_distortion(family, EuclideanTriangle(a, b, s));
          samples.emplace_back(sigma, rep.D - threshold);
        } catch (const std::exception&) {
        }
      }
    }
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> suffix(samples.size());
  double running = kInf;
  for (int i = static_cast<int>(samples.size()) - 1; i >= 0; --i) {
    running = std::min(running, samples[i].second);
    suffix[i] = running;
  }

  std::vector<ModulusPoint> table;
  for (double mu : mu_grid) {
    auto it = std::lower_bound(samples.begin(), samples.end(),
                               std::make_pair(mu - 1e-12, -kInf));
    if (it == samples.end()) {
      table.push_back({mu, samples.empty() ? kInf : suffix.back()});
    } else {
      table.push_back({mu, suffix[it - samples.begin()]});
    }
  }
  return table;
}

DegenerateTailResult degenerate_family_test(DegenerateKind kind, double beta0, int j_min,
                                            int j_max) {
  if (!(beta0 > 0.0 && beta0 < kPi)) {
    throw std::invalid_argument("degenerate_family_test: beta0 outside (0, pi)");
  }
  if (j_min < 0 || j_max < j_min) {
    throw std::invalid_argument("degenerate_family_test: bad j range");
  }
  DegenerateTailResult out;
  out.threshold = kind == DegenerateKind::PlanarShrinkingCutoff ? 1.0 / 3.0 : 0.5;
  double gamma0 = kPi - beta0;
  for (int j = j_min; j <= j_max; ++j) {
    double a = std::pow(2.0, -j), b = 1.0;
    double d;
    if (kind == DegenerateKind::SphericalShrinking) {
      double c = spherical_sas(a, b, gamma0);
      d = angle_distortion(DistortionFamily::fk(std::pow(2.0, j)),
                           SphericalTriangle(a, b, c))
              .D;
    } else {
      double c = half_angle_side(a, b, gamma0);
      auto fam = kind == DegenerateKind::PlanarShrinking ? DistortionFamily::g1()
                                                         : DistortionFamily::g1_star();
      d = angle_distortion(fam, EuclideanTriangle(a, b, c)).D;
    }
    out.values.push_back(d);
  }
  out.tail_min = *std::min_element(out.values.begin(), out.values.end());
  return out;
}

ApexAsymptoticFit apex_asymptotic_fit(int k_exp_max, int n_sigma, int n_shape,
                                      int n_scale) {
  ApexAsymptoticFit out;
  out.fitted_c = -kInf;
  out.case_maxima.fill(-kInf);
  const double fractions[] = {0.5, 0.35, 0.2, 0.1, 0.02};
  n_shape = std::min<int>(n_shape, std::size(fractions));
  std::vector<double> sigmas = logspace(1e-4, 1e-1, n_sigma);
  std::vector<double> rel_scales = logspace(0.1, 10.0, n_scale);
  for (int e = 0; e <= k_exp_max; ++e) {
    double k = std::pow(2.0, e);
    DistortionFamily fam = DistortionFamily::gk(k);
    double base = 1.0 / (k * k);  // branch-crossover length
    for (double sigma : sigmas) {
      for (int fi = 0; fi < n_shape; ++fi) {
        double alpha = fractions[fi] * sigma, beta = (1.0 - fractions[fi]) * sigma;
        double gamma = kPi - sigma;
        for (double rs : rel_scales) {
          double s = rs * base;
          double a = s * std::sin(alpha) / std::sin(gamma);
          double b = s * std::sin(beta) / std::sin(gamma);
          if (a <= kDegeneracyFloor) continue;
          try {
            EuclideanTriangle tri(a, b, s);
            DistortionReport rep = angle_distortion(fam, tri);
            double val = (0.5 * kPi - rep.image.gamma) / (sigma * sigma);
            int c = case_classify(s, tri.circumradius(), k);
            ++out.samples;
            out.fitted_c = std::max(out.fitted_c, val);
            out.case_maxima[c - 1] = std::max(out.case_maxima[c - 1], val);
          } catch (const std::exception&) {
          }
        }
      }
    }
  }
  return out;
}

double sqrt_isosceles_apex(double beta) {
  if (!(beta > 0.0 && beta < 0.5 * kPi)) {
    throw std::domain_error("sqrt_isosceles_apex: base angle outside (0, pi/2)");
  }
  double s = std::sin(0.5 * beta);
  return std::acos(2.0 * s * s);
}

LargestAngleFloor largest_angle_floor_check(const DistortionFamily& family,
                                            std::uint64_t n, std::uint64_t seed) {
  if (family.spherical_domain()) {
    throw std::invalid_argument("largest_angle_floor_check expects a planar family");
  }
  std::mt19937_64 rng(seed);
  LargestAngleFloor out;
  out.min_largest = kInf;
  for (std::uint64_t i = 0; i < n; ++i) {
    EuclideanTriangle tri = random_euclidean_triangle(rng);
    Angles an = transform(family, tri).angles();
    out.min_largest = std::min(out.min_largest, std::max({an.alpha, an.beta, an.gamma}));
    ++out.samples;
  }
  out.pass = out.min_largest >= kPi / 3.0 - 1e-12;
  return out;
}

EuclideanTriangle random_euclidean_triangle(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  for (;;) {
    double a = std::exp(u(rng)), b = std::exp(u(rng)), c = std::exp(u(rng));
    double m = std::max({a, b, c});
    // Reject near-degenerate triples so concave images cannot fall foul of
    // the triangle inequality through rounding alone.
    if (a + b + c - 2.0 * m <= 1e-9 * m) continue;
    return EuclideanTriangle(a, b, c);
  }
}

TriangleParams random_params(std::mt19937_64& rng, double r_max, double floor) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    TriangleParams p;
    p.R = floor + (r_max - floor) * u01(rng);
    p.phi = floor + (0.5 * kPi - 2.0 * floor) * u01(rng);
    p.t = p.phi + floor + (0.5 * kPi - p.phi - floor) * u01(rng);
    if (p.valid()) return p;
  }
}

}  // namespace sphdist
