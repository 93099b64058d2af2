#pragma once

#include <cstdint>

#include "sphdist/projection.hpp"
#include "sphdist/trig.hpp"

// Independent 3D cross-checks: every closed form in the library is
// re-measured on explicit unit vectors and the worst residuals reported.

namespace sphdist {

struct OracleReport {
  double side_residual = 0.0;         // chart side formulas vs embedded arcs
  double angle_residual = 0.0;        // law-of-cosines angles vs tangent-plane angles
  double circumradius_residual = 0.0; // closed form vs plane offset acos
  double roundtrip_residual = 0.0;    // params -> triangle -> params
  double eta_residual = 0.0;          // eta(tau) vs measured tangent angle
  double eta_slope_residual = 0.0;    // d eta/d tau endpoints vs cos R, sec R
  double sines_residual = 0.0;        // law-of-sines ratio spread
  double diameter_excess = 0.0;       // boundary sampling vs longest side
  double identity_residual = 0.0;     // classical identity residuals
  std::uint64_t samples = 0;

  double max_residual() const;
};

// n random chart samples with R < r_max; deterministic in (n, seed, r_max).
OracleReport run_oracle(std::uint64_t n, std::uint64_t seed, double r_max = 1.5);

}  // namespace sphdist
