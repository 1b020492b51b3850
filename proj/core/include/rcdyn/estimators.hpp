#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcdyn/boundary.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/lattice.hpp"
#include "rcdyn/params.hpp"

namespace rcdyn {

struct DecayPoint {
  int u = 0;
  int v = 0;
  double distance = 0.0;
  long successes = 0;
  long samples = 0;
  double estimate = 0.0;
  double stderr_est = 0.0;
  bool excluded = false;  // zero successes, dropped from the fit
};

struct DecayEstimate {
  std::vector<DecayPoint> points;
  double fitted_rate = 0.0;   // slope of log P vs distance
  double rate_stderr = 0.0;
  bool fit_valid = false;
  std::string backend;
};

struct DecayOptions {
  long samples = 20000;
  double burn_in_factor = 10.0;  // burn-in = factor * m * ln m steps
  long spacing = 0;              // steps between samples; 0 -> m
};

// long-run dynamics estimator for P(u <-> v); frequency estimates with
// binomial standard errors and a weighted log-linear fit
DecayEstimate estimate_decay(const Lattice& lat, const BoundaryCondition& bc,
                             RcParams params,
                             const std::vector<std::pair<int, int>>& pairs,
                             std::uint64_t seed, DecayOptions opts = {});

struct SpatialMixingEstimate {
  int radius = 0;
  double marginal_open_clamp = 0.0;   // mu(e=1 | E^c all open)
  double marginal_closed_clamp = 0.0; // mu(e=1 | E^c all closed)
  double discrepancy = 0.0;
  double stderr_est = 0.0;  // 0 for the exact backend
  long samples = 0;
  std::string backend;      // "oracle" or "cftp"
};

// Discrepancy of the conditional edge marginal between the extremal clamps
// on E^c(e,r). Exact enumeration on the induced sub-system when it is small
// enough, otherwise paired CFTP sharing draws between the two clamps.
SpatialMixingEstimate estimate_spatial_mixing(const Lattice& lat,
                                              const BoundaryCondition& bc,
                                              RcParams params, int e, int r,
                                              long samples, std::uint64_t seed,
                                              int exact_cap = 24);

struct SandwichTrace {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> disagreement;  // Pr[Z+(e) != Z-(e)] across replicas
  bool containment_ok = true;
  std::uint64_t steps = 0;
  int replicas = 0;
};

// The four coupled chains X, Y, Z+, Z-: Z+ from all-open and Z- from empty
// update only edges inside B(e,r). Containment Z- <= Y <= X <= Z+ is a
// zero-tolerance invariant; a violation throws.
SandwichTrace sandwich_run(const Lattice& lat, const BoundaryCondition& bc,
                           RcParams params, int e, int r, std::uint64_t steps,
                           std::uint64_t seed, int replicas = 8);

struct ScalingRow {
  int n = 0;
  std::uint64_t m = 0;
  double median_steps = 0.0;
  double ratio = 0.0;  // median / (m ln m)
  int capped_replicas = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double loglog_exponent = 0.0;  // slope of log median vs log n
  double max_ratio_spread = 0.0; // max ratio / min ratio
};

ScalingReport fit_mixing_scaling(
    const std::vector<std::pair<int, CouplingResult>>& results);

// helpers shared with the acceptance suite
double agresti_coull_halfwidth(long successes, long samples, double z);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool valid = false;
};
LineFit weighted_least_squares(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& w);

}  // namespace rcdyn
