#include "rcdyn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcdyn/connectivity.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/oracle.hpp"

namespace rcdyn {

double agresti_coull_halfwidth(long successes, long samples, double z) {
  const double nt = samples + z * z;
  const double pt = (successes + 0.5 * z * z) / nt;
  return z * std::sqrt(std::max(0.0, pt * (1.0 - pt) / nt));
}

LineFit weighted_least_squares(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& w) {
  LineFit fit;
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) return fit;
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
    swxx += w[i] * x[i] * x[i];
    swxy += w[i] * x[i] * y[i];
  }
  const double det = sw * swxx - swx * swx;
  if (!(det > 0)) return fit;
  fit.slope = (sw * swxy - swx * swy) / det;
  fit.intercept = (swxx * swy - swx * swxy) / det;
  fit.slope_stderr = std::sqrt(sw / det);
  fit.valid = true;
  return fit;
}

DecayEstimate estimate_decay(const Lattice& lat, const BoundaryCondition& bc,
                             RcParams params,
                             const std::vector<std::pair<int, int>>& pairs,
                             std::uint64_t seed, DecayOptions opts) {
  if (pairs.empty()) throw std::invalid_argument("no vertex pairs");
  const int m = lat.edge_count();
  const long spacing = opts.spacing > 0 ? opts.spacing : m;
  const std::uint64_t burn_in =
      static_cast<std::uint64_t>(opts.burn_in_factor * m * std::log(m)) + 1;

  DecayEstimate out;
  out.backend = "dynamics";
  const CounterRng rng(seed);
  Chain chain(lat, bc, params, RcConfig(m));
  CutQuery query(lat, bc);

  std::uint64_t t = 0;
  for (; t < burn_in; ++t) chain.step(draw_at(rng, t, m));

  std::vector<long> hits(pairs.size(), 0);
  for (long s = 0; s < opts.samples; ++s) {
    for (long k = 0; k < spacing; ++k, ++t) chain.step(draw_at(rng, t, m));
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (query.connected(chain.config(), pairs[i].first, pairs[i].second))
        ++hits[i];
  }

  std::vector<double> xs, ys, ws;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    DecayPoint pt;
    pt.u = pairs[i].first;
    pt.v = pairs[i].second;
    const auto [ux, uy] = lat.vertex_xy(pt.u);
    const auto [vx, vy] = lat.vertex_xy(pt.v);
    pt.distance = std::hypot(ux - vx, uy - vy);
    pt.successes = hits[i];
    pt.samples = opts.samples;
    pt.estimate = static_cast<double>(hits[i]) / opts.samples;
    pt.stderr_est =
        std::sqrt(pt.estimate * (1.0 - pt.estimate) / opts.samples);
    pt.excluded = hits[i] == 0;
    if (!pt.excluded) {
      xs.push_back(pt.distance);
      ys.push_back(std::log(pt.estimate));
      // delta method: var(log p^) = (1-p)/(N p)
      ws.push_back(opts.samples * pt.estimate /
                   std::max(1e-12, 1.0 - pt.estimate));
    }
    out.points.push_back(pt);
  }

  const LineFit fit = weighted_least_squares(xs, ys, ws);
  out.fitted_rate = fit.slope;
  out.rate_stderr = fit.slope_stderr;
  out.fit_valid = fit.valid;
  return out;
}

SpatialMixingEstimate estimate_spatial_mixing(const Lattice& lat,
                                              const BoundaryCondition& bc,
                                              RcParams params, int e, int r,
                                              long samples, std::uint64_t seed,
                                              int exact_cap) {
  SpatialMixingEstimate out;
  out.radius = r;

  const BoxRegion box = box_region(lat, e, r);
  const RcConfig all_open = RcConfig::all_open(lat.edge_count());
  const RcConfig all_closed(lat.edge_count());
  const InducedCondition cond_open =
      induced_condition(lat, box.vertices, all_open, bc);
  const InducedCondition cond_closed =
      induced_condition(lat, box.vertices, all_closed, bc);
  const RegionGraph hi = region_graph(lat, box.vertices, cond_open);
  const RegionGraph lo = region_graph(lat, box.vertices, cond_closed);
  const int local_e = hi.local_of_edge[e];
  if (local_e < 0) throw std::logic_error("center edge escaped its region");

  if (hi.graph.edge_count() <= exact_cap) {
    out.backend = "oracle";
    out.marginal_open_clamp =
        ExactMeasure(hi.graph, params).edge_marginal(local_e);
    out.marginal_closed_clamp =
        ExactMeasure(lo.graph, params).edge_marginal(local_e);
    out.discrepancy =
        std::abs(out.marginal_open_clamp - out.marginal_closed_clamp);
    return out;
  }

  out.backend = "cftp";
  if (samples <= 0) throw std::invalid_argument("need samples > 0");
  const CounterRng master(seed);
  long hi_hits = 0, lo_hits = 0, diff_hits = 0;
  for (long s = 0; s < samples; ++s) {
    const auto pair = cftp_sample_graph_pair(hi.graph, lo.graph, params,
                                             master.derive(s).key());
    if (!pair) throw std::runtime_error("paired CFTP hit the event cap");
    const bool a = pair->hi.open(local_e);
    const bool b = pair->lo.open(local_e);
    hi_hits += a;
    lo_hits += b;
    diff_hits += a != b;
  }
  out.samples = samples;
  out.marginal_open_clamp = static_cast<double>(hi_hits) / samples;
  out.marginal_closed_clamp = static_cast<double>(lo_hits) / samples;
  out.discrepancy =
      std::abs(out.marginal_open_clamp - out.marginal_closed_clamp);
  const double pd = static_cast<double>(diff_hits) / samples;
  out.stderr_est = std::sqrt(std::max(0.0, pd * (1.0 - pd) / samples));
  return out;
}

SandwichTrace sandwich_run(const Lattice& lat, const BoundaryCondition& bc,
                           RcParams params, int e, int r, std::uint64_t steps,
                           std::uint64_t seed, int replicas) {
  if (steps == 0 || replicas <= 0)
    throw std::invalid_argument("need steps > 0 and replicas > 0");
  const int m = lat.edge_count();
  const BoxRegion box = box_region(lat, e, r);

  SandwichTrace trace;
  trace.steps = steps;
  trace.replicas = replicas;
  const int n_checks = static_cast<int>(std::min<std::uint64_t>(32, steps));
  for (int i = 1; i <= n_checks; ++i)
    trace.checkpoints.push_back(steps * i / n_checks);
  std::vector<long> disagree(trace.checkpoints.size(), 0);

  const CounterRng master(seed);
  for (int rep = 0; rep < replicas; ++rep) {
    const CounterRng rng = master.derive(rep);
    Chain x(lat, bc, params, RcConfig::all_open(m));
    Chain y(lat, bc, params, RcConfig(m));
    // the screened chains freeze every edge outside B(e,r) at its extreme
    Chain z_plus(lat, bc, params, RcConfig::all_open(m));
    Chain z_minus(lat, bc, params, RcConfig(m));

    std::size_t next_check = 0;
    for (std::uint64_t t = 0; t < steps; ++t) {
      const UpdateDraw draw = draw_at(rng, t, m);
      x.step(draw);
      y.step(draw);
      if (box.edge_in_box[draw.edge]) {
        z_plus.step(draw);
        z_minus.step(draw);
      }
      if (next_check < trace.checkpoints.size() &&
          t + 1 == trace.checkpoints[next_check]) {
        if (!(z_minus.config().subset_of(y.config()) &&
              y.config().subset_of(x.config()) &&
              x.config().subset_of(z_plus.config()))) {
          trace.containment_ok = false;
          throw std::logic_error("sandwich containment violated");
        }
        disagree[next_check] +=
            z_plus.config().open(e) != z_minus.config().open(e);
        ++next_check;
      }
    }
  }

  for (long d : disagree)
    trace.disagreement.push_back(static_cast<double>(d) / replicas);
  return trace;
}

ScalingReport fit_mixing_scaling(
    const std::vector<std::pair<int, CouplingResult>>& results) {
  ScalingReport report;
  std::vector<double> xs, ys, ws;
  for (const auto& [n, res] : results) {
    ScalingRow row;
    row.n = n;
    row.m = static_cast<std::uint64_t>(2 * n * (n - 1));
    row.median_steps = static_cast<double>(res.median);
    row.ratio = row.median_steps / (row.m * std::log(double(row.m)));
    for (char c : res.capped) row.capped_replicas += c != 0;
    report.rows.push_back(row);
    if (row.median_steps > 0) {
      xs.push_back(std::log(double(n)));
      ys.push_back(std::log(row.median_steps));
      ws.push_back(1.0);
    }
  }
  const LineFit fit = weighted_least_squares(xs, ys, ws);
  report.loglog_exponent = fit.valid ? fit.slope : 0.0;

  double lo = 0.0, hi = 0.0;
  for (const auto& row : report.rows) {
    if (lo == 0.0 || row.ratio < lo) lo = row.ratio;
    hi = std::max(hi, row.ratio);
  }
  report.max_ratio_spread = lo > 0 ? hi / lo : 0.0;
  return report;
}

}  // namespace rcdyn
