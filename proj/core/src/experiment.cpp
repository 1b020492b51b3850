#include "rcdyn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rcdyn/config.hpp"
#include "rcdyn/duality.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/estimators.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/oracle.hpp"
#include "rcdyn/params.hpp"

namespace rcdyn {

using nlohmann::json;

namespace {

void check_keys(const json& spec, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : spec.items())
    if (!allowed.count(key)) throw SpecError("unknown field: " + key);
}

const json& require(const json& spec, const std::string& key) {
  if (!spec.contains(key)) throw SpecError("missing field: " + key);
  return spec.at(key);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw SpecError(key + " must be a number");
  return v.get<double>();
}

long integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw SpecError(key + " must be an integer");
  return v.get<long>();
}

long integer_or(const json& spec, const std::string& key, long fallback) {
  if (!spec.contains(key)) return fallback;
  return integer(spec.at(key), key);
}

double number_or(const json& spec, const std::string& key, double fallback) {
  if (!spec.contains(key)) return fallback;
  return number(spec.at(key), key);
}

int vertex_from_xy(const Lattice& lat, const json& v,
                   const std::string& what) {
  if (!v.is_array() || v.size() != 2)
    throw SpecError(what + " must be an [x, y] pair");
  const long x = integer(v[0], what), y = integer(v[1], what);
  if (x < 0 || y < 0 || x >= lat.side() || y >= lat.side())
    throw SpecError(what + " out of range");
  return lat.vertex_id(static_cast<int>(x), static_cast<int>(y));
}

struct CommonSpec {
  int n;
  RcParams params;
  std::uint64_t seed;
  json bc_spec;
};

CommonSpec parse_common(const json& spec) {
  CommonSpec out{0, RcParams(0.5, 1.0), 0, json("free")};
  const long n = integer(require(spec, "n"), "n");
  if (n < 2) throw SpecError("n must be at least 2");
  out.n = static_cast<int>(n);
  const double p = number(require(spec, "p"), "p");
  const double q = number(require(spec, "q"), "q");
  if (!(p > 0.0 && p < 1.0)) throw SpecError("p must lie in (0,1)");
  if (!(q >= 1.0)) throw SpecError("q must be at least 1");
  out.params = RcParams(p, q);
  const json& seed = require(spec, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer())
    throw SpecError("seed must be a 64-bit integer");
  out.seed = seed.get<std::uint64_t>();
  if (spec.contains("bc")) out.bc_spec = spec.at("bc");
  return out;
}

std::string csv_cell(double x) { return format_double(x); }

// the shared estimator-output row shape
std::string estimator_row(const std::string& experiment,
                          const CommonSpec& common, const std::string& bc,
                          double r_or_d, double estimate, double stderr_est,
                          long samples, const std::string& backend) {
  std::ostringstream row;
  row << experiment << ',' << common.n << ',' << csv_cell(common.params.p)
      << ',' << csv_cell(common.params.q) << ',' << bc << ','
      << csv_cell(r_or_d) << ',' << csv_cell(estimate) << ','
      << csv_cell(stderr_est) << ',' << samples << ',' << backend << ','
      << common.seed << '\n';
  return row.str();
}

constexpr const char* kEstimatorHeader =
    "experiment,n,p,q,bc,r_or_d,estimate,stderr,samples,backend,seed\n";

std::vector<RcConfig> dynamics_samples(const Lattice& lat,
                                       const BoundaryCondition& bc,
                                       RcParams params, long samples,
                                       std::uint64_t seed) {
  const int m = lat.edge_count();
  const CounterRng rng(seed);
  Chain chain(lat, bc, params, RcConfig(m));
  const std::uint64_t burn_in =
      static_cast<std::uint64_t>(10.0 * m * std::log(m)) + 1;
  std::uint64_t t = 0;
  for (; t < burn_in; ++t) chain.step(draw_at(rng, t, m));
  std::vector<RcConfig> out;
  for (long s = 0; s < samples; ++s) {
    for (int k = 0; k < m; ++k, ++t) chain.step(draw_at(rng, t, m));
    out.push_back(chain.config());
  }
  return out;
}

std::vector<RcConfig> dual_samples(const Lattice& lat, RcParams params,
                                   long samples, std::uint64_t seed,
                                   std::string* backend) {
  // sub-critical dual dynamics on the wired (n+1)-box, mapped back; the
  // primal boundary condition must be free for this pairing
  const Lattice prime(lat.side() + 1);
  const DualBoxMap map(lat, prime);
  const RcParams dual_params(dual_p(params), params.q);
  const WiredGraph graph = as_graph(prime, wired_boundary(prime));
  const CounterRng master(seed);
  std::vector<RcConfig> out;
  for (long s = 0; s < samples; ++s) {
    const auto prime_sample =
        cftp_sample_graph(graph, dual_params, master.derive(s).key());
    if (!prime_sample) throw std::runtime_error("CFTP hit the event cap");
    out.push_back(compatible_primal(map, *prime_sample));
  }
  *backend = "dual-cftp";
  return out;
}

void write_sample_outputs(const std::filesystem::path& dir,
                          const CommonSpec& common,
                          const std::vector<RcConfig>& configs,
                          const std::string& backend, RunOutput& out) {
  std::ostringstream csv;
  csv << "replica,config\n";
  for (std::size_t i = 0; i < configs.size(); ++i)
    csv << i << ',' << configs[i].to_hex() << '\n';
  atomic_write_file(dir / "samples.csv", csv.str());
  out.files.push_back("samples.csv");

  const int m = configs.empty() ? 0 : configs.front().edge_count();
  json marginals = json::array();
  for (int e = 0; e < m; ++e) {
    long hits = 0;
    for (const RcConfig& c : configs) hits += c.open(e);
    marginals.push_back(static_cast<double>(hits) / configs.size());
  }
  json summary;
  summary["n"] = common.n;
  summary["p"] = common.params.p;
  summary["q"] = common.params.q;
  summary["seed"] = common.seed;
  summary["samples"] = configs.size();
  summary["backend"] = backend;
  summary["edge_marginals"] = marginals;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

void run_sample_like(const json& spec, const std::string& kind,
                     const std::filesystem::path& dir, RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "samples",
                    "max_events", "via_dual"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const long samples = integer_or(spec, "samples", 1000);
  if (samples <= 0) throw SpecError("samples must be positive");

  bool via_dual = kind == "dual-sample";
  if (spec.contains("via_dual")) {
    if (!spec.at("via_dual").is_boolean())
      throw SpecError("via_dual must be a boolean");
    via_dual = via_dual || spec.at("via_dual").get<bool>();
  }

  std::vector<RcConfig> configs;
  std::string backend;
  if (via_dual) {
    if (!(common.params.p > critical_point(common.params.q)))
      throw SpecError("dual sampling needs p above the critical point");
    if (bc_label(common.bc_spec) != "free")
      throw SpecError("dual sampling is implemented for the free condition");
    configs = dual_samples(lat, common.params, samples, common.seed, &backend);
  } else if (kind == "cftp") {
    const std::uint64_t max_events = static_cast<std::uint64_t>(
        integer_or(spec, "max_events", 1L << 25));
    const WiredGraph graph = as_graph(lat, parse_bc(lat, common.bc_spec));
    const CounterRng master(common.seed);
    for (long s = 0; s < samples; ++s) {
      const auto sample = cftp_sample_graph(graph, common.params,
                                            master.derive(s).key(), max_events);
      if (!sample) throw std::runtime_error("CFTP hit the event cap");
      configs.push_back(*sample);
    }
    backend = "cftp";
  } else {
    configs = dynamics_samples(lat, parse_bc(lat, common.bc_spec),
                               common.params, samples, common.seed);
    backend = "dynamics";
  }
  write_sample_outputs(dir, common, configs, backend, out);
}

void run_couple(const json& spec, const std::filesystem::path& dir,
                RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "replicas",
                    "threshold", "cap"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const BoundaryCondition bc = parse_bc(lat, common.bc_spec);
  const long replicas = integer_or(spec, "replicas", 100);
  if (replicas <= 0) throw SpecError("replicas must be positive");
  const double threshold = number_or(spec, "threshold", 0.25);
  const std::uint64_t cap =
      static_cast<std::uint64_t>(integer_or(spec, "cap", 0));

  const CouplingResult res =
      coupling_time(lat, bc, common.params, common.seed, threshold,
                    static_cast<int>(replicas), cap);

  std::ostringstream csv;
  csv << "replica,coalescence_step,wall_time\n";
  for (std::size_t i = 0; i < res.steps.size(); ++i)
    csv << i << ',' << res.steps[i] << ','
        << csv_cell(res.wall_seconds[i]) << '\n';
  atomic_write_file(dir / "couple.csv", csv.str());
  out.files.push_back("couple.csv");

  std::vector<std::uint64_t> sorted = res.steps;
  std::sort(sorted.begin(), sorted.end());
  json summary;
  summary["median"] = res.median;
  summary["q1"] = sorted[sorted.size() / 4];
  summary["q3"] = sorted[(3 * sorted.size()) / 4];
  summary["quantile"] = res.quantile;
  summary["threshold"] = res.threshold;
  summary["cap"] = res.cap;
  summary["any_capped"] = res.any_capped;
  summary["seed"] = common.seed;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

void run_oracle(const json& spec, const std::filesystem::path& dir,
                RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "pairs", "tau_mix",
                    "t_max"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const BoundaryCondition bc = parse_bc(lat, common.bc_spec);
  const WiredGraph graph = as_graph(lat, bc);
  const ExactMeasure mu(graph, common.params);

  json result;
  result["n"] = common.n;
  result["p"] = common.params.p;
  result["q"] = common.params.q;
  result["bc"] = bc_label(common.bc_spec);
  result["log_Z"] = mu.log_partition_function();
  result["Z"] = mu.partition_function();
  json marginals = json::array();
  for (int e = 0; e < lat.edge_count(); ++e)
    marginals.push_back(mu.edge_marginal(e));
  result["edge_marginals"] = marginals;

  if (spec.contains("pairs")) {
    json conn = json::array();
    for (const json& pair : spec.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw SpecError("pairs entries must be [[x,y],[x,y]]");
      const int u = vertex_from_xy(lat, pair[0], "pair endpoint");
      const int v = vertex_from_xy(lat, pair[1], "pair endpoint");
      json row;
      row["u"] = pair[0];
      row["v"] = pair[1];
      row["prob"] = mu.connectivity_prob(u, v);
      conn.push_back(row);
    }
    result["connectivity"] = conn;
  }

  bool want_tau = false;
  if (spec.contains("tau_mix")) {
    if (!spec.at("tau_mix").is_boolean())
      throw SpecError("tau_mix must be a boolean");
    want_tau = spec.at("tau_mix").get<bool>();
  }
  if (want_tau) {
    const long t_max = integer_or(spec, "t_max", 4096);
    const TransitionMatrix matrix(graph, common.params);
    json taus = json::array();
    for (std::uint64_t s = 0; s < matrix.state_count(); ++s) {
      const RcConfig start = RcConfig::from_mask(lat.edge_count(), s);
      const TvCurve curve =
          tv_curve(matrix, start, mu, static_cast<int>(t_max));
      json row;
      row["start"] = start.to_hex();
      row["tau_mix"] = curve.mixing_step;
      taus.push_back(row);
    }
    result["tau_mix_per_start"] = taus;
  }
  atomic_write_file(dir / "oracle.json", result.dump(2) + "\n");
  out.files.push_back("oracle.json");
}

void run_decay(const json& spec, const std::filesystem::path& dir,
               RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "samples", "pairs",
                    "distances", "burn_in_factor", "spacing"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const BoundaryCondition bc = parse_bc(lat, common.bc_spec);

  std::vector<std::pair<int, int>> pairs;
  if (spec.contains("pairs")) {
    for (const json& pair : spec.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw SpecError("pairs entries must be [[x,y],[x,y]]");
      pairs.emplace_back(vertex_from_xy(lat, pair[0], "pair endpoint"),
                         vertex_from_xy(lat, pair[1], "pair endpoint"));
    }
  } else if (spec.contains("distances")) {
    // centered horizontal pairs on the middle row
    const int mid = common.n / 2;
    for (const json& dv : spec.at("distances")) {
      const long d = integer(dv, "distance");
      if (d <= 0 || d >= common.n) throw SpecError("distance out of range");
      const int x0 = (common.n - static_cast<int>(d)) / 2;
      pairs.emplace_back(lat.vertex_id(x0, mid),
                         lat.vertex_id(x0 + static_cast<int>(d), mid));
    }
  } else {
    throw SpecError("decay needs pairs or distances");
  }

  DecayOptions opts;
  opts.samples = integer_or(spec, "samples", 20000);
  opts.burn_in_factor = number_or(spec, "burn_in_factor", 10.0);
  opts.spacing = integer_or(spec, "spacing", 0);
  if (opts.samples <= 0) throw SpecError("samples must be positive");

  const DecayEstimate est =
      estimate_decay(lat, bc, common.params, pairs, common.seed, opts);

  std::ostringstream csv;
  csv << kEstimatorHeader;
  const std::string label = bc_label(common.bc_spec);
  for (const DecayPoint& pt : est.points)
    csv << estimator_row("decay", common, label, pt.distance, pt.estimate,
                         pt.stderr_est, pt.samples, est.backend);
  atomic_write_file(dir / "decay.csv", csv.str());
  out.files.push_back("decay.csv");

  json summary;
  summary["fitted_rate"] = est.fitted_rate;
  summary["rate_stderr"] = est.rate_stderr;
  summary["fit_valid"] = est.fit_valid;
  summary["backend"] = est.backend;
  summary["seed"] = common.seed;
  json excluded = json::array();
  for (const DecayPoint& pt : est.points)
    if (pt.excluded) excluded.push_back(pt.distance);
  summary["excluded_distances"] = excluded;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

void run_spatial(const json& spec, const std::filesystem::path& dir,
                 RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "edge", "radii",
                    "samples", "exact_cap"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const BoundaryCondition bc = parse_bc(lat, common.bc_spec);
  const int e = parse_edge(lat, require(spec, "edge"));
  const long samples = integer_or(spec, "samples", 2000);
  const long exact_cap = integer_or(spec, "exact_cap", 24);

  std::vector<int> radii;
  for (const json& rv : require(spec, "radii"))
    radii.push_back(static_cast<int>(integer(rv, "radius")));
  if (radii.empty()) throw SpecError("radii must be non-empty");

  std::ostringstream csv;
  csv << kEstimatorHeader;
  const std::string label = bc_label(common.bc_spec);
  json rows = json::array();
  for (int r : radii) {
    const SpatialMixingEstimate est = estimate_spatial_mixing(
        lat, bc, common.params, e, r, samples,
        CounterRng(common.seed).derive(r).key(), static_cast<int>(exact_cap));
    csv << estimator_row("spatial", common, label, r, est.discrepancy,
                         est.stderr_est, est.samples, est.backend);
    json row;
    row["r"] = r;
    row["marginal_open_clamp"] = est.marginal_open_clamp;
    row["marginal_closed_clamp"] = est.marginal_closed_clamp;
    row["discrepancy"] = est.discrepancy;
    row["backend"] = est.backend;
    rows.push_back(row);
  }
  atomic_write_file(dir / "spatial.csv", csv.str());
  out.files.push_back("spatial.csv");

  json summary;
  summary["rows"] = rows;
  summary["seed"] = common.seed;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

void run_scaling(const json& spec, const std::filesystem::path& dir,
                 RunOutput& out) {
  check_keys(spec, {"kind", "p", "q", "bc", "seed", "sizes", "replicas",
                    "threshold", "cap"});
  // no single n; validate p, q, seed via a synthetic common block
  json with_n = spec;
  with_n["n"] = 2;
  with_n.erase("sizes");
  with_n.erase("replicas");
  with_n.erase("threshold");
  with_n.erase("cap");
  const CommonSpec common = parse_common(with_n);

  std::vector<int> sizes;
  for (const json& nv : require(spec, "sizes"))
    sizes.push_back(static_cast<int>(integer(nv, "size")));
  if (sizes.size() < 3) throw SpecError("scaling needs at least 3 sizes");
  const long replicas = integer_or(spec, "replicas", 21);
  const double threshold = number_or(spec, "threshold", 0.25);
  const std::uint64_t cap =
      static_cast<std::uint64_t>(integer_or(spec, "cap", 0));

  std::vector<std::pair<int, CouplingResult>> results;
  for (int n : sizes) {
    const Lattice lat(n);
    const BoundaryCondition bc = parse_bc(lat, common.bc_spec);
    results.emplace_back(
        n, coupling_time(lat, bc, common.params,
                         CounterRng(common.seed).derive(n).key(), threshold,
                         static_cast<int>(replicas), cap));
  }
  const ScalingReport report = fit_mixing_scaling(results);

  std::ostringstream csv;
  csv << kEstimatorHeader;
  const std::string label = bc_label(common.bc_spec);
  for (const ScalingRow& row : report.rows) {
    CommonSpec row_common = common;
    row_common.n = row.n;
    csv << estimator_row("scaling", row_common, label, row.n, row.ratio, 0.0,
                         replicas, "dynamics");
  }
  atomic_write_file(dir / "scaling.csv", csv.str());
  out.files.push_back("scaling.csv");

  json summary;
  json rows = json::array();
  for (const ScalingRow& row : report.rows) {
    json jr;
    jr["n"] = row.n;
    jr["m"] = row.m;
    jr["median_steps"] = row.median_steps;
    jr["ratio"] = row.ratio;
    jr["capped_replicas"] = row.capped_replicas;
    rows.push_back(jr);
  }
  summary["rows"] = rows;
  summary["loglog_exponent"] = report.loglog_exponent;
  summary["max_ratio_spread"] = report.max_ratio_spread;
  summary["seed"] = common.seed;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

void run_sandwich(const json& spec, const std::filesystem::path& dir,
                  RunOutput& out) {
  check_keys(spec, {"kind", "n", "p", "q", "bc", "seed", "edge", "r", "steps",
                    "replicas"});
  const CommonSpec common = parse_common(spec);
  const Lattice lat(common.n);
  const BoundaryCondition bc = parse_bc(lat, common.bc_spec);
  const int e = parse_edge(lat, require(spec, "edge"));
  const long r = integer(require(spec, "r"), "r");
  const long steps = integer(require(spec, "steps"), "steps");
  const long replicas = integer_or(spec, "replicas", 8);
  if (r <= 0 || steps <= 0 || replicas <= 0)
    throw SpecError("r, steps and replicas must be positive");

  const SandwichTrace trace = sandwich_run(
      lat, bc, common.params, e, static_cast<int>(r),
      static_cast<std::uint64_t>(steps), common.seed,
      static_cast<int>(replicas));

  std::ostringstream csv;
  csv << "checkpoint,disagreement\n";
  for (std::size_t i = 0; i < trace.checkpoints.size(); ++i)
    csv << trace.checkpoints[i] << ',' << csv_cell(trace.disagreement[i])
        << '\n';
  atomic_write_file(dir / "sandwich.csv", csv.str());
  out.files.push_back("sandwich.csv");

  json summary;
  summary["containment_ok"] = trace.containment_ok;
  summary["steps"] = trace.steps;
  summary["replicas"] = trace.replicas;
  summary["seed"] = common.seed;
  atomic_write_file(dir / "summary.json", summary.dump(2) + "\n");
  out.files.push_back("summary.json");
}

}  // namespace

BoundaryCondition parse_bc(const Lattice& lat, const json& spec) {
  if (spec.is_string()) {
    const std::string name = spec.get<std::string>();
    if (name == "free") return free_boundary(lat);
    if (name == "wired") return wired_boundary(lat);
    throw SpecError("unknown boundary condition: " + name);
  }
  if (spec.is_object() && spec.contains("sides")) {
    check_keys(spec, {"sides"});
    unsigned kappa = 0;
    for (const json& sv : spec.at("sides")) {
      const long s = integer(sv, "side");
      if (s < 1 || s > 4) throw SpecError("sides must list values in 1..4");
      kappa |= 1u << (s - 1);
    }
    return side_homogeneous(lat, kappa);
  }
  if (spec.is_object() && spec.contains("blocks")) {
    check_keys(spec, {"blocks"});
    std::vector<std::vector<int>> blocks;
    std::vector<char> listed(lat.vertex_count(), 0);
    for (const json& block : spec.at("blocks")) {
      std::vector<int> members;
      for (const json& v : block) {
        const int id = vertex_from_xy(lat, v, "block vertex");
        if (!lat.on_boundary(id))
          throw SpecError("block vertex not on the boundary");
        members.push_back(id);
        listed[id] = 1;
      }
      blocks.push_back(std::move(members));
    }
    // unlisted boundary vertices become singletons
    for (int v : lat.boundary())
      if (!listed[v]) blocks.push_back({v});
    return BoundaryCondition(lat, std::move(blocks));
  }
  throw SpecError("boundary condition must be \"free\", \"wired\", "
                  "{\"sides\": [...]} or {\"blocks\": [...]}");
}

std::string bc_label(const json& spec) {
  if (spec.is_string()) return spec.get<std::string>();
  if (spec.is_object() && spec.contains("sides")) {
    std::string label = "sides:";
    std::vector<long> sides;
    for (const json& sv : spec.at("sides")) sides.push_back(sv.get<long>());
    std::sort(sides.begin(), sides.end());
    for (long s : sides) label += std::to_string(s);
    return label;
  }
  if (spec.is_object() && spec.contains("blocks"))
    return "blocks:" + spec_hash(spec).substr(0, 8);
  return "invalid";
}

int parse_edge(const Lattice& lat, const json& spec) {
  if (!spec.is_array() || spec.size() != 3 || !spec[0].is_string())
    throw SpecError("edge must be [\"h\"|\"v\", x, y]");
  const std::string dir = spec[0].get<std::string>();
  const long x = integer(spec[1], "edge x"), y = integer(spec[2], "edge y");
  const int n = lat.side();
  if (dir == "h") {
    if (x < 0 || y < 0 || x >= n - 1 || y >= n)
      throw SpecError("edge out of range");
    return lat.horizontal_edge(static_cast<int>(x), static_cast<int>(y));
  }
  if (dir == "v") {
    if (x < 0 || y < 0 || x >= n || y >= n - 1)
      throw SpecError("edge out of range");
    return lat.vertical_edge(static_cast<int>(x), static_cast<int>(y));
  }
  throw SpecError("edge direction must be \"h\" or \"v\"");
}

std::string spec_hash(const json& spec) {
  const std::string canonical = spec.dump();  // nlohmann sorts object keys
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

RunOutput run_experiment(const json& spec,
                         const std::filesystem::path& out_root) {
  if (!spec.is_object()) throw SpecError("spec must be a JSON object");
  const std::string kind = require(spec, "kind").is_string()
                               ? spec.at("kind").get<std::string>()
                               : throw SpecError("kind must be a string");

  RunOutput out;
  out.dir = out_root / (kind + "-" + spec_hash(spec));
  std::filesystem::create_directories(out.dir);
  atomic_write_file(out.dir / "spec.json", spec.dump(2) + "\n");
  out.files.push_back("spec.json");

  if (kind == "sample" || kind == "cftp" || kind == "dual-sample")
    run_sample_like(spec, kind, out.dir, out);
  else if (kind == "couple")
    run_couple(spec, out.dir, out);
  else if (kind == "oracle")
    run_oracle(spec, out.dir, out);
  else if (kind == "decay")
    run_decay(spec, out.dir, out);
  else if (kind == "spatial")
    run_spatial(spec, out.dir, out);
  else if (kind == "scaling")
    run_scaling(spec, out.dir, out);
  else if (kind == "sandwich")
    run_sandwich(spec, out.dir, out);
  else
    throw SpecError("unknown kind: " + kind);
  return out;
}

}  // namespace rcdyn
