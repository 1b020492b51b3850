#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rcdyn/boundary.hpp"
#include "rcdyn/config.hpp"
#include "rcdyn/connectivity.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/lattice.hpp"
#include "rcdyn/params.hpp"
#include "rcdyn/rng.hpp"

namespace rcdyn {

struct UpdateDraw {
  int edge;
  double u;
};

// one draw per step, shared by every coupled chain (the identity coupling)
inline UpdateDraw draw_at(const CounterRng& rng, std::uint64_t index,
                          int edge_count) {
  return {static_cast<int>(rng.uniform_int(index, edge_count, 0)),
          rng.uniform(index, 1)};
}

// One heat-bath chain. The chain owns its configuration and scratch buffers;
// lattice, boundary condition and parameters are shared immutable state.
class Chain {
 public:
  Chain(const Lattice& lat, const BoundaryCondition& bc, RcParams params,
        RcConfig init);

  const RcConfig& config() const { return config_; }
  std::uint64_t time() const { return time_; }
  const Lattice& lattice() const { return lat_; }

  // ties u == threshold resolve to closed: open iff u < threshold
  void step(const UpdateDraw& draw);

 private:
  const Lattice& lat_;
  RcParams params_;
  CutQuery query_;
  RcConfig config_;
  std::uint64_t time_ = 0;
};

// advance every chain with the identical draw
void coupled_step(std::vector<Chain*>& chains, const UpdateDraw& draw);

struct CouplingResult {
  std::vector<std::uint64_t> steps;  // per replica, = cap when capped
  std::vector<char> capped;
  std::vector<double> wall_seconds;  // per replica
  std::uint64_t cap = 0;
  double threshold = 0.25;
  std::uint64_t median = 0;
  std::uint64_t quantile = 0;  // empirical (1 - threshold)-quantile of T_coup
  bool any_capped = false;
};

// identity-coupled chains from the extremal states E_n (top) and empty
// (bottom); returns per-replica coalescence step counts.
// cap == 0 selects the default 100 * m * ln m.
CouplingResult coupling_time(const Lattice& lat, const BoundaryCondition& bc,
                             RcParams params, std::uint64_t seed,
                             double threshold = 0.25, int replicas = 100,
                             std::uint64_t cap = 0);

// exact sample via monotone coupling-from-the-past; draws for step -t are
// regenerated from (seed, t), so doubling the horizon reuses the suffix.
// Returns nullopt if the event cap is exceeded (never a biased sample).
std::optional<RcConfig> cftp_sample(const Lattice& lat,
                                    const BoundaryCondition& bc,
                                    RcParams params, std::uint64_t seed,
                                    std::uint64_t max_events = 1ULL << 25);

// CFTP on an arbitrary wired graph (used for induced sub-systems and the
// dual box). Optionally couples a second boundary condition bc_lo <= bc_hi
// with the same draws, returning one exact sample from each.
struct PairedSample {
  RcConfig hi;
  RcConfig lo;
};
std::optional<RcConfig> cftp_sample_graph(const WiredGraph& graph,
                                          RcParams params, std::uint64_t seed,
                                          std::uint64_t max_events = 1ULL << 25);
std::optional<PairedSample> cftp_sample_graph_pair(
    const WiredGraph& hi_graph, const WiredGraph& lo_graph, RcParams params,
    std::uint64_t seed, std::uint64_t max_events = 1ULL << 25);

// marked Poisson process at rate |E_n| with uniform edge marks, equivalent
// to independent rate-1 clocks per edge
struct TimedDraw {
  double time;
  UpdateDraw draw;
};
std::vector<TimedDraw> continuous_schedule(const Lattice& lat, double horizon,
                                           std::uint64_t seed);

}  // namespace rcdyn
