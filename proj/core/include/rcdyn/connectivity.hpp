#pragma once

#include <vector>

#include "rcdyn/boundary.hpp"
#include "rcdyn/config.hpp"
#include "rcdyn/lattice.hpp"

namespace rcdyn {

// Component structure of (Lambda_n, A) with boundary wirings merged.
// Labels are canonical: each component is labelled by its least vertex id.
struct ConnectivityView {
  int component_count = 0;
  std::vector<int> component_id;
};

ConnectivityView components(const Lattice& lat, const RcConfig& config,
                            const BoundaryCondition& bc);

// Reusable cut-edge / connectivity query engine for one (lattice, bc) pair.
// Answers by graph search from one endpoint bounded by the smaller cluster,
// with boundary wirings treated as jumps between block members. Scratch
// buffers are reused across calls via epoch stamps.
class CutQuery {
 public:
  CutQuery(const Lattice& lat, const BoundaryCondition& bc);

  // true iff toggling e changes c(A, eta): for closed e, the endpoints lie
  // in different wiring-merged components; for open e, e is a bridge.
  bool is_cut(const RcConfig& config, int e);

  // u reachable from v through open edges (wirings included), optionally
  // avoiding one edge
  bool connected(const RcConfig& config, int u, int v, int avoid_edge = -1);

 private:
  const Lattice& lat_;
  BoundaryCondition bc_;  // by value: callers may pass temporaries
  std::vector<std::uint32_t> visit_epoch_;
  std::vector<std::uint32_t> block_epoch_;
  std::vector<int> stack_;
  std::uint32_t epoch_ = 0;
};

bool is_cut_edge(const Lattice& lat, const RcConfig& config,
                 const BoundaryCondition& bc, int e);

bool connected(const Lattice& lat, const RcConfig& config,
               const BoundaryCondition& bc, int u, int v);

// Gamma(A,B) = B \ union of components (in the plain open graph, no
// wirings by default) of the inner-boundary vertices of B.
std::vector<int> gamma_region(const Lattice& lat, const RcConfig& config,
                              const BoxRegion& box, bool use_wiring = false,
                              const BoundaryCondition* bc = nullptr);

}  // namespace rcdyn
