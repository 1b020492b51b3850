#pragma once

#include <vector>

#include "rcdyn/boundary.hpp"
#include "rcdyn/config.hpp"
#include "rcdyn/lattice.hpp"

namespace rcdyn {

// A finite multigraph with a wiring partition, the common input type of the
// exact oracle. The box, the dual box, boundary-contracted graphs and
// induced sub-regions all convert into this form.
struct WiredGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> wiring;  // only blocks of size > 1 need listing

  int edge_count() const { return static_cast<int>(edges.size()); }
};

WiredGraph as_graph(const Lattice& lat, const BoundaryCondition& bc);

// Sub-region system: vertices of the region (relabelled 0..|D|-1 in sorted
// order), the edges inside the region, and the induced wiring. Also returns
// the region-local index of each original edge (-1 if outside) so marginals
// can be read back.
struct RegionGraph {
  WiredGraph graph;
  std::vector<int> vertex_of_local;  // local id -> lattice vertex
  std::vector<int> local_of_edge;    // lattice edge -> local edge or -1
  std::vector<int> edge_of_local;    // local edge -> lattice edge
};

RegionGraph region_graph(const Lattice& lat, const std::vector<int>& region,
                         const InducedCondition& induced);

// c(A, eta): number of wiring-merged components, isolated vertices included
int component_count(const WiredGraph& g, const RcConfig& config);

// cut-edge test on the generic graph (used by the oracle's transition matrix)
bool graph_is_cut_edge(const WiredGraph& g, const RcConfig& config, int e);

}  // namespace rcdyn
