#include "rcdyn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rcdyn {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (x != parent[x]) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

WiredGraph as_graph(const Lattice& lat, const BoundaryCondition& bc) {
  WiredGraph g;
  g.vertex_count = lat.vertex_count();
  g.edges = lat.edges();
  for (const auto& block : bc.blocks())
    if (block.size() > 1) g.wiring.push_back(block);
  return g;
}

RegionGraph region_graph(const Lattice& lat, const std::vector<int>& region,
                         const InducedCondition& induced) {
  RegionGraph out;
  std::vector<int> sorted_region = region;
  std::sort(sorted_region.begin(), sorted_region.end());

  std::vector<int> local(lat.vertex_count(), -1);
  for (std::size_t i = 0; i < sorted_region.size(); ++i)
    local[sorted_region[i]] = static_cast<int>(i);
  out.vertex_of_local = sorted_region;
  out.graph.vertex_count = static_cast<int>(sorted_region.size());

  out.local_of_edge.assign(lat.edge_count(), -1);
  for (int e = 0; e < lat.edge_count(); ++e) {
    const Edge& ed = lat.edges()[e];
    if (local[ed.u] < 0 || local[ed.v] < 0) continue;
    out.local_of_edge[e] = static_cast<int>(out.graph.edges.size());
    out.edge_of_local.push_back(e);
    out.graph.edges.push_back({local[ed.u], local[ed.v]});
  }

  for (const auto& block : induced.blocks) {
    if (block.size() <= 1) continue;
    std::vector<int> local_block;
    for (int v : block) {
      if (local[v] < 0)
        throw std::invalid_argument("induced block member outside region");
      local_block.push_back(local[v]);
    }
    out.graph.wiring.push_back(std::move(local_block));
  }
  return out;
}

int component_count(const WiredGraph& g, const RcConfig& config) {
  Dsu dsu(g.vertex_count);
  for (const auto& block : g.wiring)
    for (std::size_t i = 1; i < block.size(); ++i)
      dsu.unite(block[0], block[i]);
  for (int e = 0; e < g.edge_count(); ++e)
    if (config.open(e)) dsu.unite(g.edges[e].u, g.edges[e].v);
  int count = 0;
  for (int v = 0; v < g.vertex_count; ++v)
    if (dsu.find(v) == v) ++count;
  return count;
}

bool graph_is_cut_edge(const WiredGraph& g, const RcConfig& config, int e) {
  Dsu dsu(g.vertex_count);
  for (const auto& block : g.wiring)
    for (std::size_t i = 1; i < block.size(); ++i)
      dsu.unite(block[0], block[i]);
  for (int f = 0; f < g.edge_count(); ++f)
    if (f != e && config.open(f)) dsu.unite(g.edges[f].u, g.edges[f].v);
  return dsu.find(g.edges[e].u) != dsu.find(g.edges[e].v);
}

}  // namespace rcdyn
