#include "rcdyn/connectivity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rcdyn {

ConnectivityView components(const Lattice& lat, const RcConfig& config,
                            const BoundaryCondition& bc) {
  std::vector<int> parent(lat.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (x != parent[x]) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep least id at the root
    parent[b] = a;
  };

  for (const auto& block : bc.blocks())
    for (std::size_t i = 1; i < block.size(); ++i) unite(block[0], block[i]);
  for (int e = 0; e < lat.edge_count(); ++e)
    if (config.open(e)) unite(lat.edges()[e].u, lat.edges()[e].v);

  ConnectivityView view;
  view.component_id.resize(lat.vertex_count());
  for (int v = 0; v < lat.vertex_count(); ++v) {
    view.component_id[v] = find(v);
    if (view.component_id[v] == v) ++view.component_count;
  }
  return view;
}

CutQuery::CutQuery(const Lattice& lat, const BoundaryCondition& bc)
    : lat_(lat), bc_(bc) {
  visit_epoch_.assign(lat.vertex_count(), 0);
  block_epoch_.assign(bc.blocks().size(), 0);
  stack_.reserve(lat.vertex_count());
}

bool CutQuery::connected(const RcConfig& config, int u, int v,
                         int avoid_edge) {
  if (u == v) return true;
  ++epoch_;
  stack_.clear();

  auto visit = [&](int w) {
    if (visit_epoch_[w] == epoch_) return;
    visit_epoch_[w] = epoch_;
    stack_.push_back(w);
  };

  visit(u);
  while (!stack_.empty()) {
    const int w = stack_.back();
    stack_.pop_back();
    if (w == v) return true;
    for (const auto& inc : lat_.incident(w)) {
      if (inc.edge == avoid_edge || !config.open(inc.edge)) continue;
      if (inc.neighbor == v) return true;
      visit(inc.neighbor);
    }
    const int blk = bc_.block_of(w);
    if (blk >= 0 && block_epoch_[blk] != epoch_) {
      block_epoch_[blk] = epoch_;
      for (int member : bc_.blocks()[blk]) {
        if (member == v) return true;
        visit(member);
      }
    }
  }
  return false;
}

bool CutQuery::is_cut(const RcConfig& config, int e) {
  const Edge& ed = lat_.edges()[e];
  // cut iff the endpoints are disconnected in A \ {e}; this is independent
  // of e's own current state
  return !connected(config, ed.u, ed.v, e);
}

bool is_cut_edge(const Lattice& lat, const RcConfig& config,
                 const BoundaryCondition& bc, int e) {
  if (e < 0 || e >= lat.edge_count()) throw std::invalid_argument("bad edge");
  CutQuery query(lat, bc);
  return query.is_cut(config, e);
}

bool connected(const Lattice& lat, const RcConfig& config,
               const BoundaryCondition& bc, int u, int v) {
  CutQuery query(lat, bc);
  return query.connected(config, u, v);
}

std::vector<int> gamma_region(const Lattice& lat, const RcConfig& config,
                              const BoxRegion& box, bool use_wiring,
                              const BoundaryCondition* bc) {
  if (use_wiring && bc == nullptr)
    throw std::invalid_argument("wired gamma_region needs a boundary condition");

  std::vector<char> reached(lat.vertex_count(), 0);
  std::vector<char> block_done(use_wiring ? bc->blocks().size() : 0, 0);
  std::vector<int> stack;
  auto visit = [&](int w) {
    if (reached[w]) return;
    reached[w] = 1;
    stack.push_back(w);
  };

  for (int v : box.inner_boundary) visit(v);
  while (!stack.empty()) {
    const int w = stack.back();
    stack.pop_back();
    for (const auto& inc : lat.incident(w))
      if (config.open(inc.edge)) visit(inc.neighbor);
    if (use_wiring) {
      const int blk = bc->block_of(w);
      if (blk >= 0 && !block_done[blk]) {
        block_done[blk] = 1;
        for (int member : bc->blocks()[blk]) visit(member);
      }
    }
  }

  std::vector<int> gamma;
  for (int v : box.vertices)
    if (!reached[v]) gamma.push_back(v);
  return gamma;
}

}  // namespace rcdyn
