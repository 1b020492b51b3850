#include "rcdyn/boundary.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rcdyn {

namespace {

// union-find with path halving
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

std::vector<std::vector<int>> canonicalize(
    std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

}  // namespace

BoundaryCondition::BoundaryCondition(const Lattice& lat,
                                     std::vector<std::vector<int>> blocks)
    : n_(lat.side()), blocks_(canonicalize(std::move(blocks))) {
  block_of_.assign(lat.vertex_count(), -1);
  int covered = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) throw std::invalid_argument("empty block");
    for (int v : blocks_[i]) {
      if (v < 0 || v >= lat.vertex_count() || !lat.on_boundary(v))
        throw std::invalid_argument("block member not a boundary vertex");
      if (block_of_[v] != -1)
        throw std::invalid_argument("vertex in two blocks");
      block_of_[v] = static_cast<int>(i);
      ++covered;
    }
  }
  if (covered != static_cast<int>(lat.boundary().size()))
    throw std::invalid_argument("blocks do not cover the boundary");
}

BoundaryCondition free_boundary(const Lattice& lat) {
  std::vector<std::vector<int>> blocks;
  for (int v : lat.boundary()) blocks.push_back({v});
  return BoundaryCondition(lat, std::move(blocks));
}

BoundaryCondition wired_boundary(const Lattice& lat) {
  return BoundaryCondition(lat, {lat.boundary()});
}

BoundaryCondition side_homogeneous(const Lattice& lat, unsigned kappa) {
  if (kappa > 0xf) throw std::invalid_argument("kappa out of range");
  std::vector<char> in_union(lat.vertex_count(), 0);
  std::vector<int> joint;
  for (int j = 0; j < 4; ++j) {
    if (!(kappa >> j & 1)) continue;
    for (int v : lat.sides()[j])
      if (!in_union[v]) {
        in_union[v] = 1;
        joint.push_back(v);
      }
  }
  std::vector<std::vector<int>> blocks;
  if (joint.size() > 1) {
    blocks.push_back(std::move(joint));
  } else {
    // a one-vertex union cannot happen for n >= 2; treat it as a singleton
    for (int v : lat.boundary())
      if (in_union[v]) blocks.push_back({v});
  }
  for (int v : lat.boundary())
    if (!in_union[v]) blocks.push_back({v});
  return BoundaryCondition(lat, std::move(blocks));
}

bool is_side_homogeneous(const Lattice& lat, const BoundaryCondition& bc) {
  const std::vector<int>* big = nullptr;
  for (const auto& b : bc.blocks()) {
    if (b.size() <= 1) continue;
    if (big != nullptr) return false;  // (P1)
    big = &b;
  }
  if (big == nullptr) return true;  // free
  // (P2): the block must equal a union of whole sides
  for (unsigned kappa = 1; kappa <= 0xf; ++kappa) {
    std::vector<char> in_union(lat.vertex_count(), 0);
    std::vector<int> joint;
    for (int j = 0; j < 4; ++j) {
      if (!(kappa >> j & 1)) continue;
      for (int v : lat.sides()[j])
        if (!in_union[v]) {
          in_union[v] = 1;
          joint.push_back(v);
        }
    }
    std::sort(joint.begin(), joint.end());
    if (joint == *big) return true;
  }
  return false;
}

bool refines(const BoundaryCondition& a, const BoundaryCondition& b) {
  if (a.lattice_side() != b.lattice_side())
    throw std::invalid_argument("boundary conditions on different lattices");
  for (const auto& block : a.blocks()) {
    const int target = b.block_of(block.front());
    for (int v : block)
      if (b.block_of(v) != target) return false;
  }
  return true;
}

InducedCondition induced_condition(const Lattice& lat,
                                   const std::vector<int>& region,
                                   const RcConfig& outside_config,
                                   const BoundaryCondition& outer_bc) {
  std::vector<char> in_region(lat.vertex_count(), 0);
  for (int v : region) in_region[v] = 1;

  // region boundary: vertices of D adjacent to Lambda \ D, plus D on the
  // outer boundary
  std::vector<int> rb;
  for (int v : region) {
    bool take = lat.on_boundary(v);
    if (!take)
      for (const auto& inc : lat.incident(v))
        if (!in_region[inc.neighbor]) take = true;
    if (take) rb.push_back(v);
  }
  std::sort(rb.begin(), rb.end());

  // connectivity through open edges not inside D, with outer wirings merging
  Dsu dsu(lat.vertex_count());
  for (int e = 0; e < lat.edge_count(); ++e) {
    const Edge& ed = lat.edges()[e];
    if (in_region[ed.u] && in_region[ed.v]) continue;
    if (outside_config.open(e)) dsu.unite(ed.u, ed.v);
  }
  for (const auto& block : outer_bc.blocks())
    for (std::size_t i = 1; i < block.size(); ++i)
      dsu.unite(block[0], block[i]);

  InducedCondition out;
  out.region = region;
  std::sort(out.region.begin(), out.region.end());
  out.region_boundary = rb;

  std::vector<std::pair<int, int>> root_vertex;  // (root, vertex)
  for (int v : rb) root_vertex.emplace_back(dsu.find(v), v);
  std::sort(root_vertex.begin(), root_vertex.end());
  for (std::size_t i = 0; i < root_vertex.size();) {
    std::size_t j = i;
    std::vector<int> block;
    while (j < root_vertex.size() &&
           root_vertex[j].first == root_vertex[i].first)
      block.push_back(root_vertex[j++].second);
    out.blocks.push_back(std::move(block));
    i = j;
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace rcdyn
