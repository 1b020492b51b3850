#pragma once

#include <vector>

#include "rcdyn/config.hpp"
#include "rcdyn/lattice.hpp"

namespace rcdyn {

// A boundary condition: a partition of the boundary vertex set. Vertices in
// the same block are wired, i.e. externally connected. Canonical form: each
// block sorted ascending, blocks ordered by least member, so equality is
// structural.
class BoundaryCondition {
 public:
  BoundaryCondition(const Lattice& lat, std::vector<std::vector<int>> blocks);

  int lattice_side() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  // block index of a vertex, -1 if v is not a boundary vertex
  int block_of(int v) const { return block_of_[v]; }
  bool wired(int u, int v) const {
    return block_of_[u] >= 0 && block_of_[u] == block_of_[v];
  }

  bool operator==(const BoundaryCondition& o) const {
    return n_ == o.n_ && blocks_ == o.blocks_;
  }

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

BoundaryCondition free_boundary(const Lattice& lat);
BoundaryCondition wired_boundary(const Lattice& lat);

// kappa is a bitmask over sides {1,2,3,4}: bit j-1 set means side L_j joins
// the single wired block. kappa == 0 gives the free condition, kappa == 0xf
// the wired one.
BoundaryCondition side_homogeneous(const Lattice& lat, unsigned kappa);

bool is_side_homogeneous(const Lattice& lat, const BoundaryCondition& bc);

// true iff every block of a is contained in a block of b
bool refines(const BoundaryCondition& a, const BoundaryCondition& b);

// The boundary condition induced on a region D by the configuration outside
// D together with the outer boundary condition. Two region-boundary vertices
// share a block iff they are connected by open edges outside D, where outer
// wirings also merge components.
struct InducedCondition {
  std::vector<int> region;                // sorted D
  std::vector<int> region_boundary;       // sorted, the partitioned vertex set
  std::vector<std::vector<int>> blocks;   // canonical partition
};

InducedCondition induced_condition(const Lattice& lat,
                                   const std::vector<int>& region,
                                   const RcConfig& outside_config,
                                   const BoundaryCondition& outer_bc);

}  // namespace rcdyn
