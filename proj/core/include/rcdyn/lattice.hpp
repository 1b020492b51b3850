#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rcdyn {

struct Edge {
  int u;
  int v;
};

// Geometry of the n x n box of Z^2 (n vertices per side).
//
// Vertex ids: id = y*n + x for (x,y), 0 <= x,y <= n-1.
// Edge ids (a serialization contract, stable across runs):
//   horizontal edges first, row-major: ((x,y),(x+1,y)) -> y*(n-1) + x,
//   then vertical edges, row-major:    ((x,y),(x,y+1)) -> n*(n-1) + y*n + x.
// Sides: L1 = top (y = n-1), L2 = right (x = n-1), L3 = bottom (y = 0),
// L4 = left (x = 0); corners belong to two sides.
class Lattice {
 public:
  explicit Lattice(int n);

  int side() const { return n_; }
  int vertex_count() const { return n_ * n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int vertex_id(int x, int y) const { return y * n_ + x; }
  std::pair<int, int> vertex_xy(int v) const { return {v % n_, v / n_}; }

  const std::vector<Edge>& edges() const { return edges_; }
  Edge edge(int e) const { return edges_[e]; }
  int horizontal_edge(int x, int y) const { return y * (n_ - 1) + x; }
  int vertical_edge(int x, int y) const { return n_ * (n_ - 1) + y * n_ + x; }

  const std::vector<int>& boundary() const { return boundary_; }
  bool on_boundary(int v) const { return is_boundary_[v] != 0; }
  const std::array<std::vector<int>, 4>& sides() const { return sides_; }

  struct Incidence {
    int edge;
    int neighbor;
  };
  std::span<const Incidence> incident(int v) const {
    return {inc_.data() + inc_off_[v],
            static_cast<std::size_t>(inc_off_[v + 1] - inc_off_[v])};
  }

  // min over e's endpoints of Euclidean distance to v
  double edge_vertex_distance(int e, int v) const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<int> boundary_;
  std::vector<char> is_boundary_;
  std::array<std::vector<int>, 4> sides_;
  std::vector<Incidence> inc_;
  std::vector<int> inc_off_;
};

Lattice build_lattice(int n);

// B(e,r): the minimal box around e whose exterior is at Euclidean distance
// >= r from e's endpoints, clipped to the lattice.
struct BoxRegion {
  int center_edge = -1;
  int radius = 0;
  std::vector<int> vertices;        // sorted
  std::vector<char> in_box;         // size n^2
  std::vector<int> inner_edges;     // E(e,r)
  std::vector<int> outer_edges;     // E^c(e,r)
  std::vector<char> edge_in_box;    // size |E|
  std::vector<int> inner_boundary;  // vertices of B adjacent to the rest
};

BoxRegion box_region(const Lattice& lat, int e, int r);

// Planar dual: one vertex per face plus an outer vertex for the infinite
// face. Dual edge i crosses primal edge i (the index map is the identity).
// Face (fx,fy) = unit square with lower-left primal vertex (fx,fy), id
// fy*(n-1)+fx; the outer vertex has id (n-1)^2.
struct DualGraph {
  int face_count = 0;
  int outer_vertex = 0;
  std::vector<Edge> edges;
  int vertex_count() const { return face_count + 1; }
};

DualGraph build_dual(const Lattice& lat);

}  // namespace rcdyn
