#include <doctest.h>

#include <algorithm>
#include <set>

#include "rcdyn/lattice.hpp"

using namespace rcdyn;

TEST_CASE("small boxes have the right counts") {
  const Lattice l2(2);
  CHECK(l2.vertex_count() == 4);
  CHECK(l2.edge_count() == 4);
  CHECK(l2.boundary().size() == 4);

  const Lattice l3(3);
  CHECK(l3.vertex_count() == 9);
  CHECK(l3.edge_count() == 12);
  CHECK(l3.boundary().size() == 8);
}

TEST_CASE("side length below 2 is rejected") {
  CHECK_THROWS_AS(Lattice(1), std::invalid_argument);
  CHECK_THROWS_AS(Lattice(0), std::invalid_argument);
}

TEST_CASE("sides of the 4-box have 4 vertices each, corners on two sides") {
  const Lattice lat(4);
  for (const auto& side : lat.sides()) CHECK(side.size() == 4);
  const int corners[] = {lat.vertex_id(0, 0), lat.vertex_id(3, 0),
                         lat.vertex_id(0, 3), lat.vertex_id(3, 3)};
  for (int c : corners) {
    int on = 0;
    for (const auto& side : lat.sides())
      on += std::count(side.begin(), side.end(), c) > 0;
    CHECK(on == 2);
  }
}

TEST_CASE("edge count and degree profile for n up to 16") {
  for (int n = 2; n <= 16; ++n) {
    const Lattice lat(n);
    CHECK(lat.edge_count() == 2 * n * (n - 1));
    for (int v = 0; v < lat.vertex_count(); ++v) {
      const auto [x, y] = lat.vertex_xy(v);
      const bool cx = x == 0 || x == n - 1;
      const bool cy = y == 0 || y == n - 1;
      const int want = cx && cy ? 2 : (cx || cy ? 3 : 4);
      CHECK(static_cast<int>(lat.incident(v).size()) == want);
    }
  }
}

TEST_CASE("edge indexing contract: horizontal row-major then vertical") {
  const Lattice lat(4);
  int idx = 0;
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 3; ++x, ++idx) {
      CHECK(lat.horizontal_edge(x, y) == idx);
      CHECK(lat.edge(idx).u == lat.vertex_id(x, y));
      CHECK(lat.edge(idx).v == lat.vertex_id(x + 1, y));
    }
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 4; ++x, ++idx) {
      CHECK(lat.vertical_edge(x, y) == idx);
      CHECK(lat.edge(idx).u == lat.vertex_id(x, y));
      CHECK(lat.edge(idx).v == lat.vertex_id(x, y + 1));
    }
  CHECK(idx == lat.edge_count());
}

TEST_CASE("interior box region: every excluded vertex is at distance >= r") {
  const Lattice lat(9);
  const int e = lat.horizontal_edge(4, 4);
  const BoxRegion box = box_region(lat, e, 2);
  for (int v = 0; v < lat.vertex_count(); ++v)
    if (!box.in_box[v]) CHECK(lat.edge_vertex_distance(e, v) >= 2.0);
  // fully interior: no lattice-boundary vertex inside
  for (int v : box.vertices) CHECK_FALSE(lat.on_boundary(v));
  CHECK(box.inner_edges.size() + box.outer_edges.size() ==
        static_cast<std::size_t>(lat.edge_count()));
}

TEST_CASE("corner-adjacent box region is clipped at the boundary") {
  const Lattice lat(5);
  const int e = lat.horizontal_edge(0, 0);
  const BoxRegion box = box_region(lat, e, 3);
  bool touches = false;
  for (int v : box.vertices) touches = touches || lat.on_boundary(v);
  CHECK(touches);
}

TEST_CASE("huge radius saturates the region") {
  const Lattice lat(5);
  const BoxRegion box = box_region(lat, 7, 2 * 5);
  CHECK(box.vertices.size() == static_cast<std::size_t>(lat.vertex_count()));
  CHECK(box.outer_edges.empty());
}

TEST_CASE("box regions grow monotonically in the radius") {
  const Lattice lat(7);
  for (int e : {0, lat.horizontal_edge(3, 3), lat.vertical_edge(6, 2)})
    for (int r = 1; r < 5; ++r) {
      const BoxRegion small = box_region(lat, e, r);
      const BoxRegion big = box_region(lat, e, r + 1);
      for (int v : small.vertices) CHECK(big.in_box[v]);
      for (int f : small.inner_edges) CHECK(big.edge_in_box[f]);
    }
}

TEST_CASE("dual graph of the 2-box: one face, outer vertex, 4 parallel edges") {
  const Lattice lat(2);
  const DualGraph dual = build_dual(lat);
  CHECK(dual.face_count == 1);
  CHECK(dual.vertex_count() == 2);
  CHECK(dual.edges.size() == 4);
  for (const Edge& e : dual.edges) {
    CHECK(std::min(e.u, e.v) == 0);
    CHECK(std::max(e.u, e.v) == dual.outer_vertex);
  }
}

TEST_CASE("dual graph counts and Euler relation") {
  for (int n : {2, 3, 4, 6}) {
    const Lattice lat(n);
    const DualGraph dual = build_dual(lat);
    CHECK(dual.edges.size() == static_cast<std::size_t>(lat.edge_count()));
    // faces including the outer one = |E| - |V| + 2
    CHECK(dual.vertex_count() == lat.edge_count() - lat.vertex_count() + 2);
  }
}

TEST_CASE("every dual edge crossing a boundary edge touches the outer vertex") {
  const Lattice lat(4);
  const DualGraph dual = build_dual(lat);
  for (int e = 0; e < lat.edge_count(); ++e) {
    const Edge pe = lat.edge(e);
    const bool boundary_edge =
        lat.on_boundary(pe.u) && lat.on_boundary(pe.v);
    const bool touches_outer = dual.edges[e].u == dual.outer_vertex ||
                               dual.edges[e].v == dual.outer_vertex;
    if (boundary_edge) CHECK(touches_outer);
  }
}
