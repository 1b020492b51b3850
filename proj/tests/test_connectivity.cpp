#include <doctest.h>

#include <algorithm>

#include "rcdyn/connectivity.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/rng.hpp"

using namespace rcdyn;

TEST_CASE("component counts under wirings") {
  const Lattice l2(2);
  const RcConfig empty2(l2.edge_count());
  CHECK(components(l2, empty2, free_boundary(l2)).component_count == 4);
  CHECK(components(l2, empty2, wired_boundary(l2)).component_count == 1);

  const Lattice l3(3);
  const RcConfig empty3(l3.edge_count());
  CHECK(components(l3, empty3, side_homogeneous(l3, 1u)).component_count == 7);
}

TEST_CASE("component labels are canonical least ids") {
  const Lattice lat(3);
  const RcConfig empty(lat.edge_count());
  const ConnectivityView view =
      components(lat, empty, wired_boundary(lat));
  // the wired boundary component is labelled by vertex 0; the single
  // interior vertex keeps its own id
  const int center = lat.vertex_id(1, 1);
  for (int v = 0; v < lat.vertex_count(); ++v)
    CHECK(view.component_id[v] == (v == center ? center : 0));
}

TEST_CASE("cut edge basics on the 2-box") {
  const Lattice lat(2);
  const RcConfig empty(lat.edge_count());
  const RcConfig full = RcConfig::all_open(lat.edge_count());
  for (int e = 0; e < lat.edge_count(); ++e) {
    CHECK(is_cut_edge(lat, empty, free_boundary(lat), e));
    CHECK_FALSE(is_cut_edge(lat, full, free_boundary(lat), e));
    CHECK_FALSE(is_cut_edge(lat, empty, wired_boundary(lat), e));
  }
}

TEST_CASE("connectivity queries include wirings") {
  const Lattice lat(3);
  const RcConfig empty(lat.edge_count());
  const BoundaryCondition fr = free_boundary(lat);
  const BoundaryCondition wi = wired_boundary(lat);
  const int a = lat.vertex_id(0, 0), b = lat.vertex_id(2, 2);
  CHECK(connected(lat, empty, fr, a, a));
  CHECK_FALSE(connected(lat, empty, fr, a, b));
  CHECK(connected(lat, empty, wi, a, b));
}

TEST_CASE("opening an edge never increases the component count") {
  const Lattice lat(4);
  const CounterRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    RcConfig config(lat.edge_count());
    for (int e = 0; e < lat.edge_count(); ++e)
      config.set(e, rng.uniform(trial * 64 + e) < 0.5);
    const BoundaryCondition bc =
        side_homogeneous(lat, rng.uniform_int(trial, 16, 1));
    const int e = rng.uniform_int(trial, lat.edge_count(), 2);
    RcConfig without = config, with = config;
    without.set(e, false);
    with.set(e, true);
    const int c0 = components(lat, without, bc).component_count;
    const int c1 = components(lat, with, bc).component_count;
    CHECK(c1 <= c0);
    CHECK(c0 - c1 <= 1);
    CHECK((c0 != c1) == is_cut_edge(lat, config, bc, e));
  }
}

TEST_CASE("refining the boundary condition cannot lower the count") {
  for (int n : {2, 3}) {
    const Lattice lat(n);
    std::vector<BoundaryCondition> family;
    for (unsigned kappa = 0; kappa < 16; ++kappa)
      family.push_back(side_homogeneous(lat, kappa));
    std::vector<std::pair<std::size_t, std::size_t>> ordered;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = 0; b < family.size(); ++b)
        if (a != b && refines(family[a], family[b])) ordered.emplace_back(a, b);

    const std::uint64_t configs = 1ULL << lat.edge_count();
    long violations = 0;
    for (std::uint64_t mask = 0; mask < configs; ++mask) {
      const RcConfig config = RcConfig::from_mask(lat.edge_count(), mask);
      int counts[16];
      for (std::size_t i = 0; i < family.size(); ++i)
        counts[i] = components(lat, config, family[i]).component_count;
      for (const auto& [a, b] : ordered) violations += counts[a] < counts[b];
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("cut query engine matches the free functions") {
  const Lattice lat(5);
  const BoundaryCondition bc = side_homogeneous(lat, 0b101u);
  CutQuery query(lat, bc);
  const CounterRng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    RcConfig config(lat.edge_count());
    for (int e = 0; e < lat.edge_count(); ++e)
      config.set(e, rng.uniform(trial * 64 + e) < 0.45);
    const int e = rng.uniform_int(trial, lat.edge_count(), 2);
    CHECK(query.is_cut(config, e) == is_cut_edge(lat, config, bc, e));
    CHECK(query.is_cut(config, e) ==
          graph_is_cut_edge(as_graph(lat, bc), config, e));
  }
}

TEST_CASE("disagreement region endpoints") {
  const Lattice lat(7);
  const BoxRegion box = box_region(lat, lat.horizontal_edge(3, 3), 2);

  const RcConfig closed(lat.edge_count());
  std::vector<int> gamma = gamma_region(lat, closed, box);
  // all closed: Gamma = B minus its inner boundary
  std::vector<int> expect;
  std::vector<char> is_ib(lat.vertex_count(), 0);
  for (int v : box.inner_boundary) is_ib[v] = 1;
  for (int v : box.vertices)
    if (!is_ib[v]) expect.push_back(v);
  std::sort(gamma.begin(), gamma.end());
  std::sort(expect.begin(), expect.end());
  CHECK(gamma == expect);

  const RcConfig open = RcConfig::all_open(lat.edge_count());
  CHECK(gamma_region(lat, open, box).empty());
}

TEST_CASE("disagreement region is anti-monotone in the configuration") {
  const Lattice lat(6);
  const BoxRegion box = box_region(lat, lat.vertical_edge(2, 2), 2);
  const CounterRng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    RcConfig small(lat.edge_count());
    RcConfig big(lat.edge_count());
    for (int e = 0; e < lat.edge_count(); ++e) {
      const double u = rng.uniform(trial * 64 + e);
      small.set(e, u < 0.3);
      big.set(e, u < 0.6);  // superset by construction
    }
    std::vector<int> g_small = gamma_region(lat, small, box);
    std::vector<int> g_big = gamma_region(lat, big, box);
    std::sort(g_small.begin(), g_small.end());
    std::sort(g_big.begin(), g_big.end());
    CHECK(std::includes(g_small.begin(), g_small.end(), g_big.begin(),
                        g_big.end()));
  }
}
