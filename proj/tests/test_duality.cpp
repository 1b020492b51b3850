#include <doctest.h>

#include <cmath>
#include <map>

#include "rcdyn/duality.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/oracle.hpp"
#include "rcdyn/rng.hpp"

using namespace rcdyn;

TEST_CASE("dual parameter formula and involution") {
  CHECK(dual_p(RcParams(0.3, 2.0)) == doctest::Approx(1.4 / 1.7));
  const CounterRng rng(8);
  for (int i = 0; i < 100; ++i) {
    const double p = 0.01 + 0.98 * rng.uniform(i, 0);
    const double q = 1.0 + 9.0 * rng.uniform(i, 1);
    const RcParams params(p, q);
    const RcParams dual(dual_p(params), q);
    CHECK(dual_p(dual) == doctest::Approx(p).epsilon(1e-12));
    // sub/super-critical swap
    CHECK((p > critical_point(q)) == (dual_p(params) < critical_point(q)));
  }
  const double sd = self_dual_point(2.0);
  CHECK(dual_p(RcParams(sd, 2.0)) == doctest::Approx(sd));
}

TEST_CASE("critical point values") {
  CHECK(critical_point(1.0) == doctest::Approx(0.5));
  CHECK(critical_point(4.0) == doctest::Approx(2.0 / 3.0));
  CHECK(critical_point(2.0) == doctest::Approx(0.585786).epsilon(1e-6));
  CHECK_THROWS_AS(critical_point(0.5), std::invalid_argument);
}

TEST_CASE("dual configuration is the complement") {
  const Lattice lat(3);
  const DualGraph dual = build_dual(lat);
  const int m = lat.edge_count();
  CHECK(dual_config(dual, RcConfig::all_open(m)) == RcConfig(m));
  CHECK(dual_config(dual, RcConfig(m)) == RcConfig::all_open(m));
  const CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    RcConfig a(m);
    for (int e = 0; e < m; ++e) a.set(e, rng.uniform(trial * 64 + e) < 0.5);
    const RcConfig d = dual_config(dual, a);
    CHECK(a.open_count() + d.open_count() == m);
  }
}

TEST_CASE("dual box map pairs every interior edge, boundary ring has 4n") {
  for (int n : {2, 3, 4}) {
    const Lattice lam(n), prime(n + 1);
    const DualBoxMap map(lam, prime);
    CHECK(map.boundary_prime_edges().size() == static_cast<std::size_t>(4 * n));
    for (int e = 0; e < lam.edge_count(); ++e) {
      const int ep = map.prime_edge_of_primal(e);
      CHECK(ep >= 0);
      CHECK(map.primal_edge_of_prime(ep) == e);
    }
  }
}

TEST_CASE("every primal configuration has exactly 2^(ring size) partners") {
  const Lattice lam(2), prime(3);
  const DualBoxMap map(lam, prime);
  std::map<std::uint64_t, long> hits;
  for (std::uint64_t s = 0; s < (1ULL << prime.edge_count()); ++s) {
    const RcConfig a_prime = RcConfig::from_mask(prime.edge_count(), s);
    ++hits[compatible_primal(map, a_prime).low_mask()];
  }
  CHECK(hits.size() == 16);
  for (const auto& [mask, count] : hits) CHECK(count == 256);  // 2^8
}

TEST_CASE("compatible configurations round trip") {
  const Lattice lam(3), prime(4);
  const DualBoxMap map(lam, prime);
  const CounterRng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    RcConfig a(lam.edge_count());
    for (int e = 0; e < lam.edge_count(); ++e)
      a.set(e, rng.uniform(trial * 64 + e) < 0.5);
    std::vector<bool> ring(map.boundary_prime_edges().size());
    for (std::size_t i = 0; i < ring.size(); ++i)
      ring[i] = rng.uniform(trial * 64 + i, 1) < 0.5;
    CHECK(compatible_primal(map, compatible_prime(map, a, ring)) == a);
  }
}

TEST_CASE("cut edges complement through the wired dual box") {
  // e is a cut edge in the free primal iff its partner is not a cut edge
  // in the wired dual box; exhaustive on the 2-box
  const Lattice lam(2), prime(3);
  const DualBoxMap map(lam, prime);
  const WiredGraph primal_graph = as_graph(lam, free_boundary(lam));
  const WiredGraph prime_graph = as_graph(prime, wired_boundary(prime));
  for (std::uint64_t s = 0; s < (1ULL << prime.edge_count()); ++s) {
    const RcConfig a_prime = RcConfig::from_mask(prime.edge_count(), s);
    const RcConfig a = compatible_primal(map, a_prime);
    for (int e = 0; e < lam.edge_count(); ++e) {
      const int ep = map.prime_edge_of_primal(e);
      CHECK(graph_is_cut_edge(primal_graph, a, e) !=
            graph_is_cut_edge(prime_graph, a_prime, ep));
    }
  }
}

TEST_CASE("induced primal moves") {
  const Lattice lam(3), prime(4);
  const DualBoxMap map(lam, prime);

  // a boundary-ring update moves nothing
  const int ring_edge = map.boundary_prime_edges().front();
  const InducedPrimalMove noop = induced_primal_step(map, ring_edge, true);
  CHECK_FALSE(noop.moved);

  // opening a paired dual edge closes the primal edge and vice versa
  const int e = lam.horizontal_edge(1, 1);
  const int ep = map.prime_edge_of_primal(e);
  const InducedPrimalMove close = induced_primal_step(map, ep, true);
  CHECK(close.moved);
  CHECK(close.primal_edge == e);
  CHECK_FALSE(close.new_state);
  const InducedPrimalMove open = induced_primal_step(map, ep, false);
  CHECK(open.new_state);

  RcConfig a = RcConfig::all_open(lam.edge_count());
  apply_induced_move(close, a);
  CHECK_FALSE(a.open(e));
  apply_induced_move(noop, a);
  CHECK(a.open_count() == lam.edge_count() - 1);
}

TEST_CASE("the induced chain is lazy with no-move probability 2/(n+1)") {
  for (int n : {3, 7, 15}) {
    const Lattice lam(n), prime(n + 1);
    const DualBoxMap map(lam, prime);
    const double lazy = static_cast<double>(map.boundary_prime_edges().size()) /
                        prime.edge_count();
    CHECK(lazy == doctest::Approx(2.0 / (n + 1)));
  }
}

TEST_CASE("factorization of the wired dual measure") {
  const Lattice lam(2), prime(3);
  const DualBoxMap map(lam, prime);
  const RcParams params(0.45, 2.0);
  const double p_star = dual_p(params);
  const ExactMeasure mu(as_graph(lam, free_boundary(lam)), params);
  const ExactMeasure mu_prime(as_graph(prime, wired_boundary(prime)),
                              RcParams(p_star, params.q));
  for (std::uint64_t s = 0; s < mu_prime.config_count(); ++s) {
    const RcConfig a_prime = mu_prime.config_at(s);
    double ring = 1.0;
    for (int ep : map.boundary_prime_edges())
      ring *= a_prime.open(ep) ? p_star : 1.0 - p_star;
    const double lhs = mu_prime.probability(a_prime);
    const double rhs =
        mu.probability(compatible_primal(map, a_prime)) * ring;
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("dual-box heat-bath sampling matches the super-critical primal") {
  // light version of the acceptance criterion: fewer samples, 6-sigma band
  const Lattice lam(3), prime(4);
  const DualBoxMap map(lam, prime);
  const RcParams params(0.8, 2.0);
  const RcParams dual_params(dual_p(params), params.q);
  REQUIRE(dual_params.p < critical_point(params.q));
  const ExactMeasure mu(as_graph(lam, free_boundary(lam)), params);
  const WiredGraph dual_graph = as_graph(prime, wired_boundary(prime));

  const long samples = 5000;
  std::vector<long> hits(lam.edge_count(), 0);
  const CounterRng master(4242);
  for (long s = 0; s < samples; ++s) {
    const auto prime_sample =
        cftp_sample_graph(dual_graph, dual_params, master.derive(s).key());
    REQUIRE(prime_sample.has_value());
    const RcConfig a = compatible_primal(map, *prime_sample);
    for (int e = 0; e < lam.edge_count(); ++e) hits[e] += a.open(e);
  }
  for (int e = 0; e < lam.edge_count(); ++e) {
    const double p = mu.edge_marginal(e);
    const double sigma = std::sqrt(p * (1.0 - p) / samples);
    CHECK(std::abs(static_cast<double>(hits[e]) / samples - p) < 6.0 * sigma);
  }
}
