#include "rcdyn/duality.hpp"

#include <stdexcept>

namespace rcdyn {

RcConfig dual_config(const DualGraph& dual, const RcConfig& primal) {
  if (static_cast<int>(dual.edges.size()) != primal.edge_count())
    throw std::invalid_argument("configuration size mismatch");
  RcConfig out(primal.edge_count());
  for (int e = 0; e < primal.edge_count(); ++e) out.set(e, !primal.open(e));
  return out;
}

DualBoxMap::DualBoxMap(const Lattice& primal, const Lattice& prime)
    : primal_(&primal), prime_(&prime) {
  const int n = primal.side();
  if (prime.side() != n + 1)
    throw std::invalid_argument("dual box must have side n+1");

  prime_of_primal_.assign(primal.edge_count(), -1);
  primal_of_prime_.assign(prime.edge_count(), -1);

  // Place the vertex of Lambda' at (a,b) on the plane point (a-1/2, b-1/2):
  // its edges then cross the primal edges transversally. A horizontal edge
  // ((a,b),(a+1,b)) of Lambda' with 1 <= b <= n-1 crosses the primal
  // vertical edge ((a,b-1),(a,b)); a vertical edge ((a,b),(a,b+1)) with
  // 1 <= a <= n-1 crosses the primal horizontal edge ((a-1,b),(a,b)).
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n - 1; ++x) {
      const int e = primal.horizontal_edge(x, y);
      const int ep = prime.vertical_edge(x + 1, y);
      prime_of_primal_[e] = ep;
      primal_of_prime_[ep] = e;
    }
  for (int y = 0; y < n - 1; ++y)
    for (int x = 0; x < n; ++x) {
      const int e = primal.vertical_edge(x, y);
      const int ep = prime.horizontal_edge(x, y + 1);
      prime_of_primal_[e] = ep;
      primal_of_prime_[ep] = e;
    }

  for (int ep = 0; ep < prime.edge_count(); ++ep)
    if (primal_of_prime_[ep] < 0) boundary_prime_edges_.push_back(ep);
}

RcConfig compatible_primal(const DualBoxMap& map,
                           const RcConfig& prime_config) {
  const Lattice& primal = map.primal();
  if (prime_config.edge_count() != map.prime().edge_count())
    throw std::invalid_argument("configuration size mismatch");
  RcConfig out(primal.edge_count());
  for (int e = 0; e < primal.edge_count(); ++e)
    out.set(e, !prime_config.open(map.prime_edge_of_primal(e)));
  return out;
}

RcConfig compatible_prime(const DualBoxMap& map, const RcConfig& primal_config,
                          const std::vector<bool>& boundary_bits) {
  const Lattice& prime = map.prime();
  if (primal_config.edge_count() != map.primal().edge_count())
    throw std::invalid_argument("configuration size mismatch");
  if (boundary_bits.size() != map.boundary_prime_edges().size())
    throw std::invalid_argument("boundary bit count mismatch");
  RcConfig out(prime.edge_count());
  for (int e = 0; e < map.primal().edge_count(); ++e)
    out.set(map.prime_edge_of_primal(e), !primal_config.open(e));
  for (std::size_t i = 0; i < boundary_bits.size(); ++i)
    out.set(map.boundary_prime_edges()[i], boundary_bits[i]);
  return out;
}

InducedPrimalMove induced_primal_step(const DualBoxMap& map, int prime_edge,
                                      bool prime_new_state) {
  const int e = map.primal_edge_of_prime(prime_edge);
  if (e < 0) return {false, -1, false};
  return {true, e, !prime_new_state};
}

void apply_induced_move(const InducedPrimalMove& move, RcConfig& primal) {
  if (move.moved) primal.set(move.primal_edge, move.new_state);
}

}  // namespace rcdyn
