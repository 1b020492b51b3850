#pragma once

#include <cmath>
#include <vector>

#include "rcdyn/config.hpp"
#include "rcdyn/lattice.hpp"
#include "rcdyn/params.hpp"

namespace rcdyn {

// p* = q(1-p) / (p + q(1-p)); an involution exchanging the sub- and
// super-critical regimes
inline double dual_p(const RcParams& params) {
  return params.q * (1.0 - params.p) /
         (params.p + params.q * (1.0 - params.p));
}

inline double self_dual_point(double q) {
  return std::sqrt(q) / (std::sqrt(q) + 1.0);
}

inline double critical_point(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("need q >= 1");
  return self_dual_point(q);
}

// complementation convention: e* open iff e closed (dual edge i pairs with
// primal edge i)
RcConfig dual_config(const DualGraph& dual, const RcConfig& primal);

// Correspondence between the box Lambda_n and the wired (n+1)-box Lambda'
// realizing its dual: contracting the boundary of Lambda' yields the dual
// graph of Lambda_n. Edges of Lambda' with both endpoints on its boundary
// have no primal partner.
class DualBoxMap {
 public:
  DualBoxMap(const Lattice& primal, const Lattice& prime);

  const Lattice& primal() const { return *primal_; }
  const Lattice& prime() const { return *prime_; }

  int prime_edge_of_primal(int e) const { return prime_of_primal_[e]; }
  int primal_edge_of_prime(int ep) const { return primal_of_prime_[ep]; }
  const std::vector<int>& boundary_prime_edges() const {
    return boundary_prime_edges_;
  }

 private:
  const Lattice* primal_;
  const Lattice* prime_;
  std::vector<int> prime_of_primal_;
  std::vector<int> primal_of_prime_;
  std::vector<int> boundary_prime_edges_;
};

// the unique primal configuration compatible with a configuration on the
// wired dual box: A(e) = 1 - A'(e'), boundary edges of Lambda' ignored
RcConfig compatible_primal(const DualBoxMap& map, const RcConfig& prime_config);

// a compatible dual-box configuration for A; the free bits choose the
// disposition of the boundary edges of Lambda'
RcConfig compatible_prime(const DualBoxMap& map, const RcConfig& primal_config,
                          const std::vector<bool>& boundary_bits);

// One move of the dynamics induced on Lambda_n by a heat-bath step on the
// wired dual box: boundary-boundary dual edges are no-ops, otherwise the
// primal edge takes the complementary state. The induced chain is a lazy
// heat-bath dynamics at the primal parameter.
struct InducedPrimalMove {
  bool moved;
  int primal_edge;
  bool new_state;
};
InducedPrimalMove induced_primal_step(const DualBoxMap& map, int prime_edge,
                                      bool prime_new_state);
void apply_induced_move(const InducedPrimalMove& move, RcConfig& primal);

}  // namespace rcdyn
