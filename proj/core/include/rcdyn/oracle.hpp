#pragma once

#include <cstdint>
#include <vector>

#include "rcdyn/config.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/params.hpp"

namespace rcdyn {

struct EdgeClamp {
  int edge;
  bool open;
};

// Exact enumeration of the random-cluster measure on a small wired graph.
// With clamps, the measure is conditioned on the listed edges being fixed;
// enumeration then runs over the free edges only. Weights are accumulated
// in log space with a max shift.
class ExactMeasure {
 public:
  static constexpr int kDefaultCap = 24;

  ExactMeasure(const WiredGraph& graph, RcParams params,
               std::vector<EdgeClamp> clamps = {}, int cap = kDefaultCap);

  const WiredGraph& graph() const { return graph_; }
  const RcParams& params() const { return params_; }

  int free_edge_count() const { return static_cast<int>(free_edges_.size()); }
  const std::vector<int>& free_edges() const { return free_edges_; }
  std::uint64_t config_count() const { return 1ULL << free_edge_count(); }

  double log_partition_function() const { return log_z_; }
  double partition_function() const;

  // probability of the full configuration (0 if it conflicts with a clamp)
  double probability(const RcConfig& config) const;
  double probability_by_index(std::uint64_t free_mask) const {
    return probs_[free_mask];
  }
  RcConfig config_at(std::uint64_t free_mask) const;

  double edge_marginal(int e) const;
  // P(u <-> v) under the measure, wirings included
  double connectivity_prob(int u, int v) const;

 private:
  WiredGraph graph_;
  RcParams params_;
  std::vector<int> free_edges_;        // edge ids in increasing order
  std::vector<int> free_index_;        // edge id -> free index or -1
  RcConfig base_;                      // clamped-open edges set
  double log_z_ = 0.0;                 // relative to clamp factors
  std::vector<double> probs_;          // size 2^free
};

// Sparse heat-bath transition matrix over all 2^|E| configurations.
// Row A: for each edge e, mass (1/|E|) * open_prob to A|e and
// (1/|E|) * (1-open_prob) to A&~e.
class TransitionMatrix {
 public:
  TransitionMatrix(const WiredGraph& graph, RcParams params, int cap = 14);

  int edge_count() const { return m_; }
  std::uint64_t state_count() const { return 1ULL << m_; }
  bool cut(std::uint64_t state, int e) const {
    return (cut_mask_[state] >> e) & 1u;
  }

  double prob(std::uint64_t from, std::uint64_t to) const;
  // v <- vP (left multiplication by a row vector)
  std::vector<double> apply(const std::vector<double>& v) const;

  double max_detailed_balance_violation(const ExactMeasure& mu) const;
  // left fixed-point residual ||mu P - mu||_inf
  double stationarity_residual(const ExactMeasure& mu) const;
  // power iteration from the uniform distribution until ||vP - v||_1 <= tol
  std::vector<double> stationary_power_iteration(double tol = 1e-13,
                                                 int max_iter = 200000) const;

 private:
  RcParams params_;
  int m_;
  std::vector<std::uint32_t> cut_mask_;
};

struct TvCurve {
  std::vector<double> distance;  // d(t) for t = 0..t_max
  int mixing_step = -1;          // first t with d(t) <= 1/4
};

TvCurve tv_curve(const TransitionMatrix& matrix, const RcConfig& start,
                 const ExactMeasure& mu, int t_max);

}  // namespace rcdyn
