#include "rcdyn/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcdyn {

namespace {

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

}  // namespace

ExactMeasure::ExactMeasure(const WiredGraph& graph, RcParams params,
                           std::vector<EdgeClamp> clamps, int cap)
    : graph_(graph), params_(params), base_(graph.edge_count()) {
  free_index_.assign(graph_.edge_count(), -2);
  for (const EdgeClamp& c : clamps) {
    if (c.edge < 0 || c.edge >= graph_.edge_count())
      throw std::invalid_argument("clamp edge out of range");
    if (free_index_[c.edge] != -2)
      throw std::invalid_argument("edge clamped twice");
    free_index_[c.edge] = -1;
    base_.set(c.edge, c.open);
  }
  for (int e = 0; e < graph_.edge_count(); ++e)
    if (free_index_[e] == -2) {
      free_index_[e] = static_cast<int>(free_edges_.size());
      free_edges_.push_back(e);
    }
  if (free_edge_count() > cap)
    throw std::invalid_argument("free edge count exceeds enumeration cap");

  const double log_p = std::log(params_.p);
  const double log_1p = std::log1p(-params_.p);
  const double log_q = std::log(params_.q);
  const int m = graph_.edge_count();

  const std::uint64_t count = config_count();
  probs_.resize(count);

  // enumerate in Gray-code order so each step toggles one edge
  RcConfig config = base_;
  double max_logw = -1e300;
  std::uint64_t gray = 0;
  for (std::uint64_t t = 0;; ++t) {
    const int c = component_count(graph_, config);
    const int open = config.open_count();
    const double logw = open * log_p + (m - open) * log_1p + c * log_q;
    probs_[gray] = logw;
    max_logw = std::max(max_logw, logw);
    if (t + 1 == count) break;
    const int flip = std::countr_zero(t + 1);
    gray ^= 1ULL << flip;
    config.toggle(free_edges_[flip]);
  }

  double sum = 0.0;
  for (double& w : probs_) {
    w = std::exp(w - max_logw);
    sum += w;
  }
  log_z_ = max_logw + std::log(sum);
  const double inv = 1.0 / sum;
  for (double& w : probs_) w *= inv;
}

double ExactMeasure::partition_function() const { return std::exp(log_z_); }

RcConfig ExactMeasure::config_at(std::uint64_t free_mask) const {
  RcConfig config = base_;
  for (int i = 0; i < free_edge_count(); ++i)
    if ((free_mask >> i) & 1) config.set(free_edges_[i], true);
  return config;
}

double ExactMeasure::probability(const RcConfig& config) const {
  if (config.edge_count() != graph_.edge_count())
    throw std::invalid_argument("configuration size mismatch");
  std::uint64_t mask = 0;
  for (int e = 0; e < graph_.edge_count(); ++e) {
    const int idx = free_index_[e];
    if (idx >= 0) {
      if (config.open(e)) mask |= 1ULL << idx;
    } else if (config.open(e) != base_.open(e)) {
      return 0.0;  // conflicts with a clamp
    }
  }
  return probs_[mask];
}

double ExactMeasure::edge_marginal(int e) const {
  if (e < 0 || e >= graph_.edge_count())
    throw std::invalid_argument("edge out of range");
  const int idx = free_index_[e];
  if (idx < 0) return base_.open(e) ? 1.0 : 0.0;
  double total = 0.0;
  const std::uint64_t bit = 1ULL << idx;
  for (std::uint64_t mask = 0; mask < config_count(); ++mask)
    if (mask & bit) total += probs_[mask];
  return total;
}

double ExactMeasure::connectivity_prob(int u, int v) const {
  if (u == v) return 1.0;
  double total = 0.0;
  RcConfig config = base_;
  std::uint64_t gray = 0;
  const std::uint64_t count = config_count();
  for (std::uint64_t t = 0;; ++t) {
    Dsu dsu(graph_.vertex_count);
    for (const auto& block : graph_.wiring)
      for (std::size_t i = 1; i < block.size(); ++i)
        dsu.unite(block[0], block[i]);
    for (int e = 0; e < graph_.edge_count(); ++e)
      if (config.open(e)) dsu.unite(graph_.edges[e].u, graph_.edges[e].v);
    if (dsu.find(u) == dsu.find(v)) total += probs_[gray];
    if (t + 1 == count) break;
    const int flip = std::countr_zero(t + 1);
    gray ^= 1ULL << flip;
    config.toggle(free_edges_[flip]);
  }
  return total;
}

TransitionMatrix::TransitionMatrix(const WiredGraph& graph, RcParams params,
                                   int cap)
    : params_(params), m_(graph.edge_count()) {
  if (m_ > cap)
    throw std::invalid_argument("edge count exceeds transition-matrix cap");
  cut_mask_.resize(1ULL << m_);
  for (std::uint64_t s = 0; s < state_count(); ++s) {
    const RcConfig config = RcConfig::from_mask(m_, s);
    std::uint32_t mask = 0;
    for (int e = 0; e < m_; ++e)
      if (graph_is_cut_edge(graph, config, e)) mask |= 1u << e;
    cut_mask_[s] = mask;
  }
}

double TransitionMatrix::prob(std::uint64_t from, std::uint64_t to) const {
  const std::uint64_t diff = from ^ to;
  const double inv_m = 1.0 / m_;
  if (diff == 0) {
    double stay = 0.0;
    for (int e = 0; e < m_; ++e) {
      const double r = open_prob(params_, cut(from, e));
      stay += ((from >> e) & 1) ? r : 1.0 - r;
    }
    return stay * inv_m;
  }
  if (std::popcount(diff) != 1) return 0.0;
  const int e = std::countr_zero(diff);
  const double r = open_prob(params_, cut(from, e));
  return (((to >> e) & 1) ? r : 1.0 - r) * inv_m;
}

std::vector<double> TransitionMatrix::apply(const std::vector<double>& v) const {
  std::vector<double> out(v.size(), 0.0);
  const double inv_m = 1.0 / m_;
  for (std::uint64_t s = 0; s < state_count(); ++s) {
    const double mass = v[s];
    if (mass == 0.0) continue;
    for (int e = 0; e < m_; ++e) {
      const double r = open_prob(params_, cut(s, e));
      out[s | (1ULL << e)] += mass * r * inv_m;
      out[s & ~(1ULL << e)] += mass * (1.0 - r) * inv_m;
    }
  }
  return out;
}

double TransitionMatrix::max_detailed_balance_violation(
    const ExactMeasure& mu) const {
  if (mu.free_edge_count() != m_)
    throw std::invalid_argument("measure/matrix size mismatch");
  double worst = 0.0;
  const double inv_m = 1.0 / m_;
  for (std::uint64_t s = 0; s < state_count(); ++s)
    for (int e = 0; e < m_; ++e) {
      if ((s >> e) & 1) continue;
      const std::uint64_t t = s | (1ULL << e);
      const double r = open_prob(params_, cut(s, e));
      const double lhs = mu.probability_by_index(s) * r * inv_m;
      const double rhs = mu.probability_by_index(t) * (1.0 - r) * inv_m;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

double TransitionMatrix::stationarity_residual(const ExactMeasure& mu) const {
  std::vector<double> v(state_count());
  for (std::uint64_t s = 0; s < state_count(); ++s)
    v[s] = mu.probability_by_index(s);
  const std::vector<double> w = apply(v);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < state_count(); ++s)
    worst = std::max(worst, std::abs(w[s] - v[s]));
  return worst;
}

std::vector<double> TransitionMatrix::stationary_power_iteration(
    double tol, int max_iter) const {
  std::vector<double> v(state_count(), 1.0 / state_count());
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> w = apply(v);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) diff += std::abs(w[i] - v[i]);
    v = std::move(w);
    if (diff <= tol) break;
  }
  return v;
}

TvCurve tv_curve(const TransitionMatrix& matrix, const RcConfig& start,
                 const ExactMeasure& mu, int t_max) {
  std::uint64_t s0 = 0;
  for (int e = 0; e < matrix.edge_count(); ++e)
    if (start.open(e)) s0 |= 1ULL << e;

  std::vector<double> v(matrix.state_count(), 0.0);
  v[s0] = 1.0;

  TvCurve curve;
  for (int t = 0; t <= t_max; ++t) {
    double d = 0.0;
    for (std::uint64_t s = 0; s < matrix.state_count(); ++s)
      d += std::abs(v[s] - mu.probability_by_index(s));
    d *= 0.5;
    curve.distance.push_back(d);
    if (curve.mixing_step < 0 && d <= 0.25) curve.mixing_step = t;
    if (t < t_max) v = matrix.apply(v);
  }
  return curve;
}

}  // namespace rcdyn
