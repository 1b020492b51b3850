#include "rcdyn/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rcdyn/graph.hpp"

namespace rcdyn {

Chain::Chain(const Lattice& lat, const BoundaryCondition& bc, RcParams params,
             RcConfig init)
    : lat_(lat), params_(params), query_(lat, bc), config_(std::move(init)) {
  if (config_.edge_count() != lat.edge_count())
    throw std::invalid_argument("configuration size mismatch");
}

void Chain::step(const UpdateDraw& draw) {
  const bool cut = query_.is_cut(config_, draw.edge);
  config_.set(draw.edge, draw.u < open_prob(params_, cut));
  ++time_;
}

void coupled_step(std::vector<Chain*>& chains, const UpdateDraw& draw) {
  for (Chain* chain : chains) chain->step(draw);
}

namespace {

// heat-bath chain on a generic wired graph, used for induced sub-systems
// and the dual box
class GraphChain {
 public:
  GraphChain(const WiredGraph& g, RcParams params, RcConfig init)
      : g_(g), params_(params), config_(std::move(init)) {
    adj_off_.assign(g.vertex_count + 1, 0);
    for (const Edge& e : g.edges) {
      ++adj_off_[e.u + 1];
      ++adj_off_[e.v + 1];
    }
    for (int v = 0; v < g.vertex_count; ++v) adj_off_[v + 1] += adj_off_[v];
    adj_.resize(adj_off_.back());
    std::vector<int> cursor(adj_off_.begin(), adj_off_.end() - 1);
    for (int e = 0; e < g.edge_count(); ++e) {
      adj_[cursor[g.edges[e].u]++] = {e, g.edges[e].v};
      adj_[cursor[g.edges[e].v]++] = {e, g.edges[e].u};
    }
    block_of_.assign(g.vertex_count, -1);
    for (std::size_t b = 0; b < g.wiring.size(); ++b)
      for (int v : g.wiring[b]) block_of_[v] = static_cast<int>(b);
    visit_epoch_.assign(g.vertex_count, 0);
    block_epoch_.assign(g.wiring.size(), 0);
  }

  const RcConfig& config() const { return config_; }

  bool is_cut(int e) {
    const int u = g_.edges[e].u, v = g_.edges[e].v;
    if (u == v) return false;
    ++epoch_;
    stack_.clear();
    auto visit = [&](int w) {
      if (visit_epoch_[w] == epoch_) return;
      visit_epoch_[w] = epoch_;
      stack_.push_back(w);
    };
    visit(u);
    while (!stack_.empty()) {
      const int w = stack_.back();
      stack_.pop_back();
      if (w == v) return false;
      for (int i = adj_off_[w]; i < adj_off_[w + 1]; ++i) {
        if (adj_[i].edge == e || !config_.open(adj_[i].edge)) continue;
        if (adj_[i].neighbor == v) return false;
        visit(adj_[i].neighbor);
      }
      const int blk = block_of_[w];
      if (blk >= 0 && block_epoch_[blk] != epoch_) {
        block_epoch_[blk] = epoch_;
        for (int member : g_.wiring[blk]) {
          if (member == v) return false;
          visit(member);
        }
      }
    }
    return true;
  }

  void step(const UpdateDraw& draw) {
    const bool cut = is_cut(draw.edge);
    config_.set(draw.edge, draw.u < open_prob(params_, cut));
  }

 private:
  const WiredGraph& g_;
  RcParams params_;
  RcConfig config_;
  std::vector<int> adj_off_;
  struct Inc {
    int edge;
    int neighbor;
  };
  std::vector<Inc> adj_;
  std::vector<int> block_of_;
  std::vector<std::uint32_t> visit_epoch_;
  std::vector<std::uint32_t> block_epoch_;
  std::vector<int> stack_;
  std::uint32_t epoch_ = 0;
};

std::uint64_t default_cap(int m) {
  return static_cast<std::uint64_t>(100.0 * m * std::log(m)) + 1;
}

}  // namespace

CouplingResult coupling_time(const Lattice& lat, const BoundaryCondition& bc,
                             RcParams params, std::uint64_t seed,
                             double threshold, int replicas,
                             std::uint64_t cap) {
  const int m = lat.edge_count();
  if (cap == 0) cap = default_cap(m);

  CouplingResult result;
  result.cap = cap;
  result.threshold = threshold;
  const CounterRng master(seed);

  for (int rep = 0; rep < replicas; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const CounterRng rng = master.derive(rep);
    Chain top(lat, bc, params, RcConfig::all_open(m));
    Chain bottom(lat, bc, params, RcConfig(m));
    int hamming = m;
    std::uint64_t t = 0;
    while (hamming > 0 && t < cap) {
      const UpdateDraw draw = draw_at(rng, t, m);
      const bool before =
          top.config().open(draw.edge) != bottom.config().open(draw.edge);
      top.step(draw);
      bottom.step(draw);
      const bool after =
          top.config().open(draw.edge) != bottom.config().open(draw.edge);
      hamming += static_cast<int>(after) - static_cast<int>(before);
      ++t;
    }
    const bool was_capped = hamming > 0;
    result.steps.push_back(t);
    result.capped.push_back(was_capped);
    result.any_capped |= was_capped;
    result.wall_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count());
  }

  std::vector<std::uint64_t> sorted = result.steps;
  std::sort(sorted.begin(), sorted.end());
  result.median = sorted[sorted.size() / 2];
  const std::size_t qidx = std::min(
      sorted.size() - 1,
      static_cast<std::size_t>(std::ceil((1.0 - threshold) * sorted.size())) -
          1);
  result.quantile = sorted[qidx];
  return result;
}

std::optional<RcConfig> cftp_sample(const Lattice& lat,
                                    const BoundaryCondition& bc,
                                    RcParams params, std::uint64_t seed,
                                    std::uint64_t max_events) {
  return cftp_sample_graph(as_graph(lat, bc), params, seed, max_events);
}

std::optional<RcConfig> cftp_sample_graph(const WiredGraph& graph,
                                          RcParams params, std::uint64_t seed,
                                          std::uint64_t max_events) {
  const int m = graph.edge_count();
  const CounterRng rng(seed);
  for (std::uint64_t horizon = std::max(64, m); horizon <= max_events;
       horizon *= 2) {
    GraphChain top(graph, params, RcConfig::all_open(m));
    GraphChain bottom(graph, params, RcConfig(m));
    // the step at time -t uses the draw indexed by t, so a longer horizon
    // replays the same suffix
    for (std::uint64_t t = horizon; t >= 1; --t) {
      const UpdateDraw draw = draw_at(rng, t, m);
      top.step(draw);
      bottom.step(draw);
    }
    if (top.config() == bottom.config()) return top.config();
  }
  return std::nullopt;
}

std::optional<PairedSample> cftp_sample_graph_pair(const WiredGraph& hi_graph,
                                                   const WiredGraph& lo_graph,
                                                   RcParams params,
                                                   std::uint64_t seed,
                                                   std::uint64_t max_events) {
  if (hi_graph.edge_count() != lo_graph.edge_count())
    throw std::invalid_argument("paired CFTP needs matching edge sets");
  const int m = hi_graph.edge_count();
  const CounterRng rng(seed);
  for (std::uint64_t horizon = std::max(64, m); horizon <= max_events;
       horizon *= 2) {
    GraphChain hi_top(hi_graph, params, RcConfig::all_open(m));
    GraphChain hi_bottom(hi_graph, params, RcConfig(m));
    GraphChain lo_top(lo_graph, params, RcConfig::all_open(m));
    GraphChain lo_bottom(lo_graph, params, RcConfig(m));
    for (std::uint64_t t = horizon; t >= 1; --t) {
      const UpdateDraw draw = draw_at(rng, t, m);
      hi_top.step(draw);
      hi_bottom.step(draw);
      lo_top.step(draw);
      lo_bottom.step(draw);
    }
    if (hi_top.config() == hi_bottom.config() &&
        lo_top.config() == lo_bottom.config())
      return PairedSample{hi_top.config(), lo_top.config()};
  }
  return std::nullopt;
}

std::vector<TimedDraw> continuous_schedule(const Lattice& lat, double horizon,
                                           std::uint64_t seed) {
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  const int m = lat.edge_count();
  const CounterRng rng(seed);
  std::vector<TimedDraw> events;
  double t = 0.0;
  for (std::uint64_t i = 0;; ++i) {
    // superposition of m rate-1 clocks: exponential(m) spacings with a
    // uniform edge mark
    const double u = rng.uniform(i, 2);
    t += -std::log1p(-u) / m;
    if (t > horizon) break;
    events.push_back({t, draw_at(rng, i, m)});
  }
  return events;
}

}  // namespace rcdyn
