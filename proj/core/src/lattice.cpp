#include "rcdyn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcdyn {

Lattice::Lattice(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("lattice side must be >= 2");

  edges_.reserve(2 * n * (n - 1));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n - 1; ++x)
      edges_.push_back({vertex_id(x, y), vertex_id(x + 1, y)});
  for (int y = 0; y < n - 1; ++y)
    for (int x = 0; x < n; ++x)
      edges_.push_back({vertex_id(x, y), vertex_id(x, y + 1)});

  is_boundary_.assign(n * n, 0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (x == 0 || x == n - 1 || y == 0 || y == n - 1) {
        is_boundary_[vertex_id(x, y)] = 1;
        boundary_.push_back(vertex_id(x, y));
      }

  for (int x = 0; x < n; ++x) sides_[0].push_back(vertex_id(x, n - 1));  // top
  for (int y = 0; y < n; ++y) sides_[1].push_back(vertex_id(n - 1, y));  // right
  for (int x = 0; x < n; ++x) sides_[2].push_back(vertex_id(x, 0));      // bottom
  for (int y = 0; y < n; ++y) sides_[3].push_back(vertex_id(0, y));      // left

  // CSR adjacency
  std::vector<int> deg(n * n, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  inc_off_.assign(n * n + 1, 0);
  for (int v = 0; v < n * n; ++v) inc_off_[v + 1] = inc_off_[v] + deg[v];
  inc_.resize(inc_off_.back());
  std::vector<int> cursor(inc_off_.begin(), inc_off_.end() - 1);
  for (int e = 0; e < edge_count(); ++e) {
    inc_[cursor[edges_[e].u]++] = {e, edges_[e].v};
    inc_[cursor[edges_[e].v]++] = {e, edges_[e].u};
  }
}

double Lattice::edge_vertex_distance(int e, int v) const {
  auto [vx, vy] = vertex_xy(v);
  double best = 1e300;
  for (int end : {edges_[e].u, edges_[e].v}) {
    auto [ex, ey] = vertex_xy(end);
    double dx = vx - ex, dy = vy - ey;
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  }
  return best;
}

Lattice build_lattice(int n) { return Lattice(n); }

BoxRegion box_region(const Lattice& lat, int e, int r) {
  const int n = lat.side();
  if (e < 0 || e >= lat.edge_count()) throw std::invalid_argument("bad edge");
  if (r < 1) throw std::invalid_argument("radius must be >= 1");

  const Edge ed = lat.edge(e);
  auto [x1, y1] = lat.vertex_xy(ed.u);
  auto [x2, y2] = lat.vertex_xy(ed.v);
  const int xlo = std::max(0, std::min(x1, x2) - r);
  const int xhi = std::min(n - 1, std::max(x1, x2) + r);
  const int ylo = std::max(0, std::min(y1, y2) - r);
  const int yhi = std::min(n - 1, std::max(y1, y2) + r);

  BoxRegion box;
  box.center_edge = e;
  box.radius = r;
  box.in_box.assign(n * n, 0);
  for (int y = ylo; y <= yhi; ++y)
    for (int x = xlo; x <= xhi; ++x) {
      box.in_box[lat.vertex_id(x, y)] = 1;
      box.vertices.push_back(lat.vertex_id(x, y));
    }
  std::sort(box.vertices.begin(), box.vertices.end());

  box.edge_in_box.assign(lat.edge_count(), 0);
  for (int i = 0; i < lat.edge_count(); ++i) {
    const Edge& f = lat.edges()[i];
    if (box.in_box[f.u] && box.in_box[f.v]) {
      box.edge_in_box[i] = 1;
      box.inner_edges.push_back(i);
    } else {
      box.outer_edges.push_back(i);
    }
  }

  for (int v : box.vertices) {
    bool adj_outside = false;
    for (const auto& inc : lat.incident(v))
      if (!box.in_box[inc.neighbor]) adj_outside = true;
    if (adj_outside) box.inner_boundary.push_back(v);
  }
  return box;
}

DualGraph build_dual(const Lattice& lat) {
  const int n = lat.side();
  DualGraph dual;
  dual.face_count = (n - 1) * (n - 1);
  dual.outer_vertex = dual.face_count;
  dual.edges.resize(lat.edge_count());

  auto face = [&](int fx, int fy) -> int {
    if (fx < 0 || fx > n - 2 || fy < 0 || fy > n - 2) return dual.outer_vertex;
    return fy * (n - 1) + fx;
  };

  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n - 1; ++x)
      dual.edges[lat.horizontal_edge(x, y)] = {face(x, y - 1), face(x, y)};
  for (int y = 0; y < n - 1; ++y)
    for (int x = 0; x < n; ++x)
      dual.edges[lat.vertical_edge(x, y)] = {face(x - 1, y), face(x, y)};

  return dual;
}

}  // namespace rcdyn
