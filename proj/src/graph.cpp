#include "msst/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "msst/errors.hpp"

namespace msst {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Union-find without rollback; only used for one-shot checks.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(idx(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[idx(x)] != x) {
      parent_[idx(x)] = parent_[idx(parent_[idx(x)])];
      x = parent_[idx(x)];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[idx(a)] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(idx(std::max(n, 0))) {
  if (n < 0) throw ValidationError("negative vertex count");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (!valid_vertex(e.u) || !valid_vertex(e.v))
      throw ValidationError("edge " + std::to_string(i) + " has an endpoint out of range");
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw ValidationError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeId e = static_cast<EdgeId>(i);
    adj_[idx(edges_[i].u)].push_back({edges_[i].v, e});
    adj_[idx(edges_[i].v)].push_back({edges_[i].u, e});
  }
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (!valid_vertex(a) || !valid_vertex(b)) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  for (const Incidence& inc : adj_[idx(a)])
    if (inc.to == b) return inc.edge;
  return std::nullopt;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<bool> seen(idx(n_), false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : adj_[idx(v)]) {
      if (seen[idx(inc.to)]) continue;
      seen[idx(inc.to)] = true;
      ++count;
      stack.push_back(inc.to);
    }
  }
  return count == n_;
}

TreeCheck is_spanning_tree(const Graph& g, std::span<const EdgeId> edge_set) {
  const int n = g.num_vertices();
  std::vector<bool> used(idx(g.num_edges()), false);
  std::vector<bool> covered(idx(n), false);
  for (const EdgeId e : edge_set) {
    if (e < 0 || e >= g.num_edges()) return {false, "edge index " + std::to_string(e) + " out of range"};
    if (used[idx(e)]) return {false, "duplicate edge index " + std::to_string(e)};
    used[idx(e)] = true;
    covered[idx(g.edge(e).u)] = true;
    covered[idx(g.edge(e).v)] = true;
  }
  if (n > 1) {
    for (Vertex v = 0; v < n; ++v)
      if (!covered[idx(v)]) return {false, "vertex " + std::to_string(v) + " uncovered"};
  }
  DisjointSets dsu(n);
  for (const EdgeId e : edge_set)
    if (!dsu.unite(g.edge(e).u, g.edge(e).v)) return {false, "cycle closed by edge " + std::to_string(e)};
  if (static_cast<int>(edge_set.size()) != n - 1)
    return {false, "disconnected: " + std::to_string(edge_set.size()) + " edges for " + std::to_string(n) +
                       " vertices"};
  return {true, {}};
}

SpanningTree SpanningTree::from_edges(const Graph& g, std::span<const EdgeId> edge_set) {
  if (TreeCheck check = is_spanning_tree(g, edge_set); !check)
    throw ValidationError("invalid spanning tree: " + check.reason);

  const int n = g.num_vertices();
  SpanningTree t;
  t.edges_.assign(edge_set.begin(), edge_set.end());
  std::sort(t.edges_.begin(), t.edges_.end());
  t.in_tree_.assign(idx(g.num_edges()), false);
  for (const EdgeId e : t.edges_) t.in_tree_[idx(e)] = true;

  t.parent_.assign(idx(n), -1);
  t.parent_edge_.assign(idx(n), -1);
  t.depth_.assign(idx(n), -1);
  if (n == 0) return t;
  std::deque<Vertex> queue{0};
  t.depth_[0] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const Incidence& inc : g.neighbors(v)) {
      if (!t.in_tree_[idx(inc.edge)] || t.depth_[idx(inc.to)] >= 0) continue;
      t.depth_[idx(inc.to)] = t.depth_[idx(v)] + 1;
      t.parent_[idx(inc.to)] = v;
      t.parent_edge_[idx(inc.to)] = inc.edge;
      queue.push_back(inc.to);
    }
  }
  return t;
}

SpanningTree SpanningTree::from_pairs(const Graph& g, std::span<const Edge> pairs) {
  std::vector<EdgeId> ids;
  ids.reserve(pairs.size());
  for (const Edge& p : pairs) {
    const auto e = g.find_edge(p.u, p.v);
    if (!e) throw ValidationError("tree edge " + std::to_string(p.u) + "-" + std::to_string(p.v) + " not in graph");
    ids.push_back(*e);
  }
  return from_edges(g, ids);
}

void SpanningTree::check_vertex(Vertex v) const {
  if (v < 0 || v >= num_vertices()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

int SpanningTree::distance(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  int d = 0;
  while (depth(a) > depth(b)) a = parent(a), ++d;
  while (depth(b) > depth(a)) b = parent(b), ++d;
  while (a != b) a = parent(a), b = parent(b), d += 2;
  return d;
}

std::vector<Vertex> SpanningTree::path(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  std::vector<Vertex> front{a};
  std::vector<Vertex> back{b};
  while (depth(a) > depth(b)) front.push_back(a = parent(a));
  while (depth(b) > depth(a)) back.push_back(b = parent(b));
  while (a != b) {
    front.push_back(a = parent(a));
    back.push_back(b = parent(b));
  }
  back.pop_back();  // the meeting vertex is already in front
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

std::vector<EdgeId> SpanningTree::path_edges(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  std::vector<EdgeId> front;
  std::vector<EdgeId> back;
  while (depth(a) > depth(b)) front.push_back(parent_edge(a)), a = parent(a);
  while (depth(b) > depth(a)) back.push_back(parent_edge(b)), b = parent(b);
  while (a != b) {
    front.push_back(parent_edge(a)), a = parent(a);
    back.push_back(parent_edge(b)), b = parent(b);
  }
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

std::vector<Edge> SpanningTree::edge_pairs(const Graph& host) const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const EdgeId e : edges_) out.push_back(host.edge(e));
  std::sort(out.begin(), out.end());
  return out;
}

int tree_distance(const SpanningTree& t, Vertex u, Vertex v) { return t.distance(u, v); }

namespace {

void check_host(const Graph& g, const SpanningTree& t) {
  if (t.num_vertices() != g.num_vertices() || t.host_edge_count() != g.num_edges())
    throw ValidationError("spanning tree does not belong to this graph");
}

}  // namespace

StretchCertificate stretch(const Graph& g, const SpanningTree& t) {
  check_host(g, t);
  StretchCertificate cert;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const int d = t.contains(e) ? 1 : t.distance(g.edge(e).u, g.edge(e).v);
    if (d > cert.stretch) {
      cert.stretch = d;
      cert.witness_edge = e;
    }
  }
  if (cert.witness_edge) cert.witness_path = t.path(g.edge(*cert.witness_edge).u, g.edge(*cert.witness_edge).v);
  return cert;
}

Cycle fundamental_cycle(const Graph& g, const SpanningTree& t, EdgeId e) {
  check_host(g, t);
  if (e < 0 || e >= g.num_edges()) throw std::out_of_range("edge " + std::to_string(e) + " out of range");
  if (t.contains(e)) throw DomainError("edge " + std::to_string(e) + " is a tree edge");
  const Edge& uv = g.edge(e);
  Cycle c;
  c.vertices = t.path(uv.u, uv.v);
  c.edges = t.path_edges(uv.u, uv.v);
  c.edges.push_back(e);
  return c;
}

std::vector<EdgeId> fundamental_cut(const Graph& g, const SpanningTree& t, EdgeId tree_edge) {
  check_host(g, t);
  if (tree_edge < 0 || tree_edge >= g.num_edges() || !t.contains(tree_edge))
    throw DomainError("edge " + std::to_string(tree_edge) + " is not a tree edge");
  const Edge& ab = g.edge(tree_edge);
  const Vertex child = t.parent_edge(ab.u) == tree_edge ? ab.u : ab.v;
  // A vertex is on the child side iff the child is one of its ancestors.
  std::vector<int> side(idx(g.num_vertices()), -1);
  side[idx(child)] = 1;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::vector<Vertex> chain;
    Vertex w = v;
    while (side[idx(w)] < 0 && t.parent(w) >= 0) chain.push_back(w), w = t.parent(w);
    const int s = side[idx(w)] < 0 ? 0 : side[idx(w)];
    side[idx(w)] = s;
    for (const Vertex c : chain) side[idx(c)] = s;
  }
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (side[idx(g.edge(e).u)] != side[idx(g.edge(e).v)]) cut.push_back(e);
  return cut;
}

int congestion(const Graph& g, const SpanningTree& t) {
  check_host(g, t);
  // Each graph edge loads every tree edge on its tree path.
  std::vector<int> load(idx(g.num_edges()), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (const EdgeId f : t.path_edges(g.edge(e).u, g.edge(e).v)) ++load[idx(f)];
  int best = 0;
  for (const EdgeId f : t.edges()) best = std::max(best, load[idx(f)]);
  return best;
}

std::optional<int> girth(const Graph& g) {
  const int n = g.num_vertices();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(idx(n));
  std::vector<EdgeId> via(idx(n));
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[idx(s)] = 0;
    via[idx(s)] = -1;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (2 * dist[idx(v)] + 1 >= best) break;
      for (const Incidence& inc : g.neighbors(v)) {
        if (inc.edge == via[idx(v)]) continue;
        if (dist[idx(inc.to)] < 0) {
          dist[idx(inc.to)] = dist[idx(v)] + 1;
          via[idx(inc.to)] = inc.edge;
          queue.push_back(inc.to);
        } else {
          best = std::min(best, dist[idx(v)] + dist[idx(inc.to)] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

BlockDecomposition blocks(const Graph& g) {
  if (!g.is_connected()) throw ValidationError("blocks: graph is disconnected");
  const int n = g.num_vertices();
  BlockDecomposition out;
  if (n == 0) return out;
  if (n == 1) {
    out.blocks.push_back({0});
    out.block_edges.emplace_back();
    return out;
  }

  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<int> disc(idx(n), -1);
  std::vector<int> low(idx(n), 0);
  std::vector<bool> is_cut(idx(n), false);
  std::vector<EdgeId> edge_stack;
  std::vector<Frame> frames{{0, -1, 0}};
  int clock = 0;
  int root_children = 0;
  disc[0] = low[0] = clock++;

  while (!frames.empty()) {
    Frame& f = frames.back();
    const auto nbrs = g.neighbors(f.v);
    if (f.next < nbrs.size()) {
      const Incidence inc = nbrs[f.next++];
      if (inc.edge == f.via) continue;
      if (disc[idx(inc.to)] < 0) {
        edge_stack.push_back(inc.edge);
        disc[idx(inc.to)] = low[idx(inc.to)] = clock++;
        frames.push_back({inc.to, inc.edge, 0});
      } else if (disc[idx(inc.to)] < disc[idx(f.v)]) {
        edge_stack.push_back(inc.edge);
        low[idx(f.v)] = std::min(low[idx(f.v)], disc[idx(inc.to)]);
      }
      continue;
    }
    const Frame done = f;
    frames.pop_back();
    if (frames.empty()) break;
    const Vertex p = frames.back().v;
    low[idx(p)] = std::min(low[idx(p)], low[idx(done.v)]);
    if (low[idx(done.v)] < disc[idx(p)]) continue;

    if (p == 0) ++root_children;
    else is_cut[idx(p)] = true;
    std::vector<EdgeId> block_edges;
    std::vector<Vertex> block_vertices;
    while (true) {
      const EdgeId e = edge_stack.back();
      edge_stack.pop_back();
      block_edges.push_back(e);
      block_vertices.push_back(g.edge(e).u);
      block_vertices.push_back(g.edge(e).v);
      if (e == done.via) break;
    }
    std::sort(block_edges.begin(), block_edges.end());
    std::sort(block_vertices.begin(), block_vertices.end());
    block_vertices.erase(std::unique(block_vertices.begin(), block_vertices.end()), block_vertices.end());
    out.blocks.push_back(std::move(block_vertices));
    out.block_edges.push_back(std::move(block_edges));
  }
  if (root_children > 1) is_cut[0] = true;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[idx(v)]) out.cut_vertices.push_back(v);
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(idx(g.num_vertices()), -1);
  Subgraph sub;
  sub.to_parent.assign(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!g.valid_vertex(vertices[i])) throw std::out_of_range("induced_subgraph: vertex out of range");
    local[idx(vertices[i])] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (local[idx(e.u)] >= 0 && local[idx(e.v)] >= 0) edges.push_back({local[idx(e.u)], local[idx(e.v)]});
  sub.graph = Graph(static_cast<int>(vertices.size()), std::move(edges));
  return sub;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<int>(perm.size()) != g.num_vertices()) throw ValidationError("relabel: permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) edges.push_back({perm[idx(e.u)], perm[idx(e.v)]});
  return Graph(g.num_vertices(), std::move(edges));
}

}  // namespace msst
