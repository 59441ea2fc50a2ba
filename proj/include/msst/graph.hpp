#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msst {

using Vertex = int;
using EdgeId = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  auto operator<=>(const Edge&) const = default;
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges keep the order they were given in (each pair normalized to u < v);
/// that order is the canonical edge index order used by every algorithm.
/// Self-loops and duplicate edges are rejected. Connectivity is not required.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Incidence> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }
  bool is_connected() const;
  bool valid_vertex(Vertex v) const { return v >= 0 && v < n_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

/// Result of checking an edge subset against the spanning-tree invariants.
struct TreeCheck {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
};

TreeCheck is_spanning_tree(const Graph& g, std::span<const EdgeId> edge_set);

/// Spanning tree of a host graph, rooted at vertex 0.
///
/// Holds the tree edge set plus parent/depth arrays so distance queries do not
/// need the host graph. Operations that need the host take it separately and
/// check that it matches (vertex and edge counts).
class SpanningTree {
 public:
  /// Throws ValidationError naming the violated invariant.
  static SpanningTree from_edges(const Graph& g, std::span<const EdgeId> edge_set);
  /// Same, with tree edges given as vertex pairs that must exist in g.
  static SpanningTree from_pairs(const Graph& g, std::span<const Edge> pairs);

  int num_vertices() const { return static_cast<int>(parent_.size()); }
  int host_edge_count() const { return static_cast<int>(in_tree_.size()); }
  std::span<const EdgeId> edges() const { return edges_; }
  bool contains(EdgeId e) const { return in_tree_[static_cast<std::size_t>(e)]; }

  Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
  EdgeId parent_edge(Vertex v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
  int depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }

  int distance(Vertex a, Vertex b) const;
  /// Vertices of the unique a-b path, a first.
  std::vector<Vertex> path(Vertex a, Vertex b) const;
  /// Edge ids along the unique a-b path, in walk order from a.
  std::vector<EdgeId> path_edges(Vertex a, Vertex b) const;

  /// Tree edges as normalized vertex pairs, sorted.
  std::vector<Edge> edge_pairs(const Graph& host) const;

  bool operator==(const SpanningTree& o) const { return edges_ == o.edges_ && in_tree_ == o.in_tree_; }

 private:
  SpanningTree() = default;
  void check_vertex(Vertex v) const;

  std::vector<EdgeId> edges_;  // sorted
  std::vector<bool> in_tree_;
  std::vector<Vertex> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<int> depth_;
};

int tree_distance(const SpanningTree& t, Vertex u, Vertex v);

struct StretchCertificate {
  int stretch = 0;
  std::optional<EdgeId> witness_edge;  // empty only for edgeless graphs
  std::vector<Vertex> witness_path;    // tree path between the witness endpoints
};

/// max over graph edges uv of the tree distance d_T(u,v).
StretchCertificate stretch(const Graph& g, const SpanningTree& t);

struct Cycle {
  std::vector<Vertex> vertices;  // closed implicitly from back() to front()
  std::vector<EdgeId> edges;     // same length as vertices
  int length() const { return static_cast<int>(edges.size()); }
};

/// Cycle formed by cotree edge e and the tree path between its endpoints.
Cycle fundamental_cycle(const Graph& g, const SpanningTree& t, EdgeId e);

/// Graph edges crossing the two components of T - e for tree edge e.
std::vector<EdgeId> fundamental_cut(const Graph& g, const SpanningTree& t, EdgeId tree_edge);

/// Max over tree edges of the fundamental cut size.
int congestion(const Graph& g, const SpanningTree& t);

/// Shortest cycle length, or nullopt for forests.
std::optional<int> girth(const Graph& g);

struct BlockDecomposition {
  std::vector<std::vector<Vertex>> blocks;       // sorted vertex sets
  std::vector<std::vector<EdgeId>> block_edges;  // parallel to blocks
  std::vector<Vertex> cut_vertices;              // sorted
};

BlockDecomposition blocks(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local vertex -> host vertex
};

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Graph with vertex v renamed to perm[v]; edge order preserved.
Graph relabel(const Graph& g, std::span<const Vertex> perm);

}  // namespace msst
