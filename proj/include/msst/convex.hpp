#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "msst/graph.hpp"

namespace msst::convex {

/// Sorted set of Y indices (0..|Y|-1).
using YSet = std::vector<int>;

struct LaminarCheck {
  bool laminar = true;
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;

  explicit operator bool() const { return laminar; }
};

/// True iff every two members are nested or disjoint. Members must be sorted.
LaminarCheck check_laminar(std::span<const YSet> family);

/// Bipartite graph given by a host tree tau on Y and neighbor sets Y_i = N(x_i).
///
/// Vertex numbering of graph(): x_i -> i, y -> num_x() + y. Edges are listed
/// x-major, each neighbor set in increasing Y order.
class ConvexInstance {
 public:
  const Graph& tau() const { return tau_; }
  const std::vector<YSet>& sigma() const { return sigma_; }
  const YSet& set(std::size_t i) const { return sigma_[i]; }
  const Graph& graph() const { return graph_; }

  int num_x() const { return static_cast<int>(sigma_.size()); }
  int num_y() const { return tau_.num_vertices(); }
  Vertex x_vertex(std::size_t i) const { return static_cast<Vertex>(i); }
  Vertex y_vertex(int y) const { return num_x() + y; }

 private:
  friend ConvexInstance validate_instance(Graph tau, std::vector<YSet> sigma);
  ConvexInstance() = default;

  Graph tau_;
  std::vector<YSet> sigma_;
  Graph graph_;
};

/// Checks the subpath condition for each Y_i and the laminar property for each
/// inclusion-maximal Y_0. Sets are normalized (sorted, deduplicated).
/// Throws InstanceError naming the offending sets.
ConvexInstance validate_instance(Graph tau, std::vector<YSet> sigma);

struct RootChoice {
  std::size_t set = 0;  // index of Y_1 in sigma
  int leaf = 0;         // the tau-leaf in Y_1 that roots all path orders
};

/// Smallest-index set that is inclusion-maximal and contains a leaf of tau.
RootChoice select_root(const ConvexInstance& inst);

struct DiscardedSet {
  std::size_t set;
  std::size_t cover;                       // Y_i with Y_i ∩ Y_q nonempty
  std::optional<std::size_t> successor;    // Y_j with Y_q ⊆ Y_i ∪ Y_j; empty when Y_q ⊆ Y_i alone
};

struct LevelStructure {
  RootChoice root;
  std::vector<std::vector<std::size_t>> levels;              // L_1..L_h
  std::vector<std::optional<std::size_t>> predecessor;       // per sigma index
  std::vector<DiscardedSet> discarded;                       // sorted by set index

  int height() const { return static_cast<int>(levels.size()); }
  /// Successors of set i, in admission order.
  std::vector<std::size_t> successors(std::size_t i) const;
};

LevelStructure level_sets(const ConvexInstance& inst, const RootChoice& root);
LevelStructure level_sets(const ConvexInstance& inst);

/// For each Y_i, its vertices sorted by tau-distance from `root_leaf`
/// (ties by index). "Last vertex" below always means last in this order.
std::vector<std::vector<int>> path_order(const ConvexInstance& inst, int root_leaf);

/// Stars over the level structure plus pendant edges for discarded sets.
SpanningTree construct_tree(const ConvexInstance& inst, const LevelStructure& levels);
/// Uses select_root; if that tree has stretch above 3, retries the other
/// maximal leaf-containing roots in index order and keeps the first reaching 3.
SpanningTree construct_tree(const ConvexInstance& inst);

}  // namespace msst::convex
