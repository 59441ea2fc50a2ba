#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include <boost/multiprecision/cpp_int.hpp>

#include "msst/graph.hpp"

namespace msst {

inline constexpr std::uint64_t kDefaultTreeCap = 10'000'000;

using TreeVisitor = std::function<void(std::span<const EdgeId>)>;

/// Calls `visit` once per spanning tree (sorted edge ids), in lexicographic
/// order of the edge id sequences. Returns the number of trees.
/// Throws ValidationError if g is disconnected, ResourceError past `cap`.
std::uint64_t enumerate_spanning_trees(const Graph& g, const TreeVisitor& visit, std::uint64_t cap = kDefaultTreeCap);

/// Matrix-tree theorem: any cofactor of the Laplacian, exact.
boost::multiprecision::cpp_int count_spanning_trees_kirchhoff(const Graph& g);

/// girth(G) - 1. Throws DomainError for forests.
int lower_bound_girth(const Graph& g);

struct SolveOptions {
  bool use_pruning = true;
  std::uint64_t max_trees = kDefaultTreeCap;
  int threads = 1;
};

struct ExactResult {
  int sigma = 0;
  SpanningTree optimal_tree;
  std::uint64_t trees_enumerated = 0;  // complete trees reached
  int lower_bound_used = 0;
  bool pruned = false;                 // part of the tree space was skipped
};

/// Minimum stretch over all spanning trees. The returned tree is the
/// lexicographically smallest optimal edge set. Output does not depend on
/// `threads`.
ExactResult sigma_exact(const Graph& g, const SolveOptions& opts = {});

}  // namespace msst
