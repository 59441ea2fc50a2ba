#pragma once

#include <optional>
#include <span>
#include <vector>

#include "msst/families.hpp"
#include "msst/graph.hpp"

namespace msst {

struct SigmaFormula {
  int sigma = 0;
  bool degenerate = false;  // the graph is a tree (or a single vertex)
};

/// Closed-form tree-stretch of a family instance. Throws DomainError for
/// families without one (Cube).
SigmaFormula sigma_formula(const FamilySpec& spec);

/// All edges at `center`. Throws DomainError if center is not universal.
SpanningTree star_tree(const Graph& g, Vertex center);

/// x joined to every vertex outside x_side, y joined to x_side minus x.
/// On K_{m,n} with x_side = X this is the double star of x and y.
SpanningTree double_star_tree(const Graph& g, std::span<const Vertex> x_side, Vertex x, Vertex y);

/// Star at a singleton part, otherwise the double star over the smallest part
/// against the rest. Throws ParameterError for fewer than three parts.
SpanningTree multipartite_tree(const Graph& g, const std::vector<std::vector<Vertex>>& parts);

struct SplitClass {
  int sigma = 0;                            // 2 or 3
  std::optional<Vertex> witness;            // smallest valid x_0 when sigma = 2
  std::vector<std::pair<Vertex, Vertex>> refutations;  // per x_0: a non-pendant y outside N(x_0)
};

/// Throws ValidationError for an invalid partition, DomainError for trees.
SplitClass classify_split(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

/// Star from x_0 over N(x_0), each remaining y joined to its smallest neighbor;
/// x_0 is the witness, or the smallest clique vertex when sigma = 3.
SpanningTree split_tree(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

/// Fixed stretch-4 tree of family::Petersen.
SpanningTree petersen_tree();

/// All vertical edges plus row floor(m/2) (counted from 0).
SpanningTree rect_grid_tree(int m, int n);
/// Horizontal and vertical lines through the lexicographically smallest
/// max-level face, extended into the four regions they cut off.
SpanningTree tri_grid_tree(int n);
/// All vertical edges plus the middle row (odd m) or the slants between rows
/// m/2-1 and m/2 (even m).
SpanningTree tri_rect_grid_tree(int m, int n);

struct FormulaResult {
  FamilySpec family;
  SigmaFormula formula;
  SpanningTree tree;
  StretchCertificate certificate;
};

/// Builds the family graph and its closed-form tree. Throws InvariantError
/// if the measured stretch differs from the formula.
FormulaResult construct(const FamilySpec& spec);
FormulaResult construct(const FamilyGraph& fg);

}  // namespace msst
