#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "msst/convex.hpp"
#include "msst/graph.hpp"

namespace msst {

namespace family {

struct Complete { int n; };
struct Cycle { int n; };
/// K_1 joined with C_{n-1}; hub is vertex 0, rim 1..n-1 in cyclic order.
struct Wheel { int n; };
/// K_2 joined with n-2 independent vertices; 0-1 is the K_2.
struct Diamond { int n; };
struct CompleteBipartite { int m; int n; };
/// Parts numbered consecutively in the given order.
struct CompleteMultipartite { std::vector<int> parts; };
/// Outer cycle 0..4, spokes i-(i+5), inner pentagram 5+i - 5+(i+2)%5.
struct Petersen {};
/// Clique x_0..x_{k-1} = vertices 0..k-1, then one vertex per entry of y_adjacency.
struct Split { int clique; std::vector<std::vector<int>> y_adjacency; };
/// Bipartite with N(x_i) = {y_0..y_{degrees[i]-1}}, nondecreasing degrees.
/// Numbered like a convex instance whose tau is the path y_0 - ... - y_{ny-1}.
struct Chain { int ny; std::vector<int> degrees; };
struct GeneralizedConvex { convex::ConvexInstance instance; };
/// P_m x P_n; (row, col) -> row * n + col.
struct RectGrid { int m; int n; };
/// T_n: lattice points x, y >= 0 with x + y <= n, numbered row by row (y, then x).
struct TriGrid { int n; };
/// T_{m,n}: (x, y) with 0 <= y < m, 0 <= x < n; (x, y) -> y * n + x.
struct TriRectGrid { int m; int n; };
/// Q_3; vertex bits b2 b1 b0.
struct Cube {};

}  // namespace family

using FamilySpec =
    std::variant<family::Complete, family::Cycle, family::Wheel, family::Diamond, family::CompleteBipartite,
                 family::CompleteMultipartite, family::Petersen, family::Split, family::Chain,
                 family::GeneralizedConvex, family::RectGrid, family::TriGrid, family::TriRectGrid, family::Cube>;

enum class EdgeClass { Horizontal, Vertical, Slant, Other };

struct GridMeta {
  /// RectGrid: (row, col). Triangular grids: (x, y).
  std::vector<std::array<int, 2>> coords;
  std::vector<EdgeClass> edge_class;  // per edge id
};

struct FamilyGraph {
  FamilySpec spec;
  Graph graph;
  /// Multipartite parts; {X, Y} for bipartite, split, chain and convex graphs.
  std::vector<std::vector<Vertex>> parts;
  std::optional<GridMeta> grid;
  std::optional<Vertex> hub;  // wheel hub
};

/// Throws ParameterError for parameters outside the family's range.
FamilyGraph make(const FamilySpec& spec);

FamilyGraph make_split(int clique_size, const std::vector<std::vector<int>>& y_adjacency);

/// Validates through the convex module; throws InstanceError.
convex::ConvexInstance make_generalized_convex(const Graph& tau, const std::vector<convex::YSet>& sigma);

/// Short descriptor, e.g. "rect-grid(4,5)".
std::string family_name(const FamilySpec& spec);

const char* edge_class_name(EdgeClass c);

/// Seeded generators for property tests.
namespace random {

/// Clique of 1..max_x vertices, 0..max_y independent vertices with random
/// nonempty neighbor sets.
FamilyGraph split(std::uint64_t seed, int max_x, int max_y);

/// Random tree tau on 1..max_y vertices and 1..max_x random tau-paths,
/// redrawn until the instance validates and its graph is connected.
convex::ConvexInstance convex_instance(std::uint64_t seed, int max_x, int max_y);

/// 2-connected graph on 3..max_n vertices: a cycle plus random chords.
Graph two_connected(std::uint64_t seed, int max_n);

struct GluedGraph {
  Graph graph;
  std::vector<Graph> blocks;
  std::vector<std::vector<Vertex>> block_vertices;  // block-local -> glued vertex
};

/// 2..4 two-connected blocks, each glued at one vertex of the graph built so far.
GluedGraph glued_blocks(std::uint64_t seed, int max_block_n);

}  // namespace random

}  // namespace msst
