#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msst/families.hpp"
#include "msst/graph.hpp"
#include "msst/graph_io.hpp"

namespace msst::planar {

struct Face {
  /// Boundary walk: step i goes vertices[i] -> vertices[i+1 mod k] along edges[i].
  /// Bounded faces run counter-clockwise, the outer face clockwise, so the
  /// face is always on the left of each step.
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  /// Position in the level table (row 0 at the bottom); -1 for the outer face.
  int row = -1;
  int col = -1;

  int degree() const { return static_cast<int>(edges.size()); }
};

enum class GridKind { Rect, Tri, TriRect, Cube };

struct PlaneGraph {
  std::optional<GridKind> kind;  // empty for plane graphs not built by embed_grid
  Graph graph;
  std::vector<Point> positions;
  std::vector<Face> faces;
  int outer_face = 0;
  /// Per edge u->v (u < v): faces on its left and right.
  std::vector<std::pair<int, int>> edge_faces;

  int num_faces() const { return static_cast<int>(faces.size()); }
};

/// Builds a plane graph from bounded faces given as vertex cycles in any
/// orientation. The outer face is the cycle of edges that lie on exactly one
/// bounded face. Throws ValidationError if the faces do not describe a
/// 2-connected plane embedding (bad edge multiplicity, Euler mismatch).
PlaneGraph from_bounded_faces(Graph g, std::vector<Point> positions, const std::vector<std::vector<Vertex>>& cycles,
                              const std::vector<std::pair<int, int>>& cells);

/// Analytic embedding for RectGrid, TriGrid, TriRectGrid and Cube.
/// Throws ParameterError for other families.
PlaneGraph embed_grid(const FamilySpec& spec);

/// Dual multigraph; dual edge i crosses primal edge i.
struct DualGraph {
  int num_vertices = 0;  // one per face
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, EdgeId>>> adjacency;  // (neighbor face, edge)

  int num_edges() const { return static_cast<int>(edges.size()); }
};

DualGraph dual(const PlaneGraph& pg);

struct FaceLevels {
  std::vector<int> level;
  std::vector<std::optional<int>> predecessor;
  int lambda_max = 0;
};

/// Breadth-first levels on the dual, outer face at level 0.
FaceLevels face_levels(const PlaneGraph& pg);

/// Closed forms: RectGrid floor(m/2), TriGrid ceil(2n/3), TriRectGrid m-1.
/// Throws DomainError for other families.
int lambda_max_formula(const FamilySpec& spec);

/// 2*lambda_max+1 on rectangular grids, lambda_max+1 on the triangular
/// families. Throws DomainError for any other plane graph.
int stretch_lower_bound(const PlaneGraph& pg);

struct DualTree {
  std::vector<EdgeId> edges;  // dual edges, i.e. the cotree edge ids
  bool spanning_tree = false;
};

/// Dual edges of the cotree of t. Throws ValidationError if t does not fit pg.
DualTree cotree_dual_tree(const PlaneGraph& pg, const SpanningTree& t);

/// For cotree edge e: dual edges crossing the split of the dual tree at e*,
/// sorted. Throws DomainError if e is a tree edge or the cotree is not a
/// dual spanning tree.
std::vector<EdgeId> fundamental_dual_cut(const PlaneGraph& pg, const SpanningTree& t, EdgeId e);

/// Level table, top row first, one line per face row.
std::string level_table(const PlaneGraph& pg, const FaceLevels& levels);

/// Primal edges solid (tree edges bold when t is given), dual vertices at
/// face centroids, dual edges dotted.
std::string dual_overlay_dot(const PlaneGraph& pg, const SpanningTree* t = nullptr);

}  // namespace msst::planar
