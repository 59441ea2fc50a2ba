#include "msst/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "msst/convex.hpp"
#include "msst/errors.hpp"
#include "msst/planar.hpp"

namespace msst {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool is_tree(const Graph& g) { return g.num_edges() == g.num_vertices() - 1 && g.is_connected(); }

SigmaFormula tree_formula(const Graph& g) { return {g.num_vertices() >= 2 ? 1 : 0, true}; }

SpanningTree whole_graph(const Graph& g) {
  std::vector<EdgeId> all(idx(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) all[idx(e)] = e;
  return SpanningTree::from_edges(g, all);
}

SpanningTree from_pairs(const Graph& g, const std::set<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : pairs) edges.push_back({a, b});
  return SpanningTree::from_pairs(g, edges);
}

convex::ConvexInstance chain_instance(const family::Chain& s) {
  std::vector<Edge> path;
  for (int y = 0; y + 1 < s.ny; ++y) path.push_back({y, y + 1});
  std::vector<convex::YSet> sigma;
  for (const int d : s.degrees) {
    convex::YSet set(idx(d));
    for (int y = 0; y < d; ++y) set[idx(y)] = y;
    sigma.push_back(std::move(set));
  }
  return convex::validate_instance(Graph(s.ny, std::move(path)), std::move(sigma));
}

// Triangular-lattice helper: vertex lookup by (x, y) plus edge collection.
struct Lattice {
  const Graph* graph;
  std::map<std::pair<int, int>, Vertex> id;
  std::set<std::pair<Vertex, Vertex>> pairs;

  explicit Lattice(const FamilyGraph& fg) : graph(&fg.graph) {
    for (std::size_t v = 0; v < fg.grid->coords.size(); ++v)
      id[{fg.grid->coords[v][0], fg.grid->coords[v][1]}] = static_cast<Vertex>(v);
  }
  void add(int x1, int y1, int x2, int y2) {
    const Vertex a = id.at({x1, y1});
    const Vertex b = id.at({x2, y2});
    pairs.insert({std::min(a, b), std::max(a, b)});
  }
  SpanningTree tree() const { return from_pairs(*graph, pairs); }
};

struct Formula {
  SigmaFormula operator()(const family::Complete& s) const {
    return s.n <= 2 ? SigmaFormula{s.n - 1, true} : SigmaFormula{2, false};
  }
  SigmaFormula operator()(const family::Cycle& s) const { return {s.n - 1, false}; }
  SigmaFormula operator()(const family::Wheel&) const { return {2, false}; }
  SigmaFormula operator()(const family::Diamond&) const { return {2, false}; }
  SigmaFormula operator()(const family::CompleteBipartite& s) const {
    return std::min(s.m, s.n) == 1 ? SigmaFormula{1, true} : SigmaFormula{3, false};
  }
  SigmaFormula operator()(const family::CompleteMultipartite& s) const {
    const int smallest = *std::min_element(s.parts.begin(), s.parts.end());
    if (s.parts.size() == 2 && smallest == 1) return {1, true};
    return {smallest == 1 ? 2 : 3, false};
  }
  SigmaFormula operator()(const family::Petersen&) const { return {4, false}; }
  SigmaFormula operator()(const family::Split& s) const {
    const FamilyGraph fg = make(s);
    if (is_tree(fg.graph)) return tree_formula(fg.graph);
    return {classify_split(fg.graph, fg.parts[0], fg.parts[1]).sigma, false};
  }
  SigmaFormula operator()(const family::Chain& s) const {
    const FamilyGraph fg = make(s);
    return is_tree(fg.graph) ? tree_formula(fg.graph) : SigmaFormula{3, false};
  }
  SigmaFormula operator()(const family::GeneralizedConvex& s) const {
    return is_tree(s.instance.graph()) ? tree_formula(s.instance.graph()) : SigmaFormula{3, false};
  }
  SigmaFormula operator()(const family::RectGrid& s) const { return {2 * (s.m / 2) + 1, false}; }
  SigmaFormula operator()(const family::TriGrid& s) const { return {(2 * s.n + 2) / 3 + 1, false}; }
  SigmaFormula operator()(const family::TriRectGrid& s) const { return {s.m, false}; }
  SigmaFormula operator()(const family::Cube&) const {
    throw DomainError("no closed-form tree-stretch for the cube");
  }
};

struct Builder {
  const FamilyGraph& fg;

  SpanningTree operator()(const family::Complete&) const { return star_tree(fg.graph, 0); }
  SpanningTree operator()(const family::Cycle& s) const {
    std::vector<EdgeId> path;
    for (EdgeId e = 0; e < fg.graph.num_edges(); ++e)
      if (fg.graph.edge(e) != Edge{0, s.n - 1}) path.push_back(e);
    return SpanningTree::from_edges(fg.graph, path);
  }
  SpanningTree operator()(const family::Wheel&) const { return star_tree(fg.graph, *fg.hub); }
  SpanningTree operator()(const family::Diamond&) const { return star_tree(fg.graph, 0); }
  SpanningTree operator()(const family::CompleteBipartite& s) const {
    if (s.m == 1) return star_tree(fg.graph, 0);
    if (s.n == 1) return star_tree(fg.graph, s.m);
    return double_star_tree(fg.graph, fg.parts[0], fg.parts[0][0], fg.parts[1][0]);
  }
  SpanningTree operator()(const family::CompleteMultipartite&) const {
    if (fg.parts.size() >= 3) return multipartite_tree(fg.graph, fg.parts);
    for (const auto& part : fg.parts)
      if (part.size() == 1) return star_tree(fg.graph, part[0]);
    return double_star_tree(fg.graph, fg.parts[0], fg.parts[0][0], fg.parts[1][0]);
  }
  SpanningTree operator()(const family::Petersen&) const { return petersen_tree(); }
  SpanningTree operator()(const family::Split&) const {
    if (is_tree(fg.graph)) return whole_graph(fg.graph);
    return split_tree(fg.graph, fg.parts[0], fg.parts[1]);
  }
  SpanningTree operator()(const family::Chain& s) const { return convex_tree(chain_instance(s)); }
  SpanningTree operator()(const family::GeneralizedConvex& s) const { return convex_tree(s.instance); }
  SpanningTree operator()(const family::RectGrid& s) const { return rect_grid_tree(s.m, s.n); }
  SpanningTree operator()(const family::TriGrid& s) const { return tri_grid_tree(s.n); }
  SpanningTree operator()(const family::TriRectGrid& s) const { return tri_rect_grid_tree(s.m, s.n); }
  SpanningTree operator()(const family::Cube&) const { throw DomainError("no closed-form tree for the cube"); }

  SpanningTree convex_tree(const convex::ConvexInstance& inst) const {
    if (is_tree(fg.graph)) return whole_graph(fg.graph);
    const SpanningTree t = convex::construct_tree(inst);
    const std::vector<Edge> pairs = t.edge_pairs(inst.graph());
    return SpanningTree::from_pairs(fg.graph, pairs);
  }
};

}  // namespace

SigmaFormula sigma_formula(const FamilySpec& spec) { return std::visit(Formula{}, spec); }

SpanningTree star_tree(const Graph& g, Vertex center) {
  if (!g.valid_vertex(center)) throw DomainError("star center out of range");
  if (g.degree(center) != g.num_vertices() - 1)
    throw DomainError("vertex " + std::to_string(center) + " is not universal");
  std::vector<EdgeId> edges;
  for (const Incidence& inc : g.neighbors(center)) edges.push_back(inc.edge);
  return SpanningTree::from_edges(g, edges);
}

SpanningTree double_star_tree(const Graph& g, std::span<const Vertex> x_side, Vertex x, Vertex y) {
  std::vector<bool> in_x(idx(g.num_vertices()), false);
  for (const Vertex v : x_side) in_x[idx(v)] = true;
  if (!g.valid_vertex(x) || !g.valid_vertex(y) || !in_x[idx(x)] || in_x[idx(y)])
    throw DomainError("double star needs x in the X side and y outside it");
  std::vector<Edge> pairs;
  for (Vertex w = 0; w < g.num_vertices(); ++w) {
    if (!in_x[idx(w)]) pairs.push_back({x, w});
    else if (w != x) pairs.push_back({y, w});
  }
  return SpanningTree::from_pairs(g, pairs);
}

SpanningTree multipartite_tree(const Graph& g, const std::vector<std::vector<Vertex>>& parts) {
  if (parts.size() < 3) throw ParameterError("multipartite_tree needs k >= 3; use the bipartite double star");
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i].size() < parts[smallest].size()) smallest = i;
  if (parts[smallest].size() == 1) return star_tree(g, parts[smallest][0]);
  const std::size_t other = smallest == 0 ? 1 : 0;
  return double_star_tree(g, parts[smallest], parts[smallest][0], parts[other][0]);
}

namespace {

void check_split_partition(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  std::vector<int> side(idx(g.num_vertices()), -1);
  for (const Vertex v : x) {
    if (!g.valid_vertex(v) || side[idx(v)] >= 0) throw ValidationError("split partition: bad or repeated vertex");
    side[idx(v)] = 0;
  }
  for (const Vertex v : y) {
    if (!g.valid_vertex(v) || side[idx(v)] >= 0) throw ValidationError("split partition: bad or repeated vertex");
    side[idx(v)] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) > 0) throw ValidationError("split partition does not cover V");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (!g.has_edge(x[i], x[j])) throw ValidationError("split partition: X is not a clique");
  for (const Edge& e : g.edges())
    if (side[idx(e.u)] == 1 && side[idx(e.v)] == 1) throw ValidationError("split partition: Y is not independent");
  if (is_tree(g)) throw DomainError("split classification excludes trees");
}

}  // namespace

SplitClass classify_split(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  check_split_partition(g, x, y);
  std::vector<Vertex> xs(x.begin(), x.end());
  std::sort(xs.begin(), xs.end());
  std::vector<Vertex> ys(y.begin(), y.end());
  std::sort(ys.begin(), ys.end());
  SplitClass out;
  for (const Vertex x0 : xs) {
    const auto bad = std::find_if(ys.begin(), ys.end(), [&](Vertex w) { return !g.has_edge(x0, w) && g.degree(w) >= 2; });
    if (bad == ys.end()) {
      if (!out.witness) out.witness = x0;
    } else {
      out.refutations.push_back({x0, *bad});
    }
  }
  out.sigma = out.witness ? 2 : 3;
  return out;
}

SpanningTree split_tree(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  const SplitClass cls = classify_split(g, x, y);
  const Vertex x0 = cls.witness ? *cls.witness : *std::min_element(x.begin(), x.end());
  std::vector<Edge> pairs;
  for (const Incidence& inc : g.neighbors(x0)) pairs.push_back({x0, inc.to});
  for (const Vertex w : y) {
    if (g.has_edge(x0, w)) continue;
    Vertex best = g.num_vertices();
    for (const Incidence& inc : g.neighbors(w)) best = std::min(best, inc.to);
    pairs.push_back({best, w});
  }
  return SpanningTree::from_pairs(g, pairs);
}

SpanningTree petersen_tree() {
  const Graph g = make(family::Petersen{}).graph;
  const std::vector<Edge> pairs{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {1, 6}, {2, 7}, {6, 8}, {7, 9}};
  SpanningTree t = SpanningTree::from_pairs(g, pairs);
  if (stretch(g, t).stretch != 4) throw InvariantError("stored Petersen tree does not have stretch 4");
  return t;
}

SpanningTree rect_grid_tree(int m, int n) {
  const FamilyGraph fg = make(family::RectGrid{m, n});
  const int spine = m / 2;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < fg.graph.num_edges(); ++e) {
    const EdgeClass c = fg.grid->edge_class[idx(e)];
    if (c == EdgeClass::Vertical || fg.grid->coords[idx(fg.graph.edge(e).u)][0] == spine) edges.push_back(e);
  }
  return SpanningTree::from_edges(fg.graph, edges);
}

SpanningTree tri_grid_tree(int n) {
  const family::TriGrid spec{n};
  const FamilyGraph fg = make(spec);
  const planar::PlaneGraph pg = planar::embed_grid(spec);
  const planar::FaceLevels levels = planar::face_levels(pg);

  // Anchor (a, b, down?) of the lexicographically smallest max-level face.
  std::optional<std::array<int, 3>> anchor;
  for (int f = 0; f < pg.num_faces(); ++f) {
    if (f == pg.outer_face || levels.level[idx(f)] != levels.lambda_max) continue;
    const planar::Face& face = pg.faces[idx(f)];
    const std::array<int, 3> key{face.col / 2, face.row, face.col % 2};
    if (!anchor || key < *anchor) anchor = key;
  }
  const auto [a, b, down] = *anchor;
  const int h = down ? b + 1 : b;  // row through the face's horizontal edge
  const int v = down ? a + 1 : a;  // column through its vertical edge

  Lattice lat(fg);
  for (int x = 0; x + 1 <= n - h; ++x) lat.add(x, h, x + 1, h);
  for (int y = 0; y < n - v; ++y) lat.add(v, y, v, y + 1);
  for (int x = 0; x <= n - h; ++x)
    for (int y = 0; y < h; ++y) lat.add(x, y, x, y + 1);
  for (int y = 0; y < h; ++y)
    for (int x = n - h; x < n - y; ++x) lat.add(x, y, x + 1, y);
  for (int y = h + 1; y <= n - v; ++y)
    for (int x = 0; x < n - y; ++x) lat.add(x, y, x + 1, y);
  for (int x = 0; x < v; ++x)
    for (int y = std::max(n - v, h); y < n - x; ++y) lat.add(x, y, x, y + 1);
  return lat.tree();
}

SpanningTree tri_rect_grid_tree(int m, int n) {
  const FamilyGraph fg = make(family::TriRectGrid{m, n});
  Lattice lat(fg);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y + 1 < m; ++y) lat.add(x, y, x, y + 1);
  if (m % 2 == 1) {
    const int mid = (m - 1) / 2;
    for (int x = 0; x + 1 < n; ++x) lat.add(x, mid, x + 1, mid);
  } else {
    for (int x = 0; x + 1 < n; ++x) lat.add(x + 1, m / 2 - 1, x, m / 2);
  }
  return lat.tree();
}

FormulaResult construct(const FamilyGraph& fg) {
  const SigmaFormula formula = sigma_formula(fg.spec);
  SpanningTree tree = std::visit(Builder{fg}, fg.spec);
  StretchCertificate cert = stretch(fg.graph, tree);
  if (cert.stretch != formula.sigma)
    throw InvariantError(family_name(fg.spec) + ": constructed tree has stretch " + std::to_string(cert.stretch) +
                         ", formula says " + std::to_string(formula.sigma));
  return FormulaResult{fg.spec, formula, std::move(tree), std::move(cert)};
}

FormulaResult construct(const FamilySpec& spec) { return construct(make(spec)); }

}  // namespace msst
