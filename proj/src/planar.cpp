#include "msst/planar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "msst/errors.hpp"

namespace msst::planar {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

double signed_area(const std::vector<Vertex>& cycle, const std::vector<Point>& pos) {
  double a = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Point& p = pos[idx(cycle[i])];
    const Point& q = pos[idx(cycle[(i + 1) % cycle.size()])];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return a / 2;
}

Face make_face(const Graph& g, std::vector<Vertex> cycle, const std::vector<Point>& pos, bool clockwise) {
  if ((signed_area(cycle, pos) < 0) != clockwise) std::reverse(cycle.begin(), cycle.end());
  Face f;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto e = g.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (!e) throw ValidationError("face boundary uses a non-edge");
    f.edges.push_back(*e);
  }
  f.vertices = std::move(cycle);
  return f;
}

// Chains the edges on exactly one bounded face into a single cycle.
std::vector<Vertex> outer_cycle(const Graph& g, const std::vector<int>& multiplicity) {
  std::vector<std::vector<Vertex>> adj(idx(g.num_vertices()));
  int count = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (multiplicity[idx(e)] != 1) continue;
    adj[idx(g.edge(e).u)].push_back(g.edge(e).v);
    adj[idx(g.edge(e).v)].push_back(g.edge(e).u);
    ++count;
  }
  if (count < 3) throw ValidationError("outer boundary has fewer than three edges");
  Vertex start = 0;
  while (adj[idx(start)].empty()) ++start;
  std::vector<Vertex> cycle{start};
  Vertex prev = -1;
  Vertex cur = start;
  for (;;) {
    if (adj[idx(cur)].size() != 2) throw ValidationError("outer boundary is not a simple cycle");
    const Vertex next = adj[idx(cur)][0] != prev ? adj[idx(cur)][0] : adj[idx(cur)][1];
    if (next == start) break;
    cycle.push_back(next);
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(cycle.size()) != count) throw ValidationError("outer boundary is not a single cycle");
  return cycle;
}

std::vector<Point> coords_as_points(const GridMeta& meta, bool sheared) {
  std::vector<Point> out;
  for (const auto& c : meta.coords) {
    const double x = c[0];
    const double y = c[1];
    out.push_back(sheared ? Point{x + y / 2, y * std::sqrt(3.0) / 2} : Point{x, y});
  }
  return out;
}

PlaneGraph embed_rect(const family::RectGrid& s) {
  const FamilyGraph fg = make(s);
  std::vector<Point> pos;
  for (const auto& c : fg.grid->coords) pos.push_back({double(c[1]), double(s.m - 1 - c[0])});
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::pair<int, int>> cells;
  const auto id = [&](int r, int c) { return r * s.n + c; };
  for (int r = 0; r + 1 < s.m; ++r)
    for (int c = 0; c + 1 < s.n; ++c) {
      cycles.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1), id(r + 1, c)});
      cells.push_back({s.m - 2 - r, c});
    }
  return from_bounded_faces(fg.graph, std::move(pos), cycles, cells);
}

// Up triangle at (a,b): (a,b),(a+1,b),(a,b+1). Down triangle at (a,b):
// (a+1,b),(a+1,b+1),(a,b+1). Table column 2a for up, 2a+1 for down.
template <class Has>
PlaneGraph embed_triangular(const FamilyGraph& fg, int xmax, int ymax, Has has, bool sheared) {
  std::map<std::pair<int, int>, Vertex> id;
  for (std::size_t v = 0; v < fg.grid->coords.size(); ++v)
    id[{fg.grid->coords[v][0], fg.grid->coords[v][1]}] = static_cast<Vertex>(v);
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::pair<int, int>> cells;
  for (int b = 0; b < ymax; ++b)
    for (int a = 0; a < xmax; ++a) {
      if (has(a, b) && has(a + 1, b) && has(a, b + 1)) {
        cycles.push_back({id[{a, b}], id[{a + 1, b}], id[{a, b + 1}]});
        cells.push_back({b, 2 * a});
      }
      if (has(a + 1, b) && has(a + 1, b + 1) && has(a, b + 1)) {
        cycles.push_back({id[{a + 1, b}], id[{a + 1, b + 1}], id[{a, b + 1}]});
        cells.push_back({b, 2 * a + 1});
      }
    }
  return from_bounded_faces(fg.graph, coords_as_points(*fg.grid, sheared), cycles, cells);
}

PlaneGraph embed_cube() {
  const FamilyGraph fg = make(family::Cube{});
  std::vector<Point> pos;
  for (int v = 0; v < 8; ++v) {
    const int b0 = v & 1;
    const int b1 = (v >> 1) & 1;
    if (v & 4) pos.push_back({4.0 + 4 * b0, 7.0 + 4 * b1});
    else pos.push_back({1.0 + 10 * b0, 4.0 + 10 * b1});
  }
  std::vector<std::vector<Vertex>> cycles{{4, 5, 7, 6}};
  std::vector<std::pair<int, int>> cells{{1, 0}};
  const std::pair<int, int> sides[] = {{0, 1}, {1, 3}, {3, 2}, {2, 0}};
  int col = 0;
  for (const auto& [a, b] : sides) {
    cycles.push_back({a, b, b | 4, a | 4});
    cells.push_back({0, col++});
  }
  return from_bounded_faces(fg.graph, std::move(pos), cycles, cells);
}

struct Embedder {
  PlaneGraph operator()(const family::RectGrid& s) const {
    PlaneGraph pg = embed_rect(s);
    pg.kind = GridKind::Rect;
    return pg;
  }
  PlaneGraph operator()(const family::TriGrid& s) const {
    const FamilyGraph fg = make(s);
    PlaneGraph pg =
        embed_triangular(fg, s.n, s.n, [&](int x, int y) { return x >= 0 && y >= 0 && x + y <= s.n; }, true);
    pg.kind = GridKind::Tri;
    return pg;
  }
  PlaneGraph operator()(const family::TriRectGrid& s) const {
    const FamilyGraph fg = make(s);
    PlaneGraph pg = embed_triangular(
        fg, s.n - 1, s.m - 1, [&](int x, int y) { return x >= 0 && y >= 0 && x < s.n && y < s.m; }, false);
    pg.kind = GridKind::TriRect;
    return pg;
  }
  PlaneGraph operator()(const family::Cube&) const {
    PlaneGraph pg = embed_cube();
    pg.kind = GridKind::Cube;
    return pg;
  }
  template <class Other>
  PlaneGraph operator()(const Other&) const {
    throw ParameterError("embed_grid supports rect-grid, tri-grid, tri-rect-grid and cube");
  }
};

void check_fits(const PlaneGraph& pg, const SpanningTree& t) {
  if (t.num_vertices() != pg.graph.num_vertices() || t.host_edge_count() != pg.graph.num_edges())
    throw ValidationError("spanning tree does not belong to this plane graph");
}

}  // namespace

PlaneGraph from_bounded_faces(Graph g, std::vector<Point> positions, const std::vector<std::vector<Vertex>>& cycles,
                              const std::vector<std::pair<int, int>>& cells) {
  if (static_cast<int>(positions.size()) != g.num_vertices()) throw ValidationError("one position per vertex needed");
  PlaneGraph pg;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    Face f = make_face(g, cycles[i], positions, false);
    f.row = cells[i].first;
    f.col = cells[i].second;
    pg.faces.push_back(std::move(f));
  }
  std::vector<int> multiplicity(idx(g.num_edges()), 0);
  for (const Face& f : pg.faces)
    for (const EdgeId e : f.edges) ++multiplicity[idx(e)];
  if (std::any_of(multiplicity.begin(), multiplicity.end(), [](int k) { return k < 1 || k > 2; }))
    throw ValidationError("every edge must lie on one or two bounded faces");
  pg.outer_face = static_cast<int>(pg.faces.size());
  pg.faces.push_back(make_face(g, outer_cycle(g, multiplicity), positions, true));

  if (g.num_vertices() - g.num_edges() + pg.num_faces() != 2) throw ValidationError("Euler's formula fails");

  pg.edge_faces.assign(idx(g.num_edges()), {-1, -1});
  for (int fi = 0; fi < pg.num_faces(); ++fi) {
    const Face& f = pg.faces[idx(fi)];
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
      auto& slot = pg.edge_faces[idx(f.edges[i])];
      (f.vertices[i] == g.edge(f.edges[i]).u ? slot.first : slot.second) = fi;
    }
  }
  for (const auto& [l, r] : pg.edge_faces)
    if (l < 0 || r < 0) throw ValidationError("inconsistent face orientation");
  pg.graph = std::move(g);
  pg.positions = std::move(positions);
  return pg;
}

PlaneGraph embed_grid(const FamilySpec& spec) { return std::visit(Embedder{}, spec); }

DualGraph dual(const PlaneGraph& pg) {
  DualGraph d;
  d.num_vertices = pg.num_faces();
  d.adjacency.resize(idx(d.num_vertices));
  for (EdgeId e = 0; e < pg.graph.num_edges(); ++e) {
    const auto [l, r] = pg.edge_faces[idx(e)];
    d.edges.push_back({std::min(l, r), std::max(l, r)});
    d.adjacency[idx(l)].push_back({r, e});
    d.adjacency[idx(r)].push_back({l, e});
  }
  return d;
}

FaceLevels face_levels(const PlaneGraph& pg) {
  const DualGraph d = dual(pg);
  FaceLevels out;
  out.level.assign(idx(d.num_vertices), -1);
  out.predecessor.assign(idx(d.num_vertices), std::nullopt);
  std::deque<int> queue{pg.outer_face};
  out.level[idx(pg.outer_face)] = 0;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (const auto& [h, e] : d.adjacency[idx(f)]) {
      if (out.level[idx(h)] >= 0) continue;
      out.level[idx(h)] = out.level[idx(f)] + 1;
      out.predecessor[idx(h)] = f;
      queue.push_back(h);
    }
  }
  out.lambda_max = *std::max_element(out.level.begin(), out.level.end());
  return out;
}

int lambda_max_formula(const FamilySpec& spec) {
  if (const auto* s = std::get_if<family::RectGrid>(&spec)) return s->m / 2;
  if (const auto* s = std::get_if<family::TriGrid>(&spec)) return (2 * s->n + 2) / 3;
  if (const auto* s = std::get_if<family::TriRectGrid>(&spec)) return s->m - 1;
  throw DomainError("lambda_max has a closed form only for rect-grid, tri-grid and tri-rect-grid");
}

int stretch_lower_bound(const PlaneGraph& pg) {
  if (!pg.kind || *pg.kind == GridKind::Cube)
    throw DomainError("the face-level stretch bound is established only for the three grid families");
  const int lambda = face_levels(pg).lambda_max;
  return *pg.kind == GridKind::Rect ? 2 * lambda + 1 : lambda + 1;
}

DualTree cotree_dual_tree(const PlaneGraph& pg, const SpanningTree& t) {
  check_fits(pg, t);
  DualTree out;
  std::vector<int> parent(idx(pg.num_faces()));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
    return x;
  };
  bool acyclic = true;
  for (EdgeId e = 0; e < pg.graph.num_edges(); ++e) {
    if (t.contains(e)) continue;
    out.edges.push_back(e);
    const int a = find(pg.edge_faces[idx(e)].first);
    const int b = find(pg.edge_faces[idx(e)].second);
    if (a == b) acyclic = false;
    else parent[idx(a)] = b;
  }
  out.spanning_tree = acyclic && static_cast<int>(out.edges.size()) == pg.num_faces() - 1;
  return out;
}

std::vector<EdgeId> fundamental_dual_cut(const PlaneGraph& pg, const SpanningTree& t, EdgeId e) {
  if (t.contains(e)) throw DomainError("edge " + std::to_string(e) + " is a tree edge");
  const DualTree dt = cotree_dual_tree(pg, t);
  if (!dt.spanning_tree) throw DomainError("cotree is not a spanning tree of the dual");
  // Side of the dual tree minus e* that holds e's left face.
  std::vector<bool> side(idx(pg.num_faces()), false);
  const DualGraph d = dual(pg);
  std::vector<int> stack{pg.edge_faces[idx(e)].first};
  side[idx(stack.back())] = true;
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (const auto& [h, de] : d.adjacency[idx(f)]) {
      if (de == e || t.contains(de) || side[idx(h)]) continue;
      side[idx(h)] = true;
      stack.push_back(h);
    }
  }
  std::vector<EdgeId> cut;
  for (EdgeId x = 0; x < pg.graph.num_edges(); ++x)
    if (side[idx(pg.edge_faces[idx(x)].first)] != side[idx(pg.edge_faces[idx(x)].second)]) cut.push_back(x);
  return cut;
}

std::string level_table(const PlaneGraph& pg, const FaceLevels& levels) {
  std::map<int, std::map<int, int>, std::greater<>> rows;
  for (int f = 0; f < pg.num_faces(); ++f) {
    if (f == pg.outer_face) continue;
    rows[pg.faces[idx(f)].row][pg.faces[idx(f)].col] = levels.level[idx(f)];
  }
  std::ostringstream os;
  for (const auto& [row, cols] : rows) {
    bool first = true;
    for (const auto& [col, level] : cols) {
      os << (first ? "" : " ") << level;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

std::string dual_overlay_dot(const PlaneGraph& pg, const SpanningTree* t) {
  std::ostringstream os;
  os << "graph dual_overlay {\n";
  for (Vertex v = 0; v < pg.graph.num_vertices(); ++v)
    os << "  v" << v << " [label=\"" << v << "\", pos=\"" << pg.positions[idx(v)][0] << ','
       << pg.positions[idx(v)][1] << "!\"];\n";
  double min_x = 0;
  double max_y = 0;
  for (const Point& p : pg.positions) {
    min_x = std::min(min_x, p[0]);
    max_y = std::max(max_y, p[1]);
  }
  for (int f = 0; f < pg.num_faces(); ++f) {
    Point c{min_x - 1.5, max_y + 1.5};
    if (f != pg.outer_face) {
      c = {0, 0};
      for (const Vertex v : pg.faces[idx(f)].vertices) {
        c[0] += pg.positions[idx(v)][0];
        c[1] += pg.positions[idx(v)][1];
      }
      c[0] /= pg.faces[idx(f)].degree();
      c[1] /= pg.faces[idx(f)].degree();
    }
    os << "  f" << f << " [shape=point, pos=\"" << c[0] << ',' << c[1] << "!\"];\n";
  }
  for (EdgeId e = 0; e < pg.graph.num_edges(); ++e) {
    const Edge& ed = pg.graph.edge(e);
    os << "  v" << ed.u << " -- v" << ed.v << " [style=" << (t && t->contains(e) ? "bold" : "solid") << "];\n";
  }
  for (EdgeId e = 0; e < pg.graph.num_edges(); ++e) {
    const auto [l, r] = pg.edge_faces[idx(e)];
    os << "  f" << l << " -- f" << r << " [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace msst::planar
