#include "msst/families.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "msst/errors.hpp"

namespace msst {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

std::vector<Vertex> range(int from, int to) {
  std::vector<Vertex> out(idx(std::max(to - from, 0)));
  std::iota(out.begin(), out.end(), from);
  return out;
}

Graph sorted_graph(int n, std::vector<Edge> edges) {
  for (Edge& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  return Graph(n, std::move(edges));
}

FamilyGraph plain(FamilySpec spec, int n, std::vector<Edge> edges) {
  FamilyGraph out{std::move(spec), sorted_graph(n, std::move(edges)), {}, std::nullopt, std::nullopt};
  return out;
}

// Grid graphs: edges from coordinates, classified, sorted by vertex pair.
struct GridBuilder {
  std::vector<std::array<int, 2>> coords;
  std::vector<std::pair<Edge, EdgeClass>> edges;

  void add(Vertex a, Vertex b, EdgeClass c) { edges.push_back({{std::min(a, b), std::max(a, b)}, c}); }

  FamilyGraph build(FamilySpec spec) {
    std::sort(edges.begin(), edges.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<Edge> plain_edges;
    GridMeta meta{std::move(coords), {}};
    for (const auto& [e, c] : edges) {
      plain_edges.push_back(e);
      meta.edge_class.push_back(c);
    }
    const int n = static_cast<int>(meta.coords.size());
    return FamilyGraph{std::move(spec), Graph(n, std::move(plain_edges)), {}, std::move(meta), std::nullopt};
  }
};

FamilyGraph make_rect(const family::RectGrid& s) {
  require(s.m >= 2 && s.m <= s.n, "rect-grid needs 2 <= m <= n");
  GridBuilder b;
  const auto id = [&](int r, int c) { return r * s.n + c; };
  for (int r = 0; r < s.m; ++r)
    for (int c = 0; c < s.n; ++c) b.coords.push_back({r, c});
  for (int r = 0; r < s.m; ++r)
    for (int c = 0; c < s.n; ++c) {
      if (c + 1 < s.n) b.add(id(r, c), id(r, c + 1), EdgeClass::Horizontal);
      if (r + 1 < s.m) b.add(id(r, c), id(r + 1, c), EdgeClass::Vertical);
    }
  return b.build(s);
}

// Shared by both triangular families: lattice points given by `inside`,
// unit steps right, up, and up-left.
template <class Inside>
FamilyGraph make_triangular(FamilySpec spec, int xmax, int ymax, Inside inside) {
  GridBuilder b;
  std::vector<std::vector<int>> id(idx(xmax + 1), std::vector<int>(idx(ymax + 1), -1));
  for (int y = 0; y <= ymax; ++y)
    for (int x = 0; x <= xmax; ++x)
      if (inside(x, y)) {
        id[idx(x)][idx(y)] = static_cast<int>(b.coords.size());
        b.coords.push_back({x, y});
      }
  const auto at = [&](int x, int y) { return x >= 0 && y >= 0 && x <= xmax && y <= ymax ? id[idx(x)][idx(y)] : -1; };
  for (int y = 0; y <= ymax; ++y)
    for (int x = 0; x <= xmax; ++x) {
      const int v = at(x, y);
      if (v < 0) continue;
      if (at(x + 1, y) >= 0) b.add(v, at(x + 1, y), EdgeClass::Horizontal);
      if (at(x, y + 1) >= 0) b.add(v, at(x, y + 1), EdgeClass::Vertical);
      if (at(x - 1, y + 1) >= 0) b.add(v, at(x - 1, y + 1), EdgeClass::Slant);
    }
  return b.build(std::move(spec));
}

FamilyGraph make_bipartite_sets(FamilySpec spec, int nx, int ny, const std::vector<std::vector<int>>& nbrs) {
  std::vector<Edge> edges;
  for (int i = 0; i < nx; ++i)
    for (const int y : nbrs[idx(i)]) edges.push_back({i, nx + y});
  FamilyGraph out = plain(std::move(spec), nx + ny, std::move(edges));
  out.parts = {range(0, nx), range(nx, nx + ny)};
  return out;
}

struct Maker {
  FamilyGraph operator()(const family::Complete& s) const {
    require(s.n >= 1, "complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (int u = 0; u < s.n; ++u)
      for (int v = u + 1; v < s.n; ++v) edges.push_back({u, v});
    return plain(s, s.n, std::move(edges));
  }

  FamilyGraph operator()(const family::Cycle& s) const {
    require(s.n >= 3, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (int v = 0; v < s.n; ++v) edges.push_back({v, (v + 1) % s.n});
    return plain(s, s.n, std::move(edges));
  }

  FamilyGraph operator()(const family::Wheel& s) const {
    require(s.n >= 4, "wheel needs n >= 4");
    std::vector<Edge> edges;
    const int rim = s.n - 1;
    for (int i = 0; i < rim; ++i) {
      edges.push_back({0, 1 + i});
      edges.push_back({1 + i, 1 + (i + 1) % rim});
    }
    FamilyGraph out = plain(s, s.n, std::move(edges));
    out.hub = 0;
    return out;
  }

  FamilyGraph operator()(const family::Diamond& s) const {
    require(s.n >= 4, "diamond needs n >= 4");
    std::vector<Edge> edges{{0, 1}};
    for (int v = 2; v < s.n; ++v) {
      edges.push_back({0, v});
      edges.push_back({1, v});
    }
    return plain(s, s.n, std::move(edges));
  }

  FamilyGraph operator()(const family::CompleteBipartite& s) const {
    require(s.m >= 1 && s.n >= 1, "complete bipartite needs m, n >= 1");
    std::vector<std::vector<int>> nbrs(idx(s.m), range(0, s.n));
    return make_bipartite_sets(s, s.m, s.n, nbrs);
  }

  FamilyGraph operator()(const family::CompleteMultipartite& s) const {
    require(s.parts.size() >= 2, "multipartite needs k >= 2 parts");
    require(std::all_of(s.parts.begin(), s.parts.end(), [](int p) { return p >= 1; }), "parts must be nonempty");
    std::vector<std::vector<Vertex>> parts;
    int next = 0;
    for (const int p : s.parts) {
      parts.push_back(range(next, next + p));
      next += p;
    }
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        for (const Vertex u : parts[a])
          for (const Vertex v : parts[b]) edges.push_back({u, v});
    FamilyGraph out = plain(s, next, std::move(edges));
    out.parts = std::move(parts);
    return out;
  }

  FamilyGraph operator()(const family::Petersen& s) const {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
      edges.push_back({i, (i + 1) % 5});
      edges.push_back({i, i + 5});
      edges.push_back({5 + i, 5 + (i + 2) % 5});
    }
    return plain(s, 10, std::move(edges));
  }

  FamilyGraph operator()(const family::Split& s) const {
    require(s.clique >= 1, "split graph needs a nonempty clique");
    const int ny = static_cast<int>(s.y_adjacency.size());
    std::vector<Edge> edges;
    for (int u = 0; u < s.clique; ++u)
      for (int v = u + 1; v < s.clique; ++v) edges.push_back({u, v});
    for (int j = 0; j < ny; ++j) {
      std::set<int> nbrs(s.y_adjacency[idx(j)].begin(), s.y_adjacency[idx(j)].end());
      require(!nbrs.empty(), "split graph: y_" + std::to_string(j) + " has an empty neighbor set");
      for (const int x : nbrs) {
        require(x >= 0 && x < s.clique, "split graph: neighbor of y_" + std::to_string(j) + " outside the clique");
        edges.push_back({x, s.clique + j});
      }
    }
    FamilyGraph out = plain(s, s.clique + ny, std::move(edges));
    out.parts = {range(0, s.clique), range(s.clique, s.clique + ny)};
    return out;
  }

  FamilyGraph operator()(const family::Chain& s) const {
    require(s.ny >= 1 && !s.degrees.empty(), "chain graph needs ny >= 1 and at least one x");
    require(std::is_sorted(s.degrees.begin(), s.degrees.end()), "chain degrees must be nondecreasing");
    require(s.degrees.front() >= 1 && s.degrees.back() == s.ny, "chain degrees must lie in 1..ny and reach ny");
    std::vector<std::vector<int>> nbrs;
    for (const int d : s.degrees) nbrs.push_back(range(0, d));
    return make_bipartite_sets(s, static_cast<int>(s.degrees.size()), s.ny, nbrs);
  }

  FamilyGraph operator()(const family::GeneralizedConvex& s) const {
    const auto& inst = s.instance;
    FamilyGraph out{s, inst.graph(), {range(0, inst.num_x()), range(inst.num_x(), inst.num_x() + inst.num_y())},
                    std::nullopt, std::nullopt};
    return out;
  }

  FamilyGraph operator()(const family::RectGrid& s) const { return make_rect(s); }

  FamilyGraph operator()(const family::TriGrid& s) const {
    require(s.n >= 1, "tri-grid needs n >= 1");
    return make_triangular(s, s.n, s.n, [&](int x, int y) { return x + y <= s.n; });
  }

  FamilyGraph operator()(const family::TriRectGrid& s) const {
    require(s.m >= 2 && s.m <= s.n, "tri-rect-grid needs 2 <= m <= n");
    return make_triangular(s, s.n - 1, s.m - 1, [](int, int) { return true; });
  }

  FamilyGraph operator()(const family::Cube& s) const {
    std::vector<Edge> edges;
    for (int v = 0; v < 8; ++v)
      for (int bit = 1; bit < 8; bit <<= 1)
        if (!(v & bit)) edges.push_back({v, v | bit});
    return plain(s, 8, std::move(edges));
  }
};

std::string join(const std::vector<int>& xs, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? std::string(1, sep) : "") << xs[i];
  return os.str();
}

struct Namer {
  std::string operator()(const family::Complete& s) const { return "complete(" + std::to_string(s.n) + ")"; }
  std::string operator()(const family::Cycle& s) const { return "cycle(" + std::to_string(s.n) + ")"; }
  std::string operator()(const family::Wheel& s) const { return "wheel(" + std::to_string(s.n) + ")"; }
  std::string operator()(const family::Diamond& s) const { return "diamond(" + std::to_string(s.n) + ")"; }
  std::string operator()(const family::CompleteBipartite& s) const {
    return "complete-bipartite(" + std::to_string(s.m) + "," + std::to_string(s.n) + ")";
  }
  std::string operator()(const family::CompleteMultipartite& s) const {
    return "multipartite(" + join(s.parts, ',') + ")";
  }
  std::string operator()(const family::Petersen&) const { return "petersen"; }
  std::string operator()(const family::Split& s) const {
    std::string out = "split(" + std::to_string(s.clique);
    for (const auto& adj : s.y_adjacency) out += ";" + join(adj, ',');
    return out + ")";
  }
  std::string operator()(const family::Chain& s) const {
    return "chain(" + std::to_string(s.ny) + ";" + join(s.degrees, ',') + ")";
  }
  std::string operator()(const family::GeneralizedConvex& s) const {
    return "convex(" + std::to_string(s.instance.num_x()) + "," + std::to_string(s.instance.num_y()) + ")";
  }
  std::string operator()(const family::RectGrid& s) const {
    return "rect-grid(" + std::to_string(s.m) + "," + std::to_string(s.n) + ")";
  }
  std::string operator()(const family::TriGrid& s) const { return "tri-grid(" + std::to_string(s.n) + ")"; }
  std::string operator()(const family::TriRectGrid& s) const {
    return "tri-rect-grid(" + std::to_string(s.m) + "," + std::to_string(s.n) + ")";
  }
  std::string operator()(const family::Cube&) const { return "cube"; }
};

}  // namespace

FamilyGraph make(const FamilySpec& spec) { return std::visit(Maker{}, spec); }

FamilyGraph make_split(int clique_size, const std::vector<std::vector<int>>& y_adjacency) {
  return make(family::Split{clique_size, y_adjacency});
}

convex::ConvexInstance make_generalized_convex(const Graph& tau, const std::vector<convex::YSet>& sigma) {
  return convex::validate_instance(tau, sigma);
}

std::string family_name(const FamilySpec& spec) { return std::visit(Namer{}, spec); }

const char* edge_class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::Horizontal: return "horizontal";
    case EdgeClass::Vertical: return "vertical";
    case EdgeClass::Slant: return "slant";
    case EdgeClass::Other: break;
  }
  return "other";
}

namespace random {

namespace {

// Plain modulo over mt19937_64 keeps sequences identical across standard libraries.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  int below(int k) { return static_cast<int>(engine() % static_cast<std::uint64_t>(k)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
};

std::vector<int> tau_path(const Graph& tau, int a, int b) {
  std::vector<int> parent(idx(tau.num_vertices()), -1);
  std::vector<int> queue{a};
  parent[idx(a)] = a;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const Incidence& inc : tau.neighbors(queue[head]))
      if (parent[idx(inc.to)] < 0) {
        parent[idx(inc.to)] = queue[head];
        queue.push_back(inc.to);
      }
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[idx(path.back())]);
  return path;
}

}  // namespace

FamilyGraph split(std::uint64_t seed, int max_x, int max_y) {
  Rng rng(seed);
  const int nx = rng.between(1, max_x);
  const int ny = rng.between(0, max_y);
  std::vector<std::vector<int>> adj;
  for (int j = 0; j < ny; ++j) {
    std::vector<int> nbrs;
    while (nbrs.empty())
      for (int x = 0; x < nx; ++x)
        if (rng.below(2)) nbrs.push_back(x);
    adj.push_back(std::move(nbrs));
  }
  return make_split(nx, adj);
}

convex::ConvexInstance convex_instance(std::uint64_t seed, int max_x, int max_y) {
  Rng rng(seed);
  for (;;) {
    const int ny = rng.between(1, max_y);
    std::vector<Edge> tau_edges;
    for (int v = 1; v < ny; ++v) tau_edges.push_back({rng.below(v), v});
    Graph tau(ny, std::move(tau_edges));
    const int nx = rng.between(1, max_x);
    std::vector<convex::YSet> sigma;
    for (int i = 0; i < nx; ++i) sigma.push_back(tau_path(tau, rng.below(ny), rng.below(ny)));
    try {
      convex::ConvexInstance inst = convex::validate_instance(tau, sigma);
      if (inst.graph().is_connected()) return inst;
    } catch (const InstanceError&) {
    }
  }
}

Graph two_connected(std::uint64_t seed, int max_n) {
  Rng rng(seed);
  const int n = rng.between(3, std::max(3, max_n));
  std::vector<int> order(idx(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[idx(i)], order[idx(rng.below(i + 1))]);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const int a = order[idx(i)];
    const int b = order[idx((i + 1) % n)];
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  const int chords = rng.below(n);
  for (int c = 0; c < chords; ++c) {
    const int a = rng.below(n);
    const int b = rng.below(n);
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.push_back({a, b});
  return Graph(n, std::move(list));
}

GluedGraph glued_blocks(std::uint64_t seed, int max_block_n) {
  Rng rng(seed);
  const int count = rng.between(2, 4);
  GluedGraph out;
  int n = 0;
  std::vector<Edge> edges;
  for (int k = 0; k < count; ++k) {
    Graph block = two_connected(rng.engine(), max_block_n);
    std::vector<Vertex> map(idx(block.num_vertices()));
    const int shared = k == 0 ? -1 : rng.below(n);
    const int joint = rng.below(block.num_vertices());
    for (int v = 0; v < block.num_vertices(); ++v) map[idx(v)] = v == joint && shared >= 0 ? shared : -1;
    for (int v = 0; v < block.num_vertices(); ++v)
      if (map[idx(v)] < 0) map[idx(v)] = n++;
    for (const Edge& e : block.edges()) edges.push_back({map[idx(e.u)], map[idx(e.v)]});
    out.blocks.push_back(std::move(block));
    out.block_vertices.push_back(std::move(map));
  }
  out.graph = sorted_graph(n, std::move(edges));
  return out;
}

}  // namespace random

}  // namespace msst
