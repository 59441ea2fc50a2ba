#include "msst/convex.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <string>

#include "msst/errors.hpp"

namespace msst::convex {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool intersects(const YSet& a, const YSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool subset_of(const YSet& a, const YSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool strict_subset_of(const YSet& a, const YSet& b) { return a.size() < b.size() && subset_of(a, b); }

YSet set_minus(const YSet& a, const YSet& b) {
  YSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

YSet set_union(const YSet& a, const YSet& b) {
  YSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string describe(const YSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string set_name(std::size_t i) { return "Y_" + std::to_string(i + 1); }

// Induced subgraph of the tree on `s` is a path iff it is connected and has
// max degree <= 2 (a connected subgraph of a tree is a subtree).
bool induces_path(const Graph& tau, const YSet& s) {
  std::vector<bool> member(idx(tau.num_vertices()), false);
  for (const int y : s) member[idx(y)] = true;
  std::vector<bool> seen(member.size(), false);
  std::vector<int> stack{s.front()};
  seen[idx(s.front())] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    int inner_degree = 0;
    for (const Incidence& inc : tau.neighbors(v)) {
      if (!member[idx(inc.to)]) continue;
      ++inner_degree;
      if (!seen[idx(inc.to)]) {
        seen[idx(inc.to)] = true;
        ++reached;
        stack.push_back(inc.to);
      }
    }
    if (inner_degree > 2) return false;
  }
  return reached == s.size();
}

std::vector<int> bfs_distances(const Graph& tau, int source) {
  std::vector<int> dist(idx(tau.num_vertices()), -1);
  std::deque<int> queue{source};
  dist[idx(source)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const Incidence& inc : tau.neighbors(v)) {
      if (dist[idx(inc.to)] >= 0) continue;
      dist[idx(inc.to)] = dist[idx(v)] + 1;
      queue.push_back(inc.to);
    }
  }
  return dist;
}

}  // namespace

LaminarCheck check_laminar(std::span<const YSet> family) {
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      if (!intersects(family[a], family[b])) continue;
      if (subset_of(family[a], family[b]) || subset_of(family[b], family[a])) continue;
      return {false, std::make_pair(a, b)};
    }
  }
  return {};
}

ConvexInstance validate_instance(Graph tau, std::vector<YSet> sigma) {
  const int ny = tau.num_vertices();
  if (ny < 1) throw InstanceError("tau must have at least one vertex");
  if (tau.num_edges() != ny - 1 || !tau.is_connected()) throw InstanceError("tau is not a tree");

  for (std::size_t i = 0; i < sigma.size(); ++i) {
    YSet& s = sigma[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw InstanceError(set_name(i) + " is empty");
    if (s.front() < 0 || s.back() >= ny) throw InstanceError(set_name(i) + " has a vertex outside tau");
    if (!induces_path(tau, s))
      throw InstanceError(set_name(i) + " = " + describe(s) + " does not induce a subpath of tau");
  }

  for (std::size_t top = 0; top < sigma.size(); ++top) {
    const bool maximal = std::none_of(sigma.begin(), sigma.end(),
                                      [&](const YSet& other) { return strict_subset_of(sigma[top], other); });
    if (!maximal) continue;
    std::vector<YSet> residues;
    std::vector<std::size_t> owners;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (!intersects(sigma[i], sigma[top])) continue;
      residues.push_back(set_minus(sigma[i], sigma[top]));
      owners.push_back(i);
    }
    if (const LaminarCheck check = check_laminar(residues); !check) {
      const auto [a, b] = *check.violating_pair;
      throw InstanceError("laminar property fails for Y_0 = " + set_name(top) + ": " + set_name(owners[a]) +
                          " and " + set_name(owners[b]) + " residues cross");
    }
  }

  const int nx = static_cast<int>(sigma.size());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (const int y : sigma[i]) edges.push_back({static_cast<Vertex>(i), nx + y});

  ConvexInstance inst;
  inst.graph_ = Graph(nx + ny, std::move(edges));
  inst.tau_ = std::move(tau);
  inst.sigma_ = std::move(sigma);
  return inst;
}

RootChoice select_root(const ConvexInstance& inst) {
  const Graph& tau = inst.tau();
  const auto& sigma = inst.sigma();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const bool maximal =
        std::none_of(sigma.begin(), sigma.end(), [&](const YSet& other) { return strict_subset_of(sigma[i], other); });
    if (!maximal) continue;
    for (const int y : sigma[i])
      if (tau.degree(y) <= 1) return {i, y};
  }
  throw InstanceError("no inclusion-maximal neighbor set contains a leaf of tau");
}

std::vector<std::size_t> LevelStructure::successors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& level : levels)
    for (const std::size_t j : level)
      if (predecessor[j] == i) out.push_back(j);
  return out;
}

LevelStructure level_sets(const ConvexInstance& inst, const RootChoice& root) {
  const auto& sigma = inst.sigma();
  const std::size_t m = sigma.size();
  if (root.set >= m) throw InstanceError("root set index out of range");

  LevelStructure out;
  out.root = root;
  out.predecessor.assign(m, std::nullopt);
  out.levels.push_back({root.set});

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < m; ++i)
    if (i != root.set) pool.push_back(i);
  std::vector<std::size_t> dropped;  // lost a union tie
  YSet covered = sigma[root.set];
  const auto adds_uncovered = [&](std::size_t j) { return !subset_of(sigma[j], covered); };

  while (static_cast<int>(covered.size()) < inst.num_y()) {
    std::vector<std::size_t> next;
    for (const std::size_t i : out.levels.back()) {
      const YSet& yi = sigma[i];
      std::vector<std::size_t> candidates;
      for (const std::size_t j : pool)
        if (intersects(sigma[j], yi) && !subset_of(sigma[j], yi) && adds_uncovered(j)) candidates.push_back(j);

      std::vector<YSet> unions;
      for (const std::size_t j : candidates) unions.push_back(set_union(yi, sigma[j]));
      std::vector<YSet> admitted_unions;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const bool maximal = std::none_of(unions.begin(), unions.end(),
                                          [&](const YSet& other) { return strict_subset_of(unions[c], other); });
        if (!maximal) continue;
        const std::size_t j = candidates[c];
        if (std::find(admitted_unions.begin(), admitted_unions.end(), unions[c]) != admitted_unions.end()) {
          dropped.push_back(j);
          pool.erase(std::find(pool.begin(), pool.end(), j));
          continue;
        }
        if (!adds_uncovered(j)) continue;
        admitted_unions.push_back(unions[c]);
        out.predecessor[j] = i;
        next.push_back(j);
        pool.erase(std::find(pool.begin(), pool.end(), j));
        covered = set_union(covered, sigma[j]);
      }
    }
    if (next.empty())
      throw InstanceError("level construction stalled before covering Y (graph disconnected or invalid instance)");
    out.levels.push_back(std::move(next));
  }

  std::vector<std::size_t> rest = pool;
  rest.insert(rest.end(), dropped.begin(), dropped.end());
  std::sort(rest.begin(), rest.end());
  for (const std::size_t q : rest) {
    const YSet& yq = sigma[q];
    std::optional<DiscardedSet> found;
    for (std::size_t k = 0; k + 1 < out.levels.size() && !found; ++k) {
      for (const std::size_t i : out.levels[k]) {
        if (found) break;
        if (!intersects(sigma[i], yq)) continue;
        for (const std::size_t j : out.levels[k + 1]) {
          if (out.predecessor[j] != i) continue;
          if (subset_of(yq, set_union(sigma[i], sigma[j]))) {
            found = DiscardedSet{q, i, j};
            break;
          }
        }
      }
    }
    for (std::size_t k = 0; k < out.levels.size() && !found; ++k)
      for (const std::size_t i : out.levels[k])
        if (!found && subset_of(yq, sigma[i])) found = DiscardedSet{q, i, std::nullopt};
    if (!found) throw InstanceError("discarded set " + set_name(q) + " has no covering pair");
    out.discarded.push_back(*found);
  }
  return out;
}

LevelStructure level_sets(const ConvexInstance& inst) { return level_sets(inst, select_root(inst)); }

std::vector<std::vector<int>> path_order(const ConvexInstance& inst, int root_leaf) {
  const std::vector<int> dist = bfs_distances(inst.tau(), root_leaf);
  std::vector<std::vector<int>> out;
  out.reserve(inst.sigma().size());
  for (const YSet& s : inst.sigma()) {
    std::vector<int> order = s;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[idx(a)] < dist[idx(b)]; });
    out.push_back(std::move(order));
  }
  return out;
}

SpanningTree construct_tree(const ConvexInstance& inst, const LevelStructure& levels) {
  const auto& sigma = inst.sigma();
  const auto order = path_order(inst, levels.root.leaf);
  // Last vertex of Y_i ∩ other along Y_i's path order.
  const auto last_common = [&](std::size_t i, const YSet& other) {
    const auto& seq = order[i];
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
      if (std::binary_search(other.begin(), other.end(), *it)) return *it;
    throw InstanceError("sets " + set_name(i) + " and " + describe(other) + " do not intersect");
  };

  // Vertex of Y_i ∩ other where the tau path of other leaves Y_i; last_common if other ⊆ Y_i.
  const auto junction = [&](std::size_t i, const YSet& other) {
    const auto& seq = order[i];
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
      if (!std::binary_search(other.begin(), other.end(), *it)) continue;
      for (const Incidence& inc : inst.tau().neighbors(*it))
        if (std::binary_search(other.begin(), other.end(), inc.to) &&
            !std::binary_search(sigma[i].begin(), sigma[i].end(), inc.to))
          return *it;
    }
    return last_common(i, other);
  };

  const Graph& g = inst.graph();
  std::vector<EdgeId> tree;
  const auto take = [&](std::size_t x, int y) {
    const auto e = g.find_edge(inst.x_vertex(x), inst.y_vertex(y));
    if (!e) throw InvariantError("internal: missing edge x-y");
    tree.push_back(*e);
  };

  for (const int y : sigma[levels.root.set]) take(levels.root.set, y);
  std::map<std::size_t, int> ybar;
  for (std::size_t k = 1; k < levels.levels.size(); ++k) {
    for (const std::size_t j : levels.levels[k]) {
      const std::size_t i = *levels.predecessor[j];
      const int anchor = junction(i, sigma[j]);
      ybar[j] = anchor;
      YSet leaves = set_minus(sigma[j], sigma[i]);
      leaves.push_back(anchor);
      for (const int y : leaves) take(j, y);
    }
  }
  for (const DiscardedSet& d : levels.discarded) {
    const YSet& yq = sigma[d.set];
    int anchor = junction(d.cover, yq);
    if (d.successor && !subset_of(yq, sigma[d.cover]) &&
        std::binary_search(yq.begin(), yq.end(), ybar.at(*d.successor)))
      anchor = ybar.at(*d.successor);
    take(d.set, anchor);
  }
  return SpanningTree::from_edges(g, tree);
}

SpanningTree construct_tree(const ConvexInstance& inst) {
  const RootChoice first = select_root(inst);
  SpanningTree tree = construct_tree(inst, level_sets(inst, first));
  const Graph& g = inst.graph();
  if (g.num_edges() < g.num_vertices() || stretch(g, tree).stretch <= 3) return tree;
  const auto& sigma = inst.sigma();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const bool maximal =
        std::none_of(sigma.begin(), sigma.end(), [&](const YSet& other) { return strict_subset_of(sigma[i], other); });
    if (!maximal) continue;
    for (const int y : sigma[i]) {
      if (inst.tau().degree(y) > 1 || (i == first.set && y == first.leaf)) continue;
      SpanningTree alt = construct_tree(inst, level_sets(inst, {i, y}));
      if (stretch(g, alt).stretch <= 3) return alt;
    }
  }
  return tree;
}

}  // namespace msst::convex
