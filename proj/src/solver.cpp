#include "msst/solver.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "msst/errors.hpp"

namespace msst {

namespace {

using boost::multiprecision::cpp_int;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

constexpr int kNoBest = INT_MAX;

void require_connected(const Graph& g) {
  if (g.num_vertices() < 1) throw ValidationError("graph has no vertices");
  if (!g.is_connected()) throw ValidationError("graph is disconnected");
}

[[noreturn]] void cap_exceeded(std::uint64_t cap) {
  throw ResourceError("spanning tree cap of " + std::to_string(cap) + " exceeded", cap);
}

// Root of a shallow subtree of the include/exclude search: the edges included
// so far, the next edge to decide, and for every include on the way the merge
// bound together with the index of the first prefix below that include.
struct Prefix {
  std::vector<EdgeId> included;
  int next = 0;
  std::vector<std::pair<int, std::size_t>> guards;
};

// Include/exclude search over edges in index order, include branch first.
//
// Partial forests live in a union-find without path compression so that each
// include can be undone. With `bounds` on, every include records the largest
// tree distance it fixes between endpoints of a graph edge; the running
// maximum at a leaf is the leaf's stretch.
class Engine {
 public:
  Engine(const Graph& g, bool bounds)
      : g_(g), n_(g.num_vertices()), m_(g.num_edges()), bounds_(bounds), parent_(idx(n_)), size_(idx(n_), 1),
        forest_(idx(n_)), dist_a_(idx(n_)), dist_b_(idx(n_)), stamp_a_(idx(n_), 0), stamp_b_(idx(n_), 0),
        scratch_(idx(n_)) {
    for (int v = 0; v < n_; ++v) parent_[idx(v)] = v;
    running_.push_back(0);
  }

  // configuration
  bool solve = false;
  bool prune = false;
  int best = kNoBest;
  int stop_at = -1;
  std::uint64_t cap = kDefaultTreeCap;
  const TreeVisitor* visitor = nullptr;
  std::vector<Prefix>* frontier = nullptr;
  int expand_depth = 0;

  // results
  std::uint64_t count = 0;
  std::optional<int> found;
  std::vector<EdgeId> best_tree;
  bool pruned = false;
  bool stopped = false;

  void apply(const Prefix& p) {
    for (const EdgeId e : p.included) include(e, bounds_ ? merge_bound(e) : 0);
  }

  void run(int start) { dfs(start); }

 private:
  int find(int v) const {
    while (parent_[idx(v)] != v) v = parent_[idx(v)];
    return v;
  }

  void include(EdgeId e, int bound) {
    const Edge& ed = g_.edge(e);
    int a = find(ed.u);
    int b = find(ed.v);
    if (size_[idx(a)] < size_[idx(b)]) std::swap(a, b);
    parent_[idx(b)] = a;
    size_[idx(a)] += size_[idx(b)];
    merges_.push_back(b);
    forest_[idx(ed.u)].push_back(ed.v);
    forest_[idx(ed.v)].push_back(ed.u);
    chosen_.push_back(e);
    running_.push_back(std::max(running_.back(), bound));
  }

  void undo() {
    const Edge& ed = g_.edge(chosen_.back());
    const int b = merges_.back();
    const int a = parent_[idx(b)];
    size_[idx(a)] -= size_[idx(b)];
    parent_[idx(b)] = b;
    merges_.pop_back();
    forest_[idx(ed.u)].pop_back();
    forest_[idx(ed.v)].pop_back();
    chosen_.pop_back();
    running_.pop_back();
  }

  void bfs(int source, std::vector<int>& dist, std::vector<unsigned>& stamp, std::vector<int>& members) {
    members.clear();
    members.push_back(source);
    dist[idx(source)] = 0;
    stamp[idx(source)] = epoch_;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const int v = members[head];
      for (const int w : forest_[idx(v)]) {
        if (stamp[idx(w)] == epoch_) continue;
        stamp[idx(w)] = epoch_;
        dist[idx(w)] = dist[idx(v)] + 1;
        members.push_back(w);
      }
    }
  }

  // Largest d_A(a) + 1 + d_B(b) over graph edges ab joining the two
  // components that edge e would merge.
  int merge_bound(EdgeId e) {
    ++epoch_;
    const Edge& ed = g_.edge(e);
    bfs(ed.u, dist_a_, stamp_a_, members_a_);
    bfs(ed.v, dist_b_, stamp_b_, members_b_);
    int bound = 0;
    for (const int a : members_a_)
      for (const Incidence& inc : g_.neighbors(a))
        if (stamp_b_[idx(inc.to)] == epoch_) bound = std::max(bound, dist_a_[idx(a)] + 1 + dist_b_[idx(inc.to)]);
    return bound;
  }

  // Excluding e keeps a spanning tree reachable iff its endpoints stay joined
  // by chosen edges plus edges after e.
  bool can_exclude(EdgeId e) {
    for (int v = 0; v < n_; ++v) scratch_[idx(v)] = find(v);
    const auto root = [&](int v) {
      while (scratch_[idx(v)] != v) {
        scratch_[idx(v)] = scratch_[idx(scratch_[idx(v)])];
        v = scratch_[idx(v)];
      }
      return v;
    };
    for (EdgeId j = e + 1; j < m_; ++j) {
      const int a = root(g_.edge(j).u);
      const int b = root(g_.edge(j).v);
      if (a != b) scratch_[idx(a)] = b;
    }
    return root(g_.edge(e).u) == root(g_.edge(e).v);
  }

  void leaf() {
    if (count >= cap) cap_exceeded(cap);
    ++count;
    if (visitor) (*visitor)(chosen_);
    if (!solve) return;
    int s = running_.back();
    if (!bounds_) s = stretch(g_, SpanningTree::from_edges(g_, chosen_)).stretch;
    if (s < best) {
      best = s;
      found = s;
      best_tree = chosen_;
    }
    if (prune && best <= stop_at) stopped = true;
  }

  void dfs(int i) {
    if (stopped) return;
    const bool complete = static_cast<int>(chosen_.size()) == n_ - 1;
    if (frontier && (complete || i >= expand_depth)) {
      frontier->push_back({chosen_, i, guards_});
      return;
    }
    if (complete) {
      leaf();
      return;
    }
    const Edge& ed = g_.edge(i);
    if (find(ed.u) == find(ed.v)) {
      dfs(i + 1);
      return;
    }
    const int bound = bounds_ ? merge_bound(i) : 0;
    if (prune && bound >= best) {
      pruned = true;
    } else {
      if (frontier) guards_.emplace_back(bound, frontier->size());
      include(i, bound);
      dfs(i + 1);
      undo();
      if (frontier) guards_.pop_back();
    }
    if (stopped) return;
    if (can_exclude(i)) dfs(i + 1);
  }

  const Graph& g_;
  int n_;
  int m_;
  bool bounds_;
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> merges_;
  std::vector<std::vector<int>> forest_;
  std::vector<EdgeId> chosen_;
  std::vector<int> running_;
  std::vector<std::pair<int, std::size_t>> guards_;

  std::vector<int> dist_a_, dist_b_;
  std::vector<unsigned> stamp_a_, stamp_b_;
  std::vector<int> members_a_, members_b_;
  unsigned epoch_ = 0;
  std::vector<int> scratch_;
};

int lower_bound_for_search(const Graph& g) {
  if (const auto gi = girth(g)) return *gi - 1;
  return g.num_vertices() >= 2 ? 1 : 0;
}

ExactResult finish(const Graph& g, int sigma, const std::vector<EdgeId>& tree, std::uint64_t count, int lb,
                   bool pruned) {
  return ExactResult{sigma, SpanningTree::from_edges(g, tree), count, lb, pruned};
}

// Runs job(k) for k = 0..jobs-1 on `threads` workers, claiming indices in
// increasing order. The first exception thrown by any job is rethrown.
template <class Job>
void run_pool(std::size_t jobs, int threads, Job job) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < jobs; k = next++) {
        try {
          job(k);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

ExactResult solve_sequential(const Graph& g, const SolveOptions& opts, int lb) {
  Engine e(g, opts.use_pruning);
  e.solve = true;
  e.prune = opts.use_pruning;
  e.stop_at = lb;
  e.cap = opts.max_trees;
  e.run(0);
  return finish(g, *e.found, e.best_tree, e.count, lb, e.pruned || e.stopped);
}

// Splits the search at a shallow depth and replays, per prefix, exactly the
// state the sequential search would be in when it reaches that prefix. Pass 1
// finds each prefix's local optimum (pruned only by results of earlier
// prefixes, which never hides a value that would lower the running best).
// From those, the best known on entry to every prefix follows. Pass 2 reruns
// each live prefix from that value, which reproduces the sequential counts,
// prune decisions, and the first optimal tree.
ExactResult solve_parallel(const Graph& g, const SolveOptions& opts, int lb) {
  const bool prune = opts.use_pruning;
  std::vector<Prefix> prefixes;
  const std::size_t want = static_cast<std::size_t>(opts.threads) * 16;
  for (int depth = 1;; ++depth) {
    prefixes.clear();
    Engine ex(g, prune);
    ex.frontier = &prefixes;
    ex.expand_depth = depth;
    ex.run(0);
    if (prefixes.size() >= want || depth >= g.num_edges()) break;
  }
  const std::size_t count = prefixes.size();

  std::vector<int> entry(count + 1, kNoBest);
  if (prune) {
    std::vector<int> local(count, kNoBest);
    std::vector<bool> done(count, false);
    std::mutex mutex;
    std::atomic<std::size_t> cutoff{count};
    try {
      run_pool(count, opts.threads, [&](std::size_t k) {
        if (k > cutoff.load()) return;
        int start = kNoBest;
        {
          const std::lock_guard lock(mutex);
          for (std::size_t j = 0; j < k; ++j)
            if (done[j]) start = std::min(start, local[j]);
        }
        Engine e(g, true);
        e.solve = true;
        e.prune = true;
        e.best = start;
        e.stop_at = lb;
        e.cap = opts.max_trees;
        e.apply(prefixes[k]);
        e.run(prefixes[k].next);
        const std::lock_guard lock(mutex);
        if (e.found) local[k] = *e.found;
        done[k] = true;
        if (e.found && *e.found <= lb) {
          std::size_t cur = cutoff.load();
          while (k < cur && !cutoff.compare_exchange_weak(cur, k)) {
          }
        }
      });
    } catch (const ResourceError&) {
      return solve_sequential(g, opts, lb);
    }
    for (std::size_t k = 0; k < count; ++k)
      entry[k + 1] = k <= cutoff.load() ? std::min(entry[k], local[k]) : entry[k];
  }

  bool pruned = false;
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < count; ++k) {
    if (prune && entry[k] <= lb) {
      pruned = true;
      continue;
    }
    const bool cut = prune && std::any_of(prefixes[k].guards.begin(), prefixes[k].guards.end(),
                                          [&](const auto& gd) { return gd.first >= entry[gd.second]; });
    if (cut) {
      pruned = true;
      continue;
    }
    live.push_back(k);
  }

  struct Outcome {
    std::uint64_t count = 0;
    std::optional<int> found;
    std::vector<EdgeId> tree;
    bool pruned = false;
  };
  std::vector<Outcome> outcomes(live.size());
  try {
    run_pool(live.size(), opts.threads, [&](std::size_t s) {
      const Prefix& p = prefixes[live[s]];
      Engine e(g, prune);
      e.solve = true;
      e.prune = prune;
      e.best = prune ? entry[live[s]] : kNoBest;
      e.stop_at = lb;
      e.cap = opts.max_trees;
      e.apply(p);
      e.run(p.next);
      outcomes[s] = {e.count, e.found, std::move(e.best_tree), e.pruned || e.stopped};
    });
  } catch (const ResourceError&) {
    cap_exceeded(opts.max_trees);
  }

  std::uint64_t total = 0;
  int sigma = kNoBest;
  const std::vector<EdgeId>* tree = nullptr;
  for (const Outcome& o : outcomes) {
    total += o.count;
    pruned = pruned || o.pruned;
    if (o.found && *o.found < sigma) {
      sigma = *o.found;
      tree = &o.tree;
    }
  }
  if (total > opts.max_trees) cap_exceeded(opts.max_trees);
  return finish(g, sigma, *tree, total, lb, pruned);
}

}  // namespace

std::uint64_t enumerate_spanning_trees(const Graph& g, const TreeVisitor& visit, std::uint64_t cap) {
  require_connected(g);
  Engine e(g, false);
  e.visitor = &visit;
  e.cap = cap;
  e.run(0);
  return e.count;
}

cpp_int count_spanning_trees_kirchhoff(const Graph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return 1;
  const std::size_t k = idx(n - 1);
  // Laplacian with row and column 0 removed.
  std::vector<std::vector<cpp_int>> a(k, std::vector<cpp_int>(k, 0));
  for (const Edge& e : g.edges()) {
    const int u = e.u - 1;
    const int v = e.v - 1;
    if (u >= 0) a[idx(u)][idx(u)] += 1;
    if (v >= 0) a[idx(v)][idx(v)] += 1;
    if (u >= 0 && v >= 0) {
      a[idx(u)][idx(v)] -= 1;
      a[idx(v)][idx(u)] -= 1;
    }
  }
  // Bareiss fraction-free elimination.
  cpp_int prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      std::size_t r = p + 1;
      while (r < k && a[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      a[i][p] = 0;
    }
    prev = a[p][p];
  }
  return sign * a[k - 1][k - 1];
}

int lower_bound_girth(const Graph& g) {
  const auto gi = girth(g);
  if (!gi) throw DomainError("girth bound needs a cycle; graph is a forest");
  return *gi - 1;
}

ExactResult sigma_exact(const Graph& g, const SolveOptions& opts) {
  require_connected(g);
  const int lb = lower_bound_for_search(g);
  if (opts.threads > 1 && g.num_edges() >= g.num_vertices()) return solve_parallel(g, opts, lb);
  return solve_sequential(g, opts, lb);
}

}  // namespace msst
