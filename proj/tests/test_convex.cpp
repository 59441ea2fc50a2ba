#include <algorithm>
#include <random>

#include "doctest.h"
#include "msst/convex.hpp"
#include "msst/errors.hpp"
#include "msst/families.hpp"
#include "msst/solver.hpp"
#include "oracles.hpp"

using namespace msst;
using namespace msst::convex;

namespace {

Graph path_tau(int n) {
  std::vector<Edge> e;
  for (int y = 0; y + 1 < n; ++y) e.push_back({y, y + 1});
  return Graph(n, e);
}

bool disjoint(const YSet& a, const YSet& b) {
  return std::none_of(a.begin(), a.end(), [&](int y) { return std::binary_search(b.begin(), b.end(), y); });
}

bool subset(const YSet& a, const YSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

YSet minus(const YSet& a, const YSet& b) {
  YSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_level_invariants(const ConvexInstance& inst, const LevelStructure& ls) {
  const auto& s = inst.sigma();
  REQUIRE(ls.levels.front() == std::vector<std::size_t>{ls.root.set});
  std::vector<std::size_t> star;
  std::vector<bool> covered(static_cast<std::size_t>(inst.num_y()), false);
  for (const auto& level : ls.levels)
    for (const std::size_t i : level) {
      star.push_back(i);
      for (const int y : s[i]) covered[static_cast<std::size_t>(y)] = true;
    }
  CHECK(std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }));
  for (std::size_t a = 0; a < star.size(); ++a)
    for (std::size_t b = 0; b < star.size(); ++b)
      if (a != b) CHECK_FALSE(subset(s[star[a]], s[star[b]]));
  for (const auto& level : ls.levels)
    for (const std::size_t j : level)
      for (const std::size_t l : level)
        if (j < l && ls.predecessor[j] && ls.predecessor[j] == ls.predecessor[l]) {
          const YSet& yi = s[*ls.predecessor[j]];
          CHECK(disjoint(minus(s[j], yi), minus(s[l], yi)));
        }
  for (std::size_t k = 2; k < ls.levels.size(); ++k)
    for (const std::size_t i : ls.levels[k - 2])
      for (const std::size_t j : ls.levels[k]) CHECK(disjoint(s[i], s[j]));
  std::size_t total = star.size() + ls.discarded.size();
  CHECK(total == s.size());
  for (const DiscardedSet& d : ls.discarded) {
    CHECK_FALSE(disjoint(s[d.cover], s[d.set]));
    YSet cover = s[d.cover];
    if (d.successor) {
      CHECK(ls.predecessor[*d.successor] == d.cover);
      YSet u;
      std::set_union(cover.begin(), cover.end(), s[*d.successor].begin(), s[*d.successor].end(),
                     std::back_inserter(u));
      cover = u;
    }
    CHECK(subset(s[d.set], cover));
  }
}

}  // namespace

TEST_CASE("check_laminar") {
  std::vector<YSet> ok{{1}, {1, 2}, {3}};
  CHECK(check_laminar(ok));
  std::vector<YSet> bad{{1, 2}, {2, 3}};
  const LaminarCheck r = check_laminar(bad);
  CHECK_FALSE(r);
  REQUIRE(r.violating_pair);
  CHECK(*r.violating_pair == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(check_laminar(std::vector<YSet>{}));
}

TEST_CASE("validate_instance") {
  const Graph star(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK_THROWS_AS(validate_instance(star, {{0, 1}, {2, 1}, {0, 2}}), InstanceError);
  try {
    validate_instance(star, {{0, 1}, {0, 2}});
  } catch (const InstanceError& e) {
    CHECK(std::string(e.what()).find("Y_2") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_instance(path_tau(3), {{}}), InstanceError);
  CHECK_THROWS_AS(validate_instance(path_tau(3), {{0, 5}}), InstanceError);
  CHECK_THROWS_AS(validate_instance(Graph(3, {{0, 1}}), {{0}}), InstanceError);
  // Y_1 = {0,1} is maximal; the residues {2,3} and {2,4} cross.
  const Graph fork(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}});
  try {
    validate_instance(fork, {{0, 1}, {1, 2, 3}, {1, 2, 4}});
    FAIL("expected InstanceError");
  } catch (const InstanceError& e) {
    const std::string what = e.what();
    CHECK(what.find("Y_1") != std::string::npos);
    CHECK(what.find("Y_2") != std::string::npos);
    CHECK(what.find("Y_3") != std::string::npos);
  }
}

TEST_CASE("convex bipartite graphs validate") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int ny = 1 + static_cast<int>(rng() % 6);
    std::vector<YSet> sigma;
    const int m = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < m; ++i) {
      int a = static_cast<int>(rng() % ny);
      int b = static_cast<int>(rng() % ny);
      if (a > b) std::swap(a, b);
      YSet s;
      for (int y = a; y <= b; ++y) s.push_back(y);
      sigma.push_back(s);
    }
    CHECK_NOTHROW(validate_instance(path_tau(ny), sigma));
  }
}

TEST_CASE("select_root") {
  const ConvexInstance a = validate_instance(path_tau(4), {{0, 1}, {1, 2}, {2, 3}});
  CHECK(select_root(a).set == 0);
  CHECK(select_root(a).leaf == 0);
  const ConvexInstance chain = validate_instance(path_tau(4), {{0}, {0, 1, 2}, {0, 1}, {0, 1, 2, 3}});
  CHECK(select_root(chain).set == 3);
  const ConvexInstance one = validate_instance(path_tau(3), {{0, 1, 2}});
  CHECK(select_root(one).set == 0);
}

TEST_CASE("level_sets examples") {
  const ConvexInstance a = validate_instance(path_tau(4), {{0, 1}, {1, 2}, {2, 3}});
  const LevelStructure la = level_sets(a);
  CHECK(la.levels == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(la.height() == 3);
  CHECK(la.discarded.empty());

  const ConvexInstance b = validate_instance(path_tau(4), {{0, 1}, {1, 2}, {2, 3}, {1, 2}});
  const LevelStructure lb = level_sets(b);
  REQUIRE(lb.discarded.size() == 1);
  CHECK(lb.discarded[0].set == 3);
  CHECK(lb.discarded[0].cover == 0);
  CHECK(lb.discarded[0].successor == std::optional<std::size_t>{1});

  const ConvexInstance c = validate_instance(path_tau(3), {{0, 1, 2}});
  CHECK(level_sets(c).height() == 1);
}

TEST_CASE("construct_tree examples") {
  const ConvexInstance a = validate_instance(path_tau(4), {{0, 1}, {1, 2}, {2, 3}});
  const SpanningTree ta = construct_tree(a);
  CHECK(ta.edges().size() == 6);
  CHECK(stretch(a.graph(), ta).stretch == 1);

  const ConvexInstance b = validate_instance(path_tau(4), {{0, 1}, {1, 2}, {2, 3}, {1, 2}});
  const SpanningTree tb = construct_tree(b);
  CHECK(stretch(b.graph(), tb).stretch == 3);
  for (EdgeId e = 0; e < b.graph().num_edges(); ++e)
    if (!tb.contains(e)) CHECK(fundamental_cycle(b.graph(), tb, e).length() == 4);
}

TEST_CASE("path order runs away from the root leaf") {
  const Graph tau(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}});
  const ConvexInstance inst = validate_instance(tau, {{0, 1, 2}, {3, 2}, {4, 1}});
  const auto order = path_order(inst, 0);
  CHECK(order[0] == std::vector<int>{0, 1, 2});
  CHECK(order[1] == std::vector<int>{2, 3});
  CHECK(order[2] == std::vector<int>{1, 4});
}

TEST_CASE("random instances: invariants, tree, stretch 3, optimality") {
  int cyclic = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const ConvexInstance inst = random::convex_instance(seed, 5, 5);
    const LevelStructure ls = level_sets(inst);
    check_level_invariants(inst, ls);
    const Graph& g = inst.graph();
    CHECK(is_spanning_tree(g, construct_tree(inst, ls).edges()));
    const SpanningTree t = construct_tree(inst);
    CHECK(is_spanning_tree(g, t.edges()));
    if (g.num_edges() == g.num_vertices() - 1) continue;
    ++cyclic;
    CAPTURE(seed);
    CHECK(stretch(g, t).stretch == 3);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (!t.contains(e)) CHECK(fundamental_cycle(g, t, e).length() == 4);
    if (g.num_edges() <= 16) CHECK(oracle::sigma(g) == 3);
    CHECK(sigma_exact(g).sigma == 3);
  }
  CHECK(cyclic > 100);
}

TEST_CASE("a larger valid instance where stretch 3 is unreachable") {
  // Y_2 and Y_4 overlap on {0,3}; their residues hang off both ends of the overlap.
  const Graph tau(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}});
  const ConvexInstance inst = validate_instance(tau, {{3, 5}, {3, 4}, {0, 1, 3, 5}, {0, 1}, {0, 2, 3, 4}, {0, 2}});
  CHECK(oracle::sigma(inst.graph()) == 5);
  CHECK(stretch(inst.graph(), construct_tree(inst)).stretch == 5);
}
