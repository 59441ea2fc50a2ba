#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "msst/constructions.hpp"
#include "msst/errors.hpp"
#include "msst/solver.hpp"
#include "oracles.hpp"

using namespace msst;

TEST_CASE("sigma_formula examples") {
  CHECK(sigma_formula(family::RectGrid{4, 5}).sigma == 5);
  CHECK(sigma_formula(family::TriGrid{4}).sigma == 4);
  CHECK(sigma_formula(family::TriRectGrid{5, 6}).sigma == 5);
  CHECK(sigma_formula(family::Cycle{9}).sigma == 8);
  CHECK(sigma_formula(family::CompleteMultipartite{{1, 3, 4}}).sigma == 2);
  CHECK(sigma_formula(family::CompleteMultipartite{{2, 3, 4}}).sigma == 3);
  const SigmaFormula deg = sigma_formula(family::CompleteBipartite{1, 4});
  CHECK(deg.sigma == 1);
  CHECK(deg.degenerate);
  CHECK(sigma_formula(family::Split{2, {{0}}}).degenerate);
  CHECK_THROWS_AS(sigma_formula(family::Cube{}), DomainError);
}

TEST_CASE("stars and double stars") {
  const Graph k5 = make(family::Complete{5}).graph;
  CHECK(stretch(k5, star_tree(k5, 0)).stretch == 2);
  const FamilyGraph w6 = make(family::Wheel{6});
  CHECK(stretch(w6.graph, star_tree(w6.graph, *w6.hub)).stretch == 2);
  CHECK_THROWS_AS(star_tree(w6.graph, 1), DomainError);
  const FamilyGraph k33 = make(family::CompleteBipartite{3, 3});
  const SpanningTree ds = double_star_tree(k33.graph, k33.parts[0], 0, 3);
  CHECK(stretch(k33.graph, ds).stretch == 3);
}

TEST_CASE("multipartite_tree") {
  for (const std::vector<int>& parts : {std::vector<int>{1, 2, 3}, {2, 2, 2}, {1, 1, 1}}) {
    const FamilyGraph fg = make(family::CompleteMultipartite{parts});
    const SpanningTree t = multipartite_tree(fg.graph, fg.parts);
    CHECK(stretch(fg.graph, t).stretch == (parts[0] == 1 ? 2 : 3));
  }
  const FamilyGraph two = make(family::CompleteMultipartite{{2, 3}});
  CHECK_THROWS_AS(multipartite_tree(two.graph, two.parts), ParameterError);
}

TEST_CASE("classify_split and split_tree") {
  const FamilyGraph a = make_split(3, {{0, 1}, {1, 2}});
  const SplitClass ca = classify_split(a.graph, a.parts[0], a.parts[1]);
  CHECK(ca.sigma == 2);
  CHECK(ca.witness == Vertex{1});
  CHECK(stretch(a.graph, split_tree(a.graph, a.parts[0], a.parts[1])).stretch == 2);

  const FamilyGraph b = make_split(3, {{0, 1}, {1, 2}, {0, 2}});
  const SplitClass cb = classify_split(b.graph, b.parts[0], b.parts[1]);
  CHECK(cb.sigma == 3);
  CHECK(cb.refutations.size() == 3);
  CHECK(oracle::sigma(b.graph) == 3);
  CHECK(stretch(b.graph, split_tree(b.graph, b.parts[0], b.parts[1])).stretch == 3);

  const FamilyGraph k4 = make_split(4, {});
  CHECK(classify_split(k4.graph, k4.parts[0], k4.parts[1]).sigma == 2);
  CHECK(stretch(k4.graph, split_tree(k4.graph, k4.parts[0], k4.parts[1])).stretch == 2);

  CHECK_THROWS_AS(classify_split(b.graph, std::vector<Vertex>{0, 1}, std::vector<Vertex>{2, 3, 4, 5}),
                  ValidationError);
  const FamilyGraph p3 = make_split(2, {{0}});
  CHECK_THROWS_AS(classify_split(p3.graph, p3.parts[0], p3.parts[1]), DomainError);
}

TEST_CASE("classify_split agrees with the oracle and ignores relabeling") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const FamilyGraph fg = random::split(seed, 4, 3);
    const Graph& g = fg.graph;
    if (g.num_edges() == g.num_vertices() - 1) continue;
    const SplitClass c = classify_split(g, fg.parts[0], fg.parts[1]);
    CHECK(c.sigma == oracle::sigma(g));
    std::vector<Vertex> perm(static_cast<std::size_t>(g.num_vertices()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = relabel(g, perm);
    std::vector<Vertex> x;
    std::vector<Vertex> y;
    for (const Vertex v : fg.parts[0]) x.push_back(perm[static_cast<std::size_t>(v)]);
    for (const Vertex v : fg.parts[1]) y.push_back(perm[static_cast<std::size_t>(v)]);
    CHECK(classify_split(h, x, y).sigma == c.sigma);
  }
}

TEST_CASE("petersen_tree") {
  const Graph g = make(family::Petersen{}).graph;
  const SpanningTree t = petersen_tree();
  CHECK(t.edges().size() == 9);
  CHECK(stretch(g, t).stretch == 4);
  int cotree = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!t.contains(e)) {
      ++cotree;
      CHECK(fundamental_cycle(g, t, e).length() == 5);
    }
  CHECK(cotree == 6);
}

TEST_CASE("grid trees") {
  CHECK(stretch(make(family::RectGrid{4, 5}).graph, rect_grid_tree(4, 5)).stretch == 5);
  CHECK(stretch(make(family::RectGrid{3, 6}).graph, rect_grid_tree(3, 6)).stretch == 3);
  CHECK(stretch(make(family::RectGrid{2, 2}).graph, rect_grid_tree(2, 2)).stretch == 3);
  CHECK(stretch(make(family::TriGrid{4}).graph, tri_grid_tree(4)).stretch == 4);
  CHECK(stretch(make(family::TriGrid{1}).graph, tri_grid_tree(1)).stretch == 2);
  CHECK(stretch(make(family::TriGrid{2}).graph, tri_grid_tree(2)).stretch == 3);
  CHECK(stretch(make(family::TriRectGrid{5, 6}).graph, tri_rect_grid_tree(5, 6)).stretch == 5);
  CHECK(stretch(make(family::TriRectGrid{2, 7}).graph, tri_rect_grid_tree(2, 7)).stretch == 2);
  CHECK(stretch(make(family::TriRectGrid{4, 5}).graph, tri_rect_grid_tree(4, 5)).stretch == 4);
  for (int n = 1; n <= 12; ++n)
    CHECK(stretch(make(family::TriGrid{n}).graph, tri_grid_tree(n)).stretch == (2 * n + 2) / 3 + 1);
  CHECK_THROWS_AS(rect_grid_tree(3, 2), ParameterError);
}

TEST_CASE("construct matches sigma_exact on small instances of every family") {
  const std::vector<FamilySpec> specs{
      family::Complete{2},          family::Complete{5},         family::Cycle{6},
      family::Wheel{6},             family::Diamond{5},          family::CompleteBipartite{2, 3},
      family::CompleteBipartite{1, 3}, family::CompleteMultipartite{{1, 2, 3}},
      family::CompleteMultipartite{{2, 2, 3}}, family::CompleteMultipartite{{2, 3}},
      family::Petersen{},           family::Split{3, {{0, 1}, {1, 2}}},
      family::Chain{3, {1, 2, 3}},  family::Chain{3, {2, 3}},    family::RectGrid{3, 3},
      family::TriGrid{3},           family::TriRectGrid{3, 3}};
  for (const FamilySpec& s : specs) {
    CAPTURE(family_name(s));
    const FormulaResult r = construct(s);
    CHECK(r.certificate.stretch == r.formula.sigma);
    const Graph g = make(s).graph;
    CHECK(sigma_exact(g).sigma == r.formula.sigma);
  }
  CHECK_THROWS_AS(construct(family::Cube{}), DomainError);
}

TEST_CASE("lower bound: every tree of K_{2,2,2} has stretch at least 3") {
  const Graph g = make(family::CompleteMultipartite{{2, 2, 2}}).graph;
  enumerate_spanning_trees(g, [&](std::span<const EdgeId> t) {
    CHECK(stretch(g, SpanningTree::from_edges(g, t)).stretch >= 3);
  });
}
