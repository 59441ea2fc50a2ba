#include "msst/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "msst/constructions.hpp"
#include "msst/convex.hpp"
#include "msst/errors.hpp"
#include "msst/graph_io.hpp"
#include "msst/planar.hpp"
#include "msst/solver.hpp"

namespace msst::cli {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError(what + ": expected an integer, got '" + s + "'");
}

std::vector<int> int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_int(item, what));
  return out;
}

Json big_count(const boost::multiprecision::cpp_int& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
  return c.str();
}

bool is_grid(const FamilySpec& s) {
  return std::holds_alternative<family::RectGrid>(s) || std::holds_alternative<family::TriGrid>(s) ||
         std::holds_alternative<family::TriRectGrid>(s) || std::holds_alternative<family::Cube>(s);
}

std::optional<int> girth_bound(const Graph& g) {
  if (g.num_edges() < g.num_vertices()) return std::nullopt;
  return lower_bound_girth(g);
}

std::optional<int> level_bound(const FamilySpec& s) {
  if (!is_grid(s) || std::holds_alternative<family::Cube>(s)) return std::nullopt;
  return planar::stretch_lower_bound(planar::embed_grid(s));
}

Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json family_meta(const FamilyGraph& fg) {
  Json meta{{"family", family_name(fg.spec)}};
  if (!fg.parts.empty()) meta["parts"] = fg.parts;
  if (fg.grid) meta["coords"] = fg.grid->coords;
  if (const auto* c = std::get_if<family::GeneralizedConvex>(&fg.spec)) {
    meta["tau_edges"] = edge_pairs_to_json(c->instance.tau().edges());
    meta["sigma"] = c->instance.sigma();
  }
  return meta;
}

convex::ConvexInstance parse_instance(const Json& doc) {
  const Json& src = doc.contains("tau_edges") ? doc : doc.value("meta", Json::object());
  if (!src.contains("tau_edges") || !src.contains("sigma"))
    throw ValidationError("instance JSON needs \"tau_edges\" and \"sigma\"");
  std::vector<Edge> tau_edges;
  std::vector<convex::YSet> sigma;
  int ny = src.value("num_y", 0);
  try {
    for (const auto& p : src.at("tau_edges")) {
      const int a = p.at(0).get<int>();
      const int b = p.at(1).get<int>();
      tau_edges.push_back({std::min(a, b), std::max(a, b)});
      ny = std::max({ny, a + 1, b + 1});
    }
    for (const auto& s : src.at("sigma")) {
      convex::YSet set = s.get<convex::YSet>();
      for (const int y : set) ny = std::max(ny, y + 1);
      sigma.push_back(std::move(set));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed instance JSON: ") + e.what());
  }
  return make_generalized_convex(Graph(std::max(ny, 1), tau_edges), sigma);
}

// ---------------------------------------------------------------------------

struct Context {
  std::ostream& out;
  std::ostream& err;
};

int cmd_generate(Context& ctx, const std::vector<std::string>& fam, std::uint64_t seed, bool dot) {
  const FamilyGraph fg = make(parse_family(fam, seed));
  if (dot) {
    DotStyle style;
    style.name = "G";
    if (is_grid(fg.spec)) style.positions = planar::embed_grid(fg.spec).positions;
    ctx.out << graph_to_dot(fg.graph, style);
    return kOk;
  }
  ctx.out << graph_to_json(fg.graph, family_meta(fg)).dump(2) << "\n";
  return kOk;
}

int cmd_construct(Context& ctx, const std::vector<std::string>& fam, std::uint64_t seed, bool verify,
                  std::uint64_t max_trees, int threads, bool dot) {
  const auto start = Clock::now();
  const FamilyGraph fg = make(parse_family(fam, seed));
  const FormulaResult r = construct(fg);
  const Graph& g = fg.graph;
  if (dot) {
    DotStyle style;
    if (is_grid(fg.spec)) style.positions = planar::embed_grid(fg.spec).positions;
    ctx.out << tree_to_dot(g, r.tree, style);
    return kOk;
  }

  Json report{{"schema", 1},
              {"command", "construct"},
              {"family", family_name(fg.spec)},
              {"n", g.num_vertices()},
              {"m", g.num_edges()},
              {"sigma_formula", r.formula.sigma},
              {"degenerate", r.formula.degenerate},
              {"sigma_measured", r.certificate.stretch},
              {"girth_bound", optional_json(girth_bound(g))},
              {"level_bound", optional_json(level_bound(fg.spec))},
              {"tree_edges", edge_pairs_to_json(r.tree.edge_pairs(g))}};
  if (r.certificate.witness_edge) {
    const Edge w = g.edge(*r.certificate.witness_edge);
    report["witness_edge"] = {w.u, w.v};
    report["witness_path"] = r.certificate.witness_path;
  }
  int code = kOk;
  if (verify) {
    SolveOptions opts;
    opts.max_trees = max_trees;
    opts.threads = threads;
    const ExactResult ex = sigma_exact(g, opts);
    report["sigma_exact"] = ex.sigma;
    report["trees_enumerated"] = ex.trees_enumerated;
    report["spanning_tree_count"] = big_count(count_spanning_trees_kirchhoff(g));
    const bool agree = ex.sigma == r.formula.sigma && ex.sigma == r.certificate.stretch;
    report["agree"] = agree;
    if (!agree) code = kDisagreement;
  }
  report["runtime_ms"] = elapsed_ms(start);
  ctx.out << report.dump(2) << "\n";
  return code;
}

int cmd_solve(Context& ctx, const std::string& path, bool no_prune, std::uint64_t max_trees, int threads,
              bool dot) {
  const auto start = Clock::now();
  const GraphDocument doc = parse_graph_json(read_file(path));
  const Graph& g = doc.graph;
  SolveOptions opts;
  opts.use_pruning = !no_prune;
  opts.max_trees = max_trees;
  opts.threads = threads;
  const ExactResult ex = sigma_exact(g, opts);
  if (dot) {
    ctx.out << tree_to_dot(g, ex.optimal_tree);
    return kOk;
  }
  Json report{{"schema", 1},
              {"command", "solve"},
              {"input", path},
              {"n", g.num_vertices()},
              {"m", g.num_edges()},
              {"sigma", ex.sigma},
              {"optimal_tree", edge_pairs_to_json(ex.optimal_tree.edge_pairs(g))},
              {"trees_enumerated", ex.trees_enumerated},
              {"pruned", ex.pruned},
              {"lower_bound", ex.lower_bound_used},
              {"spanning_tree_count", big_count(count_spanning_trees_kirchhoff(g))}};
  if (doc.meta.contains("family")) report["family"] = doc.meta["family"];
  report["runtime_ms"] = elapsed_ms(start);
  ctx.out << report.dump(2) << "\n";
  return kOk;
}

int cmd_convex(Context& ctx, const std::string& path, bool dot) {
  const auto start = Clock::now();
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  const convex::ConvexInstance inst = parse_instance(doc);
  const convex::LevelStructure ls = convex::level_sets(inst);
  const SpanningTree t = convex::construct_tree(inst);
  const Graph& g = inst.graph();
  if (dot) {
    ctx.out << tree_to_dot(g, t);
    return kOk;
  }

  Json discarded = Json::array();
  for (const convex::DiscardedSet& d : ls.discarded) {
    discarded.push_back({{"set", d.set},
                         {"cover", d.cover},
                         {"successor", d.successor ? Json(*d.successor) : Json(nullptr)}});
  }
  Json predecessor = Json::object();
  for (std::size_t i = 0; i < ls.predecessor.size(); ++i)
    if (ls.predecessor[i]) predecessor[std::to_string(i)] = *ls.predecessor[i];
  // x_i - y pairs rather than graph vertex ids.
  Json tree = Json::array();
  for (const Edge& e : t.edge_pairs(g)) tree.push_back({e.u, e.v - inst.num_x()});
  std::sort(tree.begin(), tree.end());

  const StretchCertificate cert = stretch(g, t);
  Json report{{"schema", 1},
              {"command", "convex"},
              {"input", path},
              {"num_x", inst.num_x()},
              {"num_y", inst.num_y()},
              {"root", {{"set", ls.root.set}, {"leaf", ls.root.leaf}}},
              {"levels", ls.levels},
              {"predecessor", predecessor},
              {"discarded", discarded},
              {"tree_xy", tree},
              {"stretch", cert.stretch},
              {"degenerate", g.num_edges() < g.num_vertices()}};
  report["runtime_ms"] = elapsed_ms(start);
  ctx.out << report.dump(2) << "\n";
  return kOk;
}

int cmd_levels(Context& ctx, const std::vector<std::string>& fam, bool dual_dot) {
  const FamilySpec spec = parse_family(fam);
  if (!is_grid(spec)) throw ParameterError("levels needs rect-grid, tri-grid, tri-rect-grid or cube");
  const planar::PlaneGraph pg = planar::embed_grid(spec);
  if (dual_dot) {
    if (std::holds_alternative<family::Cube>(spec)) {
      ctx.out << planar::dual_overlay_dot(pg);
    } else {
      const SpanningTree t = construct(spec).tree;
      ctx.out << planar::dual_overlay_dot(pg, &t);
    }
    return kOk;
  }
  const planar::FaceLevels fl = planar::face_levels(pg);
  ctx.out << family_name(spec) << "\n";
  ctx.out << "lambda_max " << fl.lambda_max << "\n";
  if (!std::holds_alternative<family::Cube>(spec))
    ctx.out << "stretch_lower_bound " << planar::stretch_lower_bound(pg) << "\n";
  ctx.out << planar::level_table(pg, fl);
  return kOk;
}

// ---------------------------------------------------------------------------

struct Row {
  std::string name;
  int formula = 0;
  int measured = 0;
  int exact = 0;
  std::optional<int> girth;
  std::optional<int> level;
  std::uint64_t trees = 0;
  bool ok = false;
};

std::vector<FamilySpec> reproduce_matrix() {
  std::vector<FamilySpec> specs;
  for (int n = 3; n <= 6; ++n) specs.push_back(family::Complete{n});
  for (int n = 3; n <= 8; ++n) specs.push_back(family::Cycle{n});
  for (int n = 4; n <= 7; ++n) specs.push_back(family::Wheel{n});
  for (int n = 4; n <= 6; ++n) specs.push_back(family::Diamond{n});
  for (int m = 2; m <= 4; ++m)
    for (int n = m; n <= 4; ++n) specs.push_back(family::CompleteBipartite{m, n});
  specs.push_back(family::Petersen{});
  for (const std::vector<int>& parts :
       {std::vector<int>{1, 1, 1}, {1, 2, 2}, {1, 3, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {1, 1, 2, 2}})
    specs.push_back(family::CompleteMultipartite{parts});
  specs.push_back(family::Split{3, {{0, 1}, {1, 2}}});
  specs.push_back(family::Split{3, {{0, 1}, {1, 2}, {0, 2}}});
  specs.push_back(family::Split{4, {{0}, {0, 1}, {0, 2, 3}}});
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const FamilyGraph fg = random::split(seed, 4, 3);
    if (fg.graph.num_edges() >= fg.graph.num_vertices()) specs.push_back(fg.spec);
  }
  specs.push_back(family::Chain{3, {1, 2, 3}});
  specs.push_back(family::Chain{4, {2, 2, 4}});
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const convex::ConvexInstance inst = random::convex_instance(seed, 4, 4);
    if (inst.graph().num_edges() >= inst.graph().num_vertices()) specs.push_back(family::GeneralizedConvex{inst});
  }
  for (const auto& [m, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}}) specs.push_back(family::RectGrid{m, n});
  for (int n = 1; n <= 3; ++n) specs.push_back(family::TriGrid{n});
  for (const auto& [m, n] : {std::pair{2, 2}, {2, 3}, {3, 3}}) specs.push_back(family::TriRectGrid{m, n});
  return specs;
}

int cmd_reproduce(Context& ctx, int threads, bool json) {
  const auto start = Clock::now();
  std::vector<Row> rows;
  for (const FamilySpec& spec : reproduce_matrix()) {
    const FamilyGraph fg = make(spec);
    Row row;
    row.name = family_name(spec);
    SolveOptions opts;
    opts.threads = threads;
    const ExactResult ex = sigma_exact(fg.graph, opts);
    row.exact = ex.sigma;
    row.trees = ex.trees_enumerated;
    row.girth = girth_bound(fg.graph);
    row.level = level_bound(spec);
    try {
      const FormulaResult r = construct(fg);
      row.formula = r.formula.sigma;
      row.measured = r.certificate.stretch;
    } catch (const InvariantError&) {
      row.formula = sigma_formula(spec).sigma;
      row.measured = -1;
    }
    row.ok = row.formula == row.exact && row.measured == row.exact && (!row.girth || *row.girth <= row.exact) &&
             (!row.level || *row.level <= row.exact);
    rows.push_back(row);
  }
  const auto bad = std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.ok; });

  if (json) {
    Json arr = Json::array();
    for (const Row& r : rows)
      arr.push_back({{"family", r.name},
                     {"sigma_formula", r.formula},
                     {"sigma_measured", r.measured},
                     {"sigma_exact", r.exact},
                     {"girth_bound", optional_json(r.girth)},
                     {"level_bound", optional_json(r.level)},
                     {"trees_enumerated", r.trees},
                     {"ok", r.ok}});
    Json report{{"schema", 1}, {"command", "reproduce"}, {"rows", arr}, {"disagreements", bad}};
    report["runtime_ms"] = elapsed_ms(start);
    ctx.out << report.dump(2) << "\n";
  } else {
    std::size_t width = 6;
    for (const Row& r : rows) width = std::max(width, r.name.size());
    const auto cell = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
    ctx.out << std::left << std::setw(static_cast<int>(width)) << "family" << std::right << std::setw(9) << "formula"
            << std::setw(10) << "measured" << std::setw(7) << "exact" << std::setw(7) << "g-1" << std::setw(7)
            << "level" << std::setw(10) << "trees"
            << "  status\n";
    for (const Row& r : rows) {
      ctx.out << std::left << std::setw(static_cast<int>(width)) << r.name << std::right << std::setw(9) << r.formula
              << std::setw(10) << r.measured << std::setw(7) << r.exact << std::setw(7) << cell(r.girth)
              << std::setw(7) << cell(r.level) << std::setw(10) << r.trees << "  " << (r.ok ? "ok" : "MISMATCH")
              << "\n";
    }
    ctx.out << rows.size() << " rows, " << bad << " disagreements\n";
  }
  return bad == 0 ? kOk : kDisagreement;
}

}  // namespace

FamilySpec parse_family(const std::vector<std::string>& tokens, std::uint64_t seed) {
  if (tokens.empty()) throw ParameterError("missing family name");
  const std::string& name = tokens[0];
  const std::vector<std::string> p(tokens.begin() + 1, tokens.end());
  const auto want = [&](std::size_t k) {
    if (p.size() != k)
      throw ParameterError(name + " takes " + std::to_string(k) + " parameter(s), got " + std::to_string(p.size()));
  };
  const auto num = [&](std::size_t i) { return to_int(p[i], name); };

  if (name == "complete") return want(1), FamilySpec{family::Complete{num(0)}};
  if (name == "cycle") return want(1), FamilySpec{family::Cycle{num(0)}};
  if (name == "wheel") return want(1), FamilySpec{family::Wheel{num(0)}};
  if (name == "diamond") return want(1), FamilySpec{family::Diamond{num(0)}};
  if (name == "complete-bipartite") return want(2), FamilySpec{family::CompleteBipartite{num(0), num(1)}};
  if (name == "petersen") return want(0), FamilySpec{family::Petersen{}};
  if (name == "cube") return want(0), FamilySpec{family::Cube{}};
  if (name == "rect-grid") return want(2), FamilySpec{family::RectGrid{num(0), num(1)}};
  if (name == "tri-grid") return want(1), FamilySpec{family::TriGrid{num(0)}};
  if (name == "tri-rect-grid") return want(2), FamilySpec{family::TriRectGrid{num(0), num(1)}};
  if (name == "multipartite") {
    family::CompleteMultipartite mp;
    for (std::size_t i = 0; i < p.size(); ++i) mp.parts.push_back(num(i));
    return mp;
  }
  if (name == "split") {
    if (p.empty()) throw ParameterError("split takes a clique size and Y adjacency lists");
    family::Split s{num(0), {}};
    for (std::size_t i = 1; i < p.size(); ++i) s.y_adjacency.push_back(int_list(p[i], name));
    return s;
  }
  if (name == "chain") {
    if (p.size() < 2) throw ParameterError("chain takes |Y| and one or more degrees");
    family::Chain c{num(0), {}};
    for (std::size_t i = 1; i < p.size(); ++i) c.degrees.push_back(num(i));
    return c;
  }
  if (name == "random-split" || name == "random-convex") {
    if (!p.empty() && p.size() != 2) throw ParameterError(name + " takes no parameters or max_x max_y");
    const bool split = name == "random-split";
    const int mx = p.empty() ? (split ? 4 : 5) : num(0);
    const int my = p.empty() ? (split ? 3 : 5) : num(1);
    if (split) return random::split(seed, mx, my).spec;
    return family::GeneralizedConvex{random::convex_instance(seed, mx, my)};
  }
  throw ParameterError("unknown family '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum stretch spanning trees: generators, constructions, exact solver"};
  app.require_subcommand(1);

  std::vector<std::string> fam;
  std::string path;
  std::uint64_t seed = 0;
  std::uint64_t max_trees = kDefaultTreeCap;
  int threads = 1;
  bool dot = false;
  bool verify = false;
  bool no_prune = false;
  bool dual_dot = false;
  bool json = false;

  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("family", fam, "family name and parameters")->required();
  };

  CLI::App* gen = app.add_subcommand("generate", "emit a family graph as JSON or DOT");
  add_family(gen);
  gen->add_option("--seed", seed, "seed for random-split / random-convex");
  gen->add_flag("--dot", dot, "DOT instead of JSON");

  CLI::App* con = app.add_subcommand("construct", "build the closed-form tree and report its stretch");
  add_family(con);
  con->add_option("--seed", seed, "seed for random-split / random-convex");
  con->add_flag("--verify", verify, "also run the exact solver");
  con->add_option("--max-trees", max_trees, "enumeration cap for --verify");
  con->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
  con->add_flag("--dot", dot, "emit the tree as DOT");

  CLI::App* sol = app.add_subcommand("solve", "exact minimum stretch of a graph JSON file");
  sol->add_option("graph", path, "graph JSON")->required();
  sol->add_flag("--no-prune", no_prune, "enumerate every spanning tree");
  sol->add_option("--max-trees", max_trees, "enumeration cap");
  sol->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
  sol->add_flag("--dot", dot, "emit the optimal tree as DOT");

  CLI::App* cvx = app.add_subcommand("convex", "level structure and stretch-3 tree of a convex instance");
  cvx->add_option("instance", path, "instance JSON {\"tau_edges\", \"sigma\"}")->required();
  cvx->add_flag("--dot", dot, "emit the tree as DOT");

  CLI::App* lev = app.add_subcommand("levels", "face levels of a grid");
  add_family(lev);
  lev->add_flag("--dual-dot", dual_dot, "emit the primal/dual overlay as DOT");

  CLI::App* rep = app.add_subcommand("reproduce", "formula vs construction vs exact for every family");
  rep->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
  rep->add_flag("--json", json, "JSON instead of a table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  Context ctx{out, err};
  try {
    if (gen->parsed()) return cmd_generate(ctx, fam, seed, dot);
    if (con->parsed()) return cmd_construct(ctx, fam, seed, verify, max_trees, threads, dot);
    if (sol->parsed()) return cmd_solve(ctx, path, no_prune, max_trees, threads, dot);
    if (cvx->parsed()) return cmd_convex(ctx, path, dot);
    if (lev->parsed()) return cmd_levels(ctx, fam, dual_dot);
    if (rep->parsed()) return cmd_reproduce(ctx, threads, json);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (" << e.partial_count() << " trees enumerated)\n";
    return kResource;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kDisagreement;
  }
  return kValidation;
}

}  // namespace msst::cli
