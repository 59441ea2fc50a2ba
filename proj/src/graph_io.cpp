#include "msst/graph_io.hpp"

#include <algorithm>
#include <sstream>

#include "msst/errors.hpp"

namespace msst {

Json edge_pairs_to_json(const std::vector<Edge>& pairs) {
  std::vector<Edge> sorted = pairs;
  for (Edge& e : sorted)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(sorted.begin(), sorted.end());
  Json out = Json::array();
  for (const Edge& e : sorted) out.push_back({e.u, e.v});
  return out;
}

Json graph_to_json(const Graph& g, const Json& meta) {
  Json doc;
  doc["n"] = g.num_vertices();
  doc["edges"] = edge_pairs_to_json(g.edges());
  doc["meta"] = meta.is_null() ? Json::object() : meta;
  return doc;
}

GraphDocument graph_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("graph JSON: expected an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ValidationError("graph JSON: missing integer \"n\"");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw ValidationError("graph JSON: missing array \"edges\"");
  const auto n = doc["n"].get<long long>();
  if (n < 0 || n > 1'000'000) throw ValidationError("graph JSON: \"n\" out of range");
  std::vector<Edge> edges;
  for (const Json& pair : doc["edges"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw ValidationError("graph JSON: each edge must be a pair of integers");
    edges.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  GraphDocument out{Graph(static_cast<int>(n), std::move(edges)), Json::object()};
  if (doc.contains("meta")) out.meta = doc["meta"];
  return out;
}

GraphDocument parse_graph_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

namespace {

void write_nodes(std::ostringstream& os, const Graph& g, const DotStyle& style) {
  const bool pinned = static_cast<int>(style.positions.size()) == g.num_vertices();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    os << "  " << v;
    if (pinned) os << " [pos=\"" << style.positions[static_cast<std::size_t>(v)][0] << ','
                   << style.positions[static_cast<std::size_t>(v)][1] << "!\"]";
    os << ";\n";
  }
}

}  // namespace

std::string graph_to_dot(const Graph& g, const DotStyle& style) {
  std::ostringstream os;
  os << "graph " << style.name << " {\n";
  write_nodes(os, g, style);
  for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

std::string tree_to_dot(const Graph& g, const SpanningTree& t, const DotStyle& style) {
  std::ostringstream os;
  os << "graph " << style.name << " {\n";
  write_nodes(os, g, style);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    os << "  " << g.edge(e).u << " -- " << g.edge(e).v;
    os << (t.contains(e) ? " [style=solid];\n" : " [style=dashed];\n");
  }
  os << "}\n";
  return os.str();
}

}  // namespace msst
