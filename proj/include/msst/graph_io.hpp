#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "msst/graph.hpp"

namespace msst {

using Json = nlohmann::json;
using Point = std::array<double, 2>;

struct GraphDocument {
  Graph graph;
  Json meta = Json::object();
};

/// {"n": int, "edges": [[u,v],...], "meta": {...}} with pairs and edge list sorted.
Json graph_to_json(const Graph& g, const Json& meta = Json::object());

/// Accepts the format above; edge order is kept as given. Throws ValidationError.
GraphDocument graph_from_json(const Json& doc);
GraphDocument parse_graph_json(std::string_view text);

/// Edge list as [[u,v],...], sorted.
Json edge_pairs_to_json(const std::vector<Edge>& pairs);

struct DotStyle {
  std::string name = "G";
  std::vector<Point> positions;  // optional layout hints, pinned with '!'
};

std::string graph_to_dot(const Graph& g, const DotStyle& style = {});

/// Tree edges solid, cotree edges dashed.
std::string tree_to_dot(const Graph& g, const SpanningTree& t, const DotStyle& style = {});

}  // namespace msst
