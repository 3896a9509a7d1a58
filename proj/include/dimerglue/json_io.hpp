#pragma once

#include <string>

#include "dimerglue/gluing.hpp"

namespace dimerglue {

// JSON graph format: {"vertices": n, "edges": [{"u":i,"v":j,"var":"x3"}...]}.
// Embeddings add "genus" and per-edge "r"; an optional "rotation" gives the
// cyclic dart order per vertex (darts are 2e at u, 2e+1 at v). Cut files add
// "cut": {"vertices": [...], "side": {...}, "edge_sides": {...}}.
Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);

EmbeddedGraph embedding_from_json(const std::string& text);
std::string embedding_to_json(const EmbeddedGraph& eg);

EmbeddedCut cut_from_json(const std::string& text);
std::string cut_to_json(const EmbeddedCut& ec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dimerglue
