#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimerglue/poly.hpp"

namespace dimerglue {

// Edge subsets are bitmasks over the canonical edge order.
using EdgeSubset = uint64_t;

struct Edge {
    int u, v;
    uint32_t var;  // variable id carried by the edge, unique per edge
};

// Finite weighted multigraph. Loops and parallel edges allowed. The edge list
// order is canonical: it fixes monomial ordering and Pfaffian row order.
struct Graph {
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<std::string> var_names;  // indexed by variable id

    int edge_count() const { return (int)edges.size(); }
    void add_edge(int u, int v);
    void add_edge(int u, int v, uint32_t var);
    void validate() const;
    std::string var_name(uint32_t var) const;
};

// Per-edge direction bit: true means edge oriented u -> v.
struct Orientation {
    std::vector<bool> forward;
};

// Capacity limits for the exhaustive oracles (2^|E| scan / 2^|V| spin sum).
constexpr int kMaxEnumEdges = 24;
constexpr int kMaxIsingVertices = 20;

MultiPoly subset_monomial(const Graph& g, EdgeSubset s);

}  // namespace dimerglue
