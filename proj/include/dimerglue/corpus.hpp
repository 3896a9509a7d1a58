#pragma once

#include <string>
#include <vector>

#include "dimerglue/gluing.hpp"

namespace dimerglue {

struct CorpusInstance {
    std::string name;
    EmbeddedCut ec;
};

// The fixture corpus for the gluing theorems: handcrafted degenerate cases
// plus seeded random instances, k in {2,4}, at most 12 edges per side. Every
// instance admits a Kasteleyn orientation (generation filter) and validates.
// Deterministic: same list on every run.
const std::vector<CorpusInstance>& glue_corpus();

// Genus-1 and genus-2 embedded graphs with perfect matchings and solvable
// sign law, for the Arf/Pfaffian checks.
struct SurfaceInstance {
    std::string name;
    EmbeddedGraph eg;
};
const std::vector<SurfaceInstance>& surface_corpus();

// Random multigraph for the van der Waerden sweep (loops and parallel edges
// allowed).
Graph random_multigraph(uint64_t seed, int max_vertices, int max_edges);

}  // namespace dimerglue
