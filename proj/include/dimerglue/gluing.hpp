#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimerglue/pfaffian.hpp"
#include "dimerglue/surface.hpp"

namespace dimerglue {

// A separating cut of a genus-2 embedded graph. Cut vertices are ordered
// along the curve; every other vertex and every edge is assigned a side.
// Side-1 edges may only cross bridges 1,2 and side-2 edges bridges 3,4.
struct CutData {
    std::vector<int> cut_vertices;  // v^1..v^k, k even
    std::vector<int> side_of_vertex;  // per vertex: 1, 2, or 0 for cut vertices
    std::vector<int> side_of_edge;    // per edge: 1 or 2
};

struct EmbeddedCut {
    EmbeddedGraph eg;  // genus 2
    CutData cut;

    void validate() const;
    int k() const { return (int)cut.cut_vertices.size(); }
};

// Exterior-algebra element: coefficients indexed by subsets of the 2k
// generators. Generator (i, eps) for cut vertex i and eps in {1,2} sits at
// bit 2*i + (eps-1).
struct ExteriorElement {
    std::map<uint32_t, MultiPoly> coeff;

    void add(uint32_t mask, const MultiPoly& p);
};

// Diagonal pairing: sum over common generator subsets of coefficient
// products (mirrored bases, no Koszul signs).
MultiPoly pair(const ExteriorElement& y, const ExteriorElement& z);

enum class GlueMode { Ising, Dimer };

// One side of the cut with the target (Ising) or core (Dimer) attached.
struct GluedPiece {
    int side = 1;
    GlueMode mode = GlueMode::Ising;
    Graph graph;                      // side graph + auxiliary construction
    std::vector<int> g_edge_index;    // piece edge -> original edge id, or -1 for aux
    std::vector<int> gen_of_edge;     // piece edge -> generator bit index, or -1
    std::vector<bool> unit_edge;      // aux edges whose variable is set to 1
    std::vector<int> g_vertex_of;     // piece vertex -> original vertex id, or -1
    std::vector<std::vector<int>> r;  // per piece edge, genus-1 r-vectors
    int aux_edge_begin = 0;           // first aux edge index (construction order)
    const EmbeddedCut* owner = nullptr;
};

std::pair<GluedPiece, GluedPiece> build_target(const EmbeddedCut& ec);
std::pair<GluedPiece, GluedPiece> build_core(const EmbeddedCut& ec);

// Unique matching of the core path+chord interior covering all u-vertices
// except the skipped ones; exists iff the skip set has even size (Obs 3.5).
std::optional<EdgeSubset> core_interior_completion(int k, const std::vector<bool>& skip);

// Full piece-edge subsets: original side subsets extended through the target
// (even mode) or the core (dimer mode); extensions are unique.
std::vector<EdgeSubset> piece_even_subsets(const GluedPiece& piece, const EmbeddedCut& ec);
std::vector<EdgeSubset> piece_matchings(const GluedPiece& piece, const EmbeddedCut& ec);

// The frozen core orientation: direction bits for the auxiliary edges in
// construction order (true = first-listed endpoint -> second), per side.
// Determined once by the exact sign-law solve and certified by the test
// suite (the sides sit in different sign gauges, so their tables differ).
const std::vector<bool>& core_orientation_bits(int k, int side);

// Solve for the aux-edge direction bits that make the matching-sign
// factorization hold on the given instances (development/certification path).
std::optional<std::vector<bool>> solve_core_orientation(
    const std::vector<EmbeddedCut>& instances, bool shared_sides = true);

// Partition polynomial of a piece as an exterior element. In Ising mode the
// optional form applies the induced genus-1 signs; in Dimer mode the
// optional orientation weights matchings by their Pfaffian sign.
ExteriorElement partition_as_exterior(const GluedPiece& piece, GlueMode mode,
                                      const QuadraticForm* q = nullptr,
                                      const Orientation* piece_orient = nullptr);

// Induced genus-1 forms: q1 from (a1,b1), q2 from (a2,b2).
QuadraticForm induced_form(const QuadraticForm& q, int side);

// Assemble the piece orientation: original-edge directions from d, aux edges
// from the frozen core table.
Orientation piece_orientation(const GluedPiece& piece, const Orientation& d,
                              const std::vector<bool>& aux_bits);

// Signed dimer polynomial of the full graph, F_D.
MultiPoly signed_dimer_polynomial(const Graph& g, const Orientation& d);

bool verify_unsigned_ising_glue(const EmbeddedCut& ec);
bool verify_signed_ising_glue(const EmbeddedCut& ec, const QuadraticForm& q);
bool verify_unsigned_dimer_glue(const EmbeddedCut& ec);
bool verify_signed_dimer_glue(const EmbeddedCut& ec, const Orientation& d);

}  // namespace dimerglue
