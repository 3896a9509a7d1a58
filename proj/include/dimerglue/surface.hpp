#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dimerglue/graph.hpp"
#include "dimerglue/kernels.hpp"

namespace dimerglue {

// Graph embedded in the highway surface S_g: base polygon plus 2g bridges,
// each edge carrying the count r_i(e) of straight lines it draws in bridge i.
struct EmbeddedGraph {
    Graph graph;
    int genus = 1;  // 1 or 2
    std::vector<std::vector<int>> r;  // per edge, length 2g, entries >= 0
    // Optional rotation system: cyclic order of incident edge ends per vertex,
    // entries are dart ids 2*edge (at u) and 2*edge+1 (at v).
    std::vector<std::vector<int>> rotation;

    void validate() const;
    int bridges() const { return 2 * genus; }
};

// q(a_i), q(b_i) as bits; the basis pairs (a_i, b_i) follow bridges
// (2i-1, 2i) in order.
struct QuadraticForm {
    std::vector<int> qa, qb;  // length g each, bits

    int genus() const { return (int)qa.size(); }
    static std::vector<QuadraticForm> all(int g);
};

std::vector<int> r_vector(const EmbeddedGraph& eg, EdgeSubset s);
std::vector<int> homology_class(const EmbeddedGraph& eg, EdgeSubset s);

// (-1)^{m(E')} with m = sum_i r_{2i-1} r_{2i} + r_{2i-1} q(a_i) + r_{2i} q(b_i).
int even_subset_sign(const EmbeddedGraph& eg, EdgeSubset s, const QuadraticForm& q);

MultiPoly signed_even_polynomial(const EmbeddedGraph& eg, const QuadraticForm& q);

int arf_invariant(const QuadraticForm& q);

// Intersection pairing of two homology classes (mod 2).
int intersection_form(const std::vector<int>& h1, const std::vector<int>& h2);

struct ArfReconstructionReport {
    bool ok = false;
    bool used_fallback = false;
    std::vector<Rational> coefficients;  // per form, in QuadraticForm::all order
    std::string note;
};

// E_G == (1/2^g) sum_q (-1)^{Arf(q)} E_{G,q}; on mismatch solves the general
// 4^g-coefficient system over the enumerated even subsets.
ArfReconstructionReport arf_reconstruction_check(const EmbeddedGraph& eg);

// Self-intersections of a matching in the special drawing:
// sum_i r_{2i-1}(M) * r_{2i}(M).
int64_t crossing_count(const EmbeddedGraph& eg, EdgeSubset m);

// Orientation with sign(M, D0) = (-1)^{crossing_count(M)} for every perfect
// matching, found by solving the linear system over F2 (one equation per
// matching). Fails if the graph has no matchings or the system is
// inconsistent. When a rotation system is present it is validated first
// (Euler check for the claimed genus).
std::optional<Orientation> kasteleyn_orientation(const EmbeddedGraph& eg,
                                                 std::string* diagnostic = nullptr);

// Dense F2 linear solver: each row is a bit-packed coefficient vector over
// `cols` unknowns plus an rhs bit. Returns any solution or nullopt.
struct F2Row {
    std::vector<uint64_t> bits;
    int rhs = 0;
    F2Row() = default;
    F2Row(int cols, int rhs_) : bits((cols + 63) / 64, 0), rhs(rhs_) {}
    void set(int i) { bits[i / 64] ^= 1ull << (i % 64); }
    bool get(int i) const { return bits[i / 64] >> (i % 64) & 1; }
    void operator^=(const F2Row& o) {
        for (size_t w = 0; w < bits.size(); w++) bits[w] ^= o.bits[w];
        rhs ^= o.rhs;
    }
};
std::optional<std::vector<bool>> solve_f2(std::vector<F2Row> rows, int cols);

}  // namespace dimerglue
