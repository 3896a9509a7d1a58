#include <algorithm>
#include <bit>
#include <unordered_map>

#include "dimerglue/kernels.hpp"

namespace dimerglue {

namespace detail {

// Per-edge vertex parity word: loops cancel (degree 2).
std::vector<uint64_t> parity_words(const Graph& g) {
    std::vector<uint64_t> w(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); i++) {
        uint64_t m = 0;
        m ^= 1ull << g.edges[i].u;
        m ^= 1ull << g.edges[i].v;
        w[i] = m;
    }
    return w;
}

bool is_matching(const Graph& g, EdgeSubset s, uint64_t full) {
    uint64_t covered = 0;
    for (int i = 0; i < g.edge_count(); i++) {
        if (!(s >> i & 1)) continue;
        const Edge& e = g.edges[i];
        if (e.u == e.v) return false;  // loops never match
        uint64_t m = (1ull << e.u) | (1ull << e.v);
        if (covered & m) return false;
        covered |= m;
    }
    return covered == full;
}

void check_enum_capacity(const Graph& g) {
    if (g.edge_count() > kMaxEnumEdges)
        throw CapacityError("edge count " + std::to_string(g.edge_count()) +
                            " exceeds exhaustive-scan capacity of " +
                            std::to_string(kMaxEnumEdges));
}

}  // namespace detail

std::vector<EdgeSubset> enumerate_even_subsets_serial(const Graph& g) {
    detail::check_enum_capacity(g);
    auto words = detail::parity_words(g);
    std::vector<EdgeSubset> out;
    uint64_t top = 1ull << g.edge_count();
    for (uint64_t s = 0; s < top; s++) {
        uint64_t par = 0;
        for (int i = 0; i < g.edge_count(); i++)
            if (s >> i & 1) par ^= words[i];
        if (par == 0) out.push_back((EdgeSubset)s);
    }
    return out;
}

std::vector<EdgeSubset> enumerate_matchings_serial(const Graph& g) {
    detail::check_enum_capacity(g);
    std::vector<EdgeSubset> out;
    if (g.vertex_count % 2 != 0) return out;
    uint64_t full = (g.vertex_count == 64) ? ~0ull : (1ull << g.vertex_count) - 1;
    uint64_t top = 1ull << g.edge_count();
    for (uint64_t s = 0; s < top; s++)
        if (detail::is_matching(g, (EdgeSubset)s, full)) out.push_back((EdgeSubset)s);
    return out;
}

MultiPoly even_polynomial(const Graph& g) {
    MultiPoly p;
    for (EdgeSubset s : enumerate_even_subsets(g)) p += subset_monomial(g, s);
    return p;
}

MultiPoly matching_polynomial(const Graph& g) {
    MultiPoly p;
    for (EdgeSubset s : enumerate_matchings(g)) p += subset_monomial(g, s);
    return p;
}

namespace detail {

// Exponent pattern of a spin assignment: bit e set when sigma(u) != sigma(v),
// i.e. x_e carries exponent -1. Counting patterns first avoids building a
// monomial per assignment.
MultiPoly ising_from_counts(const Graph& g,
                            const std::unordered_map<uint32_t, int64_t>& counts) {
    std::vector<int> order(g.edge_count());
    for (int e = 0; e < g.edge_count(); e++) order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.edges[a].var < g.edges[b].var; });
    MultiPoly z = MultiPoly::laurent();
    for (auto& [mask, c] : counts) {
        Monomial m;
        m.exps.reserve(g.edge_count());
        for (int e : order)
            m.exps.push_back({g.edges[e].var, (mask >> e & 1) ? -1 : 1});
        z.add_term(m, Rational(c));
    }
    return z;
}

void check_ising_capacity(const Graph& g) {
    if (g.vertex_count > kMaxIsingVertices)
        throw CapacityError("vertex count exceeds spin-sum capacity of " +
                            std::to_string(kMaxIsingVertices));
}

}  // namespace detail

MultiPoly ising_partition_direct_serial(const Graph& g) {
    detail::check_ising_capacity(g);
    std::unordered_map<uint32_t, int64_t> counts;
    uint64_t top = 1ull << g.vertex_count;
    for (uint64_t sigma = 0; sigma < top; sigma++) {
        uint32_t mask = 0;
        for (int e = 0; e < g.edge_count(); e++)
            mask |= (uint32_t)((sigma >> g.edges[e].u ^ sigma >> g.edges[e].v) & 1)
                    << e;
        counts[mask]++;
    }
    return detail::ising_from_counts(g, counts);
}

VdwReport van_der_waerden_check(const Graph& g) {
    // LHS: Z_G(x) * prod_e x_e  (clears the negative exponents)
    MultiPoly zg = ising_partition_direct(g);
    Monomial all_edges;
    for (auto& e : g.edges) all_edges = all_edges * Monomial::var(e.var);
    MultiPoly lhs;
    for (auto& [m, c] : zg.terms()) lhs.add_term(m * all_edges, c);

    // RHS: 2^(|V|-|E|) sum_{E' even} prod_{e in E'} (x_e^2-1) prod_{e not in E'} (x_e^2+1).
    // Expanding the product and collecting by the monomial prod_{e in C} x_e^2
    // gives coefficient sum_{E'} (-1)^{|E'| - |E' ∩ C|}, so one pass over
    // (C, E') index pairs replaces repeated polynomial multiplication.
    auto evens = enumerate_even_subsets(g);
    MultiPoly rhs;
    Rational scale = Rational(BigInt(1) << g.vertex_count, BigInt(1) << g.edge_count());
    for (EdgeSubset c = 0; c < (EdgeSubset(1) << g.edge_count()); c++) {
        int64_t coeff = 0;
        for (EdgeSubset s : evens) {
            int par = (std::popcount(s) - std::popcount(s & c)) & 1;
            coeff += par ? -1 : 1;
        }
        if (coeff == 0) continue;
        Monomial mono;
        for (int i = 0; i < g.edge_count(); i++)
            if (c >> i & 1) mono = mono * Monomial::var(g.edges[i].var, 2);
        rhs.add_term(mono, Rational(coeff) * scale);
    }

    VdwReport rep;
    if (lhs != rhs) {
        rep.ok = false;
        MultiPoly diff = lhs - rhs;
        rep.mismatch = "lhs-rhs = " + diff.str(&g.var_names);
    }
    return rep;
}

}  // namespace dimerglue
