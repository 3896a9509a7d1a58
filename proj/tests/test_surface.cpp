#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dimerglue/corpus.hpp"
#include "dimerglue/pfaffian.hpp"
#include "dimerglue/surface.hpp"

using namespace dimerglue;

namespace {

EmbeddedGraph torus_cycle(int len, std::vector<int> cls) {
    EmbeddedGraph eg;
    eg.genus = (int)cls.size() / 2;
    eg.graph.vertex_count = len;
    for (int i = 0; i < len; i++) {
        eg.graph.add_edge(i, (i + 1) % len);
        eg.r.push_back(i == 0 ? cls : std::vector<int>(cls.size(), 0));
    }
    return eg;
}

}  // namespace

TEST_CASE("r vectors add componentwise") {
    EmbeddedGraph eg;
    eg.genus = 1;
    eg.graph.vertex_count = 2;
    eg.graph.add_edge(0, 1);
    eg.graph.add_edge(0, 1);
    eg.r = {{1, 0}, {0, 1}};
    CHECK(r_vector(eg, 0) == std::vector<int>{0, 0});
    CHECK(r_vector(eg, 0b01) == std::vector<int>{1, 0});
    CHECK(r_vector(eg, 0b11) == std::vector<int>{1, 1});
    CHECK(homology_class(eg, 0b11) == std::vector<int>{1, 1});
}

TEST_CASE("homology of a union is the xor of classes") {
    for (auto& inst : surface_corpus()) {
        auto evens = enumerate_even_subsets(inst.eg.graph);
        if (evens.size() < 2) continue;
        EdgeSubset s = evens[evens.size() / 2], t = evens[evens.size() - 1];
        if (s & t) continue;  // need disjoint edge sets for a genuine union
        auto hs = homology_class(inst.eg, s), ht = homology_class(inst.eg, t);
        auto hu = homology_class(inst.eg, s | t);
        for (size_t i = 0; i < hs.size(); i++) CHECK(hu[i] == (hs[i] ^ ht[i]));
    }
}

TEST_CASE("even subset signs from the quadratic form") {
    EmbeddedGraph eg;
    eg.genus = 1;
    eg.graph.vertex_count = 2;
    eg.graph.add_edge(0, 1);
    eg.graph.add_edge(0, 1);
    QuadraticForm q0{{0}, {0}};
    // r = (0,0): sign +1
    eg.r = {{0, 0}, {0, 0}};
    CHECK(even_subset_sign(eg, 0b11, q0) == 1);
    // r = (1,1): m = r1 r2 = 1
    eg.r = {{1, 0}, {0, 1}};
    CHECK(even_subset_sign(eg, 0b11, q0) == -1);
    // r = (1,0), q(a1) = 1: m = r1 q(a1)
    eg.r = {{1, 0}, {0, 0}};
    QuadraticForm qa{{1}, {0}};
    CHECK(even_subset_sign(eg, 0b11, qa) == -1);
}

TEST_CASE("quadratic-form law on the corpus") {
    // sign(s,q) sign(t,q) = sign(s^t,q) * (-1)^{[s].[t]}
    for (auto& inst : surface_corpus()) {
        auto evens = enumerate_even_subsets(inst.eg.graph);
        auto forms = QuadraticForm::all(inst.eg.genus);
        const QuadraticForm& q = forms[forms.size() / 2];
        for (size_t i = 0; i < evens.size(); i += 3)
            for (size_t j = 0; j < evens.size(); j += 5) {
                EdgeSubset s = evens[i], t = evens[j];
                int lhs = even_subset_sign(inst.eg, s, q) * even_subset_sign(inst.eg, t, q);
                int inter = intersection_form(homology_class(inst.eg, s),
                                              homology_class(inst.eg, t));
                int rhs = even_subset_sign(inst.eg, s ^ t, q) * (inter ? -1 : 1);
                // xor of even subsets is even again only when the graphs are
                // edge-disjoint or overlap cancels degrees; both hold here
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("signed polynomial reduces to unsigned for trivial classes") {
    EmbeddedGraph eg;
    eg.genus = 1;
    eg.graph.vertex_count = 3;
    for (int i = 0; i < 3; i++) eg.graph.add_edge(i, (i + 1) % 3);
    eg.r = {{0, 0}, {0, 0}, {0, 0}};
    for (auto& q : QuadraticForm::all(1))
        CHECK(signed_even_polynomial(eg, q) == even_polynomial(eg.graph));
}

TEST_CASE("toroidal cycle with class (1,0) and q(a1)=1 flips the cycle term") {
    auto eg = torus_cycle(4, {1, 0});
    QuadraticForm q{{1}, {0}};
    MultiPoly p = signed_even_polynomial(eg, q);
    Monomial cyc;
    for (int i = 0; i < 4; i++) cyc = cyc * Monomial::var(i);
    CHECK(p.coeff(Monomial::one()) == 1);
    CHECK(p.coeff(cyc) == -1);
}

TEST_CASE("arf invariant basics and the genus-2 count") {
    CHECK(arf_invariant(QuadraticForm{{0}, {0}}) == 0);
    CHECK(arf_invariant(QuadraticForm{{1}, {1}}) == 1);
    int arf0 = 0;
    for (auto& q : QuadraticForm::all(2))
        if (arf_invariant(q) == 0) arf0++;
    CHECK(arf0 == 10);  // (4^g + 2^g)/2 at g=2
}

TEST_CASE("arf reconstruction identity") {
    auto eg1 = torus_cycle(4, {1, 0});
    auto rep = arf_reconstruction_check(eg1);
    CHECK(rep.ok);
    CHECK(!rep.used_fallback);

    // genus 2, two independent cycles with classes (1,0,0,0) and (0,0,1,0)
    EmbeddedGraph eg2;
    eg2.genus = 2;
    eg2.graph.vertex_count = 6;
    for (int i = 0; i < 3; i++) eg2.graph.add_edge(i, (i + 1) % 3);
    for (int i = 0; i < 3; i++) eg2.graph.add_edge(3 + i, 3 + (i + 1) % 3);
    eg2.r = {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0},
             {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    auto rep2 = arf_reconstruction_check(eg2);
    CHECK(rep2.ok);
    CHECK(!rep2.used_fallback);

    for (auto& inst : surface_corpus()) CHECK(arf_reconstruction_check(inst.eg).ok);
}

TEST_CASE("crossing counts") {
    EmbeddedGraph eg;
    eg.genus = 2;
    eg.graph.vertex_count = 2;
    eg.graph.add_edge(0, 1);
    eg.r = {{2, 1, 0, 3}};
    CHECK(crossing_count(eg, 1) == 2);  // 2*1 + 0*3
    eg.genus = 1;
    eg.r = {{1, 1}};
    CHECK(crossing_count(eg, 1) == 1);
    eg.r = {{0, 0}};
    CHECK(crossing_count(eg, 1) == 0);
}

TEST_CASE("kasteleyn orientation satisfies the crossing sign law") {
    for (auto& inst : surface_corpus()) {
        auto d0 = kasteleyn_orientation(inst.eg);
        REQUIRE(d0.has_value());
        std::vector<int> order(inst.eg.graph.vertex_count);
        for (int i = 0; i < inst.eg.graph.vertex_count; i++) order[i] = i;
        for (EdgeSubset m : enumerate_matchings(inst.eg.graph)) {
            int want = (crossing_count(inst.eg, m) & 1) ? -1 : 1;
            CHECK(matching_sign(inst.eg.graph, m, *d0, order) == want);
        }
    }
}

TEST_CASE("planar 4-cycle gets an odd number of clockwise-equivalent flips") {
    // single face: any sign-law orientation has 1 or 3 edges against the cycle
    EmbeddedGraph eg = torus_cycle(4, {0, 0});
    auto d0 = kasteleyn_orientation(eg);
    REQUIRE(d0.has_value());
    int along = 0;
    for (int e = 0; e < 4; e++)
        if (d0->forward[e]) along++;
    CHECK(along % 2 == 1);
}

TEST_CASE("rotation system Euler check rejects inconsistent data") {
    EmbeddedGraph eg = torus_cycle(4, {1, 0});
    // planar rotation data on a claimed genus-1 embedding: Euler mismatch
    eg.rotation = {{0, 7}, {2, 1}, {4, 3}, {6, 5}};
    std::string diag;
    CHECK_THROWS_AS(kasteleyn_orientation(eg, &diag), ValidationError);
}
