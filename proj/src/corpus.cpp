#include "dimerglue/corpus.hpp"

#include <algorithm>
#include <random>

namespace dimerglue {

namespace {

struct Rng {
    std::mt19937_64 eng;  // the engine is pinned by the standard, bit for bit
    explicit Rng(uint64_t seed) : eng(seed) {}
    uint64_t next(uint64_t n) { return eng() % n; }
    bool coin(double p = 0.5) { return (eng() >> 11) < (uint64_t)(p * (1ull << 53)); }
    // std::shuffle is implementation-defined; this one is part of the format
    template <class V>
    void shuffle(V& v) {
        for (size_t i = v.size(); i > 1; i--) std::swap(v[i - 1], v[next(i)]);
    }
};

// side layout: [0, n1) side-1, [n1, n1+n2) side-2, [n1+n2, n1+n2+k) cut
struct Layout {
    int n1, n2, k;
    int total() const { return n1 + n2 + k; }
    int cut0() const { return n1 + n2; }
    int side_of(int v) const {
        if (v < n1) return 1;
        if (v < n1 + n2) return 2;
        return 0;
    }
};

std::vector<int> rand_rvec(Rng& rng, int side) {
    int r1 = (int)rng.next(3);  // 0,1,2 biased below
    int r2 = (int)rng.next(3);
    if (r1 == 2 && !rng.coin(0.25)) r1 = rng.coin() ? 1 : 0;
    if (r2 == 2 && !rng.coin(0.25)) r2 = rng.coin() ? 1 : 0;
    if (side == 1) return {r1, r2, 0, 0};
    return {0, 0, r1, r2};
}

EmbeddedCut random_cut_instance(Rng& rng, int k) {
    Layout lay;
    lay.k = k;
    lay.n1 = 2 * (1 + (int)rng.next(2));  // 2 or 4
    lay.n2 = 2 * (1 + (int)rng.next(2));
    EmbeddedCut ec;
    ec.eg.genus = 2;
    Graph& g = ec.eg.graph;
    g.vertex_count = lay.total();

    auto add_edge = [&](int u, int v, int side) {
        g.add_edge(u, v);
        ec.cut.side_of_edge.push_back(side);
        ec.eg.r.push_back(rand_rvec(rng, side));
    };

    // planted perfect matching: split the cut vertices into two even pools
    std::vector<int> cuts;
    for (int i = 0; i < k; i++) cuts.push_back(lay.cut0() + i);
    rng.shuffle(cuts);
    int k1 = 2 * (int)rng.next(k / 2 + 1);  // even count matched into side 1
    std::vector<int> pool1, pool2;
    for (int v = 0; v < lay.n1; v++) pool1.push_back(v);
    for (int i = 0; i < k1; i++) pool1.push_back(cuts[i]);
    for (int v = lay.n1; v < lay.n1 + lay.n2; v++) pool2.push_back(v);
    for (int i = k1; i < k; i++) pool2.push_back(cuts[i]);
    rng.shuffle(pool1);
    rng.shuffle(pool2);
    for (size_t i = 0; i + 1 < pool1.size(); i += 2) add_edge(pool1[i], pool1[i + 1], 1);
    for (size_t i = 0; i + 1 < pool2.size(); i += 2) add_edge(pool2[i], pool2[i + 1], 2);

    // extra edges per side
    auto side_vertices = [&](int side) {
        std::vector<int> vs;
        for (int v = 0; v < lay.total(); v++)
            if (lay.side_of(v) == side || lay.side_of(v) == 0) vs.push_back(v);
        return vs;
    };
    for (int side = 1; side <= 2; side++) {
        auto vs = side_vertices(side);
        int base = side == 1 ? (int)(pool1.size() / 2) : (int)(pool2.size() / 2);
        int extra = (int)rng.next(std::max(1, 9 - base));
        for (int t = 0; t < extra; t++) {
            int u = vs[rng.next(vs.size())];
            int v = vs[rng.next(vs.size())];
            if (u == v && !rng.coin(0.15)) continue;  // occasional loop
            add_edge(u, v, side);
        }
    }

    ec.cut.cut_vertices.clear();
    for (int i = 0; i < k; i++) ec.cut.cut_vertices.push_back(lay.cut0() + i);
    ec.cut.side_of_vertex.assign(lay.total(), 0);
    for (int v = 0; v < lay.total(); v++) ec.cut.side_of_vertex[v] = lay.side_of(v);
    return ec;
}

EmbeddedCut handcrafted(int which) {
    EmbeddedCut ec;
    ec.eg.genus = 2;
    Graph& g = ec.eg.graph;
    auto E = [&](int u, int v, int side, std::vector<int> r) {
        g.add_edge(u, v);
        ec.cut.side_of_edge.push_back(side);
        ec.eg.r.push_back(std::move(r));
    };
    switch (which) {
        case 0: {
            // two disjoint toroidal triangles, one per side, cut vertices on
            // the cycles; bridgeless cut (no matchings, P_G = 0)
            g.vertex_count = 6;  // 0,1 side1; 2,3 side2; 4,5 cut
            E(0, 1, 1, {0, 0, 0, 0});
            E(1, 4, 1, {1, 0, 0, 0});
            E(4, 0, 1, {0, 0, 0, 0});
            E(2, 3, 2, {0, 0, 0, 0});
            E(3, 5, 2, {0, 0, 1, 0});
            E(5, 2, 2, {0, 0, 0, 0});
            ec.cut.cut_vertices = {4, 5};
            ec.cut.side_of_vertex = {1, 1, 2, 2, 0, 0};
            break;
        }
        case 1: {
            // smallest all-orientation fixture: 6 edges, several matchings
            g.vertex_count = 6;
            E(0, 4, 1, {1, 0, 0, 0});
            E(1, 5, 1, {0, 1, 0, 0});
            E(0, 1, 1, {0, 0, 0, 0});
            E(2, 4, 2, {0, 0, 1, 0});
            E(3, 5, 2, {0, 0, 0, 1});
            E(2, 3, 2, {0, 0, 0, 0});
            ec.cut.cut_vertices = {4, 5};
            ec.cut.side_of_vertex = {1, 1, 2, 2, 0, 0};
            break;
        }
        case 2: {
            // degenerate: one cut vertex has no side-1 edges at all
            g.vertex_count = 6;
            E(0, 1, 1, {1, 1, 0, 0});
            E(0, 1, 1, {0, 0, 0, 0});
            E(2, 4, 2, {0, 0, 1, 0});
            E(3, 5, 2, {0, 0, 0, 0});
            E(2, 3, 2, {0, 0, 0, 1});
            E(4, 5, 2, {0, 0, 0, 0});
            ec.cut.cut_vertices = {4, 5};
            ec.cut.side_of_vertex = {1, 1, 2, 2, 0, 0};
            break;
        }
        case 3: {
            // k=4 hand instance: two squares sharing the four cut vertices
            g.vertex_count = 8;  // side1: 0,1; side2: 2,3; cut: 4,5,6,7
            E(0, 4, 1, {1, 0, 0, 0});
            E(0, 5, 1, {0, 0, 0, 0});
            E(1, 6, 1, {0, 1, 0, 0});
            E(1, 7, 1, {0, 0, 0, 0});
            E(4, 5, 1, {0, 0, 0, 0});
            E(2, 4, 2, {0, 0, 1, 0});
            E(2, 5, 2, {0, 0, 0, 0});
            E(3, 6, 2, {0, 0, 0, 1});
            E(3, 7, 2, {0, 0, 0, 0});
            E(6, 7, 2, {0, 0, 0, 0});
            ec.cut.cut_vertices = {4, 5, 6, 7};
            ec.cut.side_of_vertex = {1, 1, 2, 2, 0, 0, 0, 0};
            break;
        }
        default:
            throw ValidationError("no such handcrafted instance");
    }
    return ec;
}

bool usable(const EmbeddedCut& ec) {
    try {
        ec.validate();
    } catch (const ValidationError&) {
        return false;
    }
    if (ec.eg.graph.edge_count() > 24) return false;
    int e1 = 0, e2 = 0;
    for (int s : ec.cut.side_of_edge) (s == 1 ? e1 : e2)++;
    if (e1 > 12 || e2 > 12) return false;
    return kasteleyn_orientation(ec.eg).has_value();
}

}  // namespace

const std::vector<CorpusInstance>& glue_corpus() {
    static const std::vector<CorpusInstance> corpus = [] {
        std::vector<CorpusInstance> out;
        for (int h = 0; h < 4; h++)
            out.push_back({"hand" + std::to_string(h), handcrafted(h)});
        Rng rng(0x9d2c5680f1a3c4e5ull);
        int want_k2 = 36, want_k4 = 16;
        int guard = 0;
        while ((want_k2 > 0 || want_k4 > 0) && guard++ < 4000) {
            int k = want_k2 > 0 ? 2 : 4;
            if (want_k2 > 0 && want_k4 > 0 && rng.coin(0.3)) k = 4;
            EmbeddedCut ec = random_cut_instance(rng, k);
            if (!usable(ec)) continue;
            (k == 2 ? want_k2 : want_k4)--;
            out.push_back({"rand_k" + std::to_string(k) + "_" +
                               std::to_string(out.size()),
                           std::move(ec)});
        }
        if (want_k2 > 0 || want_k4 > 0)
            throw std::runtime_error("corpus generation exhausted its retry budget");
        return out;
    }();
    return corpus;
}

const std::vector<SurfaceInstance>& surface_corpus() {
    static const std::vector<SurfaceInstance> corpus = [] {
        std::vector<SurfaceInstance> out;
        Rng rng(0x853c49e6748fea9bull);
        auto gen = [&](int genus) {
            EmbeddedGraph eg;
            eg.genus = genus;
            Graph& g = eg.graph;
            int nv = 4 + 2 * (int)rng.next(3);  // 4, 6, 8
            g.vertex_count = nv;
            std::vector<int> perm(nv);
            for (int i = 0; i < nv; i++) perm[i] = i;
            rng.shuffle(perm);
            auto rv = [&] {
                std::vector<int> r(2 * genus, 0);
                for (auto& x : r)
                    if (rng.coin(0.45)) x = rng.coin(0.2) ? 2 : 1;
                return r;
            };
            for (int i = 0; i + 1 < nv; i += 2) {
                g.add_edge(perm[i], perm[i + 1]);
                eg.r.push_back(rv());
            }
            int extra = 2 + (int)rng.next(5);
            for (int t = 0; t < extra && g.edge_count() < 12; t++) {
                int u = (int)rng.next(nv), v = (int)rng.next(nv);
                if (u == v) continue;
                g.add_edge(u, v);
                eg.r.push_back(rv());
            }
            return eg;
        };
        int want1 = 10, want2 = 10, guard = 0;
        while ((want1 > 0 || want2 > 0) && guard++ < 2000) {
            int genus = want1 > 0 ? 1 : 2;
            if (want1 > 0 && want2 > 0 && rng.coin()) genus = 2;
            EmbeddedGraph eg = gen(genus);
            try {
                eg.validate();
            } catch (const ValidationError&) {
                continue;
            }
            if (enumerate_matchings(eg.graph).empty()) continue;
            if (!kasteleyn_orientation(eg).has_value()) continue;
            (genus == 1 ? want1 : want2)--;
            out.push_back({"g" + std::to_string(genus) + "_" + std::to_string(out.size()),
                           std::move(eg)});
        }
        if (want1 > 0 || want2 > 0)
            throw std::runtime_error("surface corpus generation exhausted retries");
        return out;
    }();
    return corpus;
}

Graph random_multigraph(uint64_t seed, int max_vertices, int max_edges) {
    Rng rng(seed);
    Graph g;
    g.vertex_count = 2 + (int)rng.next(max_vertices - 1);
    int ne = 1 + (int)rng.next(max_edges);
    for (int e = 0; e < ne; e++) {
        int u = (int)rng.next(g.vertex_count);
        int v = rng.coin(0.08) ? u : (int)rng.next(g.vertex_count);  // rare loops
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace dimerglue
