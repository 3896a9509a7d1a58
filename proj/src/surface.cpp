#include "dimerglue/surface.hpp"

#include <algorithm>
#include <map>

#include "dimerglue/pfaffian.hpp"

namespace dimerglue {

void EmbeddedGraph::validate() const {
    graph.validate();
    if (genus < 1 || genus > 2) throw ValidationError("genus must be 1 or 2");
    if ((int)r.size() != graph.edge_count())
        throw ValidationError("r vector count != edge count");
    for (auto& v : r) {
        if ((int)v.size() != 2 * genus)
            throw ValidationError("r vector length != 2*genus");
        for (int x : v)
            if (x < 0) throw ValidationError("negative bridge crossing count");
    }
}

std::vector<QuadraticForm> QuadraticForm::all(int g) {
    std::vector<QuadraticForm> out;
    int total = 1 << (2 * g);
    for (int bits = 0; bits < total; bits++) {
        QuadraticForm q;
        q.qa.resize(g);
        q.qb.resize(g);
        for (int i = 0; i < g; i++) {
            q.qa[i] = bits >> (2 * i) & 1;
            q.qb[i] = bits >> (2 * i + 1) & 1;
        }
        out.push_back(q);
    }
    return out;
}

std::vector<int> r_vector(const EmbeddedGraph& eg, EdgeSubset s) {
    std::vector<int> r(2 * eg.genus, 0);
    for (int i = 0; i < eg.graph.edge_count(); i++)
        if (s >> i & 1)
            for (int j = 0; j < 2 * eg.genus; j++) r[j] += eg.r[i][j];
    return r;
}

std::vector<int> homology_class(const EmbeddedGraph& eg, EdgeSubset s) {
    auto r = r_vector(eg, s);
    for (auto& x : r) x &= 1;
    return r;
}

int even_subset_sign(const EmbeddedGraph& eg, EdgeSubset s, const QuadraticForm& q) {
    auto r = r_vector(eg, s);
    int64_t m = 0;
    for (int i = 0; i < eg.genus; i++) {
        int64_t r1 = r[2 * i], r2 = r[2 * i + 1];
        m += r1 * r2 + r1 * q.qa[i] + r2 * q.qb[i];
    }
    return (m & 1) ? -1 : 1;
}

MultiPoly signed_even_polynomial(const EmbeddedGraph& eg, const QuadraticForm& q) {
    MultiPoly p;
    for (EdgeSubset s : enumerate_even_subsets(eg.graph)) {
        int sgn = even_subset_sign(eg, s, q);
        p += subset_monomial(eg.graph, s) * Rational(sgn);
    }
    return p;
}

int arf_invariant(const QuadraticForm& q) {
    int a = 0;
    for (int i = 0; i < q.genus(); i++) a ^= q.qa[i] & q.qb[i];
    return a;
}

int intersection_form(const std::vector<int>& h1, const std::vector<int>& h2) {
    int v = 0;
    for (size_t i = 0; i + 1 < h1.size(); i += 2)
        v ^= (h1[i] & h2[i + 1]) ^ (h1[i + 1] & h2[i]);
    return v;
}

ArfReconstructionReport arf_reconstruction_check(const EmbeddedGraph& eg) {
    ArfReconstructionReport rep;
    int g = eg.genus;
    auto forms = QuadraticForm::all(g);
    auto evens = enumerate_even_subsets(eg.graph);

    // Fixed coefficient family (1/2^g)(-1)^{Arf(q)}: check
    // sum_q coef_q * sign_q(E') == 1 for every even subset.
    Rational half_g = Rational(1, BigInt(1) << g);
    bool fixed_ok = true;
    for (EdgeSubset s : evens) {
        Rational acc = 0;
        for (auto& q : forms) {
            int sgn = even_subset_sign(eg, s, q) * (arf_invariant(q) ? -1 : 1);
            acc += half_g * sgn;
        }
        if (acc != 1) {
            fixed_ok = false;
            break;
        }
    }
    if (fixed_ok) {
        rep.ok = true;
        for (auto& q : forms)
            rep.coefficients.push_back(half_g * (arf_invariant(q) ? -1 : 1));
        return rep;
    }

    // Fallback: solve sum_q c_q * sign_q(E') = 1 over the distinct sign
    // patterns (Gaussian elimination over Q).
    rep.used_fallback = true;
    size_t nf = forms.size();
    std::vector<std::vector<Rational>> rows;
    std::map<std::vector<int>, bool> seen;
    for (EdgeSubset s : evens) {
        std::vector<int> pat;
        for (auto& q : forms) pat.push_back(even_subset_sign(eg, s, q));
        if (seen.emplace(pat, true).second) {
            std::vector<Rational> row(nf + 1);
            for (size_t i = 0; i < nf; i++) row[i] = pat[i];
            row[nf] = 1;
            rows.push_back(std::move(row));
        }
    }
    // Eliminate.
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (size_t col = 0; col < nf && rank < rows.size(); col++) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) piv++;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rational d = rows[rank][col];
        for (auto& x : rows[rank]) x /= d;
        for (size_t rr = 0; rr < rows.size(); rr++) {
            if (rr == rank || rows[rr][col] == 0) continue;
            Rational f = rows[rr][col];
            for (size_t cc = 0; cc <= nf; cc++) rows[rr][cc] -= f * rows[rank][cc];
        }
        pivot_col.push_back((int)col);
        rank++;
    }
    for (size_t rr = rank; rr < rows.size(); rr++)
        if (rows[rr][nf] != 0) {
            rep.ok = false;
            rep.note = "no linear combination exists";
            return rep;
        }
    rep.ok = true;
    rep.coefficients.assign(nf, 0);
    for (size_t i = 0; i < rank; i++) rep.coefficients[pivot_col[i]] = rows[i][nf];
    rep.note = "fixed Arf family failed; solved coefficients from the linear system";
    return rep;
}

int64_t crossing_count(const EmbeddedGraph& eg, EdgeSubset m) {
    auto r = r_vector(eg, m);
    int64_t c = 0;
    for (int i = 0; i < eg.genus; i++) c += (int64_t)r[2 * i] * r[2 * i + 1];
    return c;
}

std::optional<std::vector<bool>> solve_f2(std::vector<F2Row> rows, int cols) {
    int rank = 0;
    std::vector<int> pivot_of_row;
    for (int col = 0; col < cols && rank < (int)rows.size(); col++) {
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); r++)
            if (rows[r].get(col)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (int r = 0; r < (int)rows.size(); r++)
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        pivot_of_row.push_back(col);
        rank++;
    }
    for (int r = rank; r < (int)rows.size(); r++)
        if (rows[r].rhs) return std::nullopt;
    std::vector<bool> x(cols, false);
    for (int r = 0; r < rank; r++) x[pivot_of_row[r]] = rows[r].rhs;
    return x;
}

namespace {

// Face count from the rotation system (dart traversal); darts are 2e (at u)
// and 2e+1 (at v).
int count_faces(const EmbeddedGraph& eg) {
    const Graph& g = eg.graph;
    int nd = 2 * g.edge_count();
    std::vector<int> next(nd, -1);
    // successor of a dart d arriving at vertex w is the rotation successor of
    // the reversed dart at w
    std::vector<std::map<int, int>> pos(g.vertex_count);
    for (int v = 0; v < g.vertex_count; v++)
        for (size_t i = 0; i < eg.rotation[v].size(); i++) pos[v][eg.rotation[v][i]] = (int)i;
    auto dart_vertex = [&](int d) {
        const Edge& e = g.edges[d / 2];
        return (d & 1) ? e.v : e.u;
    };
    for (int d = 0; d < nd; d++) {
        int rev = d ^ 1;
        int w = dart_vertex(rev);
        auto it = pos[w].find(rev);
        if (it == pos[w].end()) throw ValidationError("rotation system misses a dart");
        int idx = (it->second + 1) % (int)eg.rotation[w].size();
        next[d] = eg.rotation[w][idx];
    }
    std::vector<bool> used(nd, false);
    int faces = 0;
    for (int d = 0; d < nd; d++) {
        if (used[d]) continue;
        faces++;
        int cur = d;
        while (!used[cur]) {
            used[cur] = true;
            cur = next[cur];
        }
    }
    return faces;
}

}  // namespace

std::optional<Orientation> kasteleyn_orientation(const EmbeddedGraph& eg,
                                                 std::string* diagnostic) {
    const Graph& g = eg.graph;
    if (!eg.rotation.empty()) {
        if ((int)eg.rotation.size() != g.vertex_count)
            throw ValidationError("rotation system size != vertex count");
        int f = count_faces(eg);
        int euler = g.vertex_count - g.edge_count() + f;
        if (euler != 2 - 2 * eg.genus) {
            if (diagnostic)
                *diagnostic = "rotation system Euler characteristic " +
                              std::to_string(euler) + " != " +
                              std::to_string(2 - 2 * eg.genus);
            throw ValidationError(diagnostic ? *diagnostic : "Euler check failed");
        }
    }

    auto matchings = enumerate_matchings(g);

    // Reference orientation: every edge u->v. Reversing edge set X flips
    // sign(M) by (-1)^{|M ∩ X|}; solve for X with
    // sign(M, ref) * (-1)^{|M ∩ X|} = (-1)^{c(M)} for all matchings M.
    Orientation ref;
    ref.forward.assign(g.edge_count(), true);
    std::vector<int> order(g.vertex_count);
    for (int i = 0; i < g.vertex_count; i++) order[i] = i;

    // With no matchings the sign law is vacuous and the reference works.
    std::vector<F2Row> rows;
    for (EdgeSubset m : matchings) {
        int sref = matching_sign(g, m, ref, order);
        int target = (crossing_count(eg, m) & 1) ? -1 : 1;
        F2Row row(g.edge_count(), sref == target ? 0 : 1);
        for (int e = 0; e < g.edge_count(); e++)
            if (m >> e & 1) row.set(e);
        rows.push_back(std::move(row));
    }
    auto sol = solve_f2(std::move(rows), g.edge_count());
    if (!sol) {
        if (diagnostic)
            *diagnostic = "no orientation satisfies the crossing sign law "
                          "(inconsistent F2 system)";
        return std::nullopt;
    }
    Orientation d0 = ref;
    for (int i = 0; i < g.edge_count(); i++)
        if ((*sol)[i]) d0.forward[i] = !d0.forward[i];
    return d0;
}

}  // namespace dimerglue
