#include "dimerglue/pfaffian.hpp"

#include <algorithm>
#include <map>

namespace dimerglue {

MultiPoly SkewPolyMatrix::get(int i, int j) const {
    if (i == j) return MultiPoly::zero();
    if (i < j) return upper_[i * n_ + j];
    return upper_[j * n_ + i] * Rational(-1);
}

SkewPolyMatrix skew_adjacency(const Graph& g, const Orientation& d) {
    SkewPolyMatrix m(g.vertex_count);
    for (int e = 0; e < g.edge_count(); e++) {
        int u = g.edges[e].u, v = g.edges[e].v;
        if (u == v) continue;
        MultiPoly x = MultiPoly::variable(g.edges[e].var);
        bool fw = d.forward[e];
        int i = u, j = v;
        bool from_i_to_j = fw;
        if (i > j) {
            std::swap(i, j);
            from_i_to_j = !from_i_to_j;
        }
        if (from_i_to_j)
            m.at_upper(i, j) += x;
        else
            m.at_upper(i, j) -= x;
    }
    return m;
}

namespace {

MultiPoly pf_rec(const SkewPolyMatrix& m, std::vector<int>& idx) {
    size_t k = idx.size();
    if (k == 0) return MultiPoly::one();
    if (k % 2) return MultiPoly::zero();
    if (k == 2) return m.get(idx[0], idx[1]);
    MultiPoly acc;
    int i0 = idx[0];
    for (size_t j = 1; j < k; j++) {
        MultiPoly aij = m.get(i0, idx[j]);
        if (aij.is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(k - 2);
        for (size_t t = 1; t < k; t++)
            if (t != j) rest.push_back(idx[t]);
        MultiPoly sub = pf_rec(m, rest);
        // sign (-1)^j with j counted from 1 on the reduced row
        if (j % 2 == 0) sub = sub * Rational(-1);
        acc += aij * sub;
    }
    return acc;
}

}  // namespace

PfaffianResult pfaffian_exact(const SkewPolyMatrix& m) {
    PfaffianResult res;
    res.vertex_order.resize(m.dim());
    for (int i = 0; i < m.dim(); i++) res.vertex_order[i] = i;
    if (m.dim() % 2) {
        res.value = MultiPoly::zero();
        return res;
    }
    if (m.dim() > kMaxExactPfaffian)
        throw CapacityError("exact Pfaffian limited to dimension " +
                            std::to_string(kMaxExactPfaffian));
    std::vector<int> idx = res.vertex_order;
    res.value = pf_rec(m, idx);
    return res;
}

MultiPoly det_exact(const SkewPolyMatrix& m) {
    int n = m.dim();
    if (n > kMaxExactDet) throw CapacityError("exact determinant oracle limited to 10");
    std::vector<int> perm(n);
    for (int i = 0; i < n; i++) perm[i] = i;
    MultiPoly det;
    do {
        int sgn = 1;
        for (int i = 0; i < n; i++)
            for (int j = i + 1; j < n; j++)
                if (perm[i] > perm[j]) sgn = -sgn;
        MultiPoly prod = MultiPoly::one();
        bool zero = false;
        for (int i = 0; i < n && !zero; i++) {
            MultiPoly e = m.get(i, perm[i]);
            if (e.is_zero())
                zero = true;
            else
                prod = prod * e;
        }
        if (!zero) det += prod * Rational(sgn);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

int matching_sign(const Graph& g, EdgeSubset m, const Orientation& d,
                  const std::vector<int>& order) {
    std::vector<int> pos(g.vertex_count);
    for (size_t i = 0; i < order.size(); i++) pos[order[i]] = (int)i;

    std::vector<std::pair<int, int>> pairs;  // (pos_i < pos_j)
    int sign = 1;
    for (int e = 0; e < g.edge_count(); e++) {
        if (!(m >> e & 1)) continue;
        int u = g.edges[e].u, v = g.edges[e].v;
        int pu = pos[u], pv = pos[v];
        bool from_low_to_high = d.forward[e] ? (pu < pv) : (pv < pu);
        if (!from_low_to_high) sign = -sign;
        pairs.push_back({std::min(pu, pv), std::max(pu, pv)});
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> flat;
    for (auto& [i, j] : pairs) {
        flat.push_back(i);
        flat.push_back(j);
    }
    for (size_t i = 0; i < flat.size(); i++)
        for (size_t j = i + 1; j < flat.size(); j++)
            if (flat[i] > flat[j]) sign = -sign;
    return sign;
}

bool even_cycle_law_check(const Graph& g, const Orientation& d) {
    auto matchings = enumerate_matchings(g);
    std::vector<int> order(g.vertex_count);
    for (int i = 0; i < g.vertex_count; i++) order[i] = i;
    for (EdgeSubset m : matchings) {
        for (EdgeSubset n : matchings) {
            EdgeSubset sym = m ^ n;
            // count D-even cycles of the symmetric difference
            std::vector<int> edge_ids;
            for (int e = 0; e < g.edge_count(); e++)
                if (sym >> e & 1) edge_ids.push_back(e);
            std::vector<bool> used(edge_ids.size(), false);
            int even_cycles = 0;
            for (size_t s = 0; s < edge_ids.size(); s++) {
                if (used[s]) continue;
                // walk the cycle starting from edge_ids[s]
                int agree = 0;
                int e0 = edge_ids[s];
                used[s] = true;
                int start = g.edges[e0].u;
                int cur = g.edges[e0].v;
                if (d.forward[e0]) agree++;  // traversed u->v
                while (cur != start) {
                    for (size_t t = 0; t < edge_ids.size(); t++) {
                        if (used[t]) continue;
                        int e = edge_ids[t];
                        if (g.edges[e].u == cur) {
                            used[t] = true;
                            if (d.forward[e]) agree++;
                            cur = g.edges[e].v;
                            break;
                        }
                        if (g.edges[e].v == cur) {
                            used[t] = true;
                            if (!d.forward[e]) agree++;
                            cur = g.edges[e].u;
                            break;
                        }
                    }
                }
                if (agree % 2 == 0) even_cycles++;
            }
            int lhs = matching_sign(g, m, d, order) * matching_sign(g, n, d, order);
            int rhs = (even_cycles % 2) ? -1 : 1;
            if (lhs != rhs) return false;
        }
    }
    return true;
}

ArfPfaffianTable arf_pfaffian_formula(const EmbeddedGraph& eg) {
    ArfPfaffianTable table;
    const Graph& g = eg.graph;
    int nb = eg.bridges();
    auto d0 = kasteleyn_orientation(eg);
    if (!d0) {
        table.note = "no Kasteleyn orientation found";
        return table;
    }
    auto matchings = enumerate_matchings(g);
    std::vector<int> order(g.vertex_count);
    for (int i = 0; i < g.vertex_count; i++) order[i] = i;

    int ns = 1 << nb;
    // sign of matching under D_S: sign(M, D0) * (-1)^{sum_{j in S} r_j(M)}
    std::vector<std::vector<int>> signs(ns, std::vector<int>(matchings.size()));
    for (size_t mi = 0; mi < matchings.size(); mi++) {
        int s0 = matching_sign(g, matchings[mi], *d0, order);
        auto r = r_vector(eg, matchings[mi]);
        for (int S = 0; S < ns; S++) {
            int par = 0;
            for (int j = 0; j < nb; j++)
                if (S >> j & 1) par ^= r[j] & 1;
            signs[S][mi] = par ? -s0 : s0;
        }
    }

    // Solve sum_S c_S * signs[S][mi] = 1 for all matchings (rows collapse to
    // distinct sign patterns).
    std::vector<std::vector<Rational>> rows;
    std::map<std::vector<int>, bool> seen;
    for (size_t mi = 0; mi < matchings.size(); mi++) {
        std::vector<int> pat(ns);
        for (int S = 0; S < ns; S++) pat[S] = signs[S][mi];
        if (!seen.emplace(pat, true).second) continue;
        std::vector<Rational> row(ns + 1);
        for (int S = 0; S < ns; S++) row[S] = pat[S];
        row[ns] = 1;
        rows.push_back(std::move(row));
    }
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < ns && rank < rows.size(); col++) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) piv++;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rational dd = rows[rank][col];
        for (auto& x : rows[rank]) x /= dd;
        for (size_t rr = 0; rr < rows.size(); rr++) {
            if (rr == rank || rows[rr][col] == 0) continue;
            Rational f = rows[rr][col];
            for (int cc = 0; cc <= ns; cc++) rows[rr][cc] -= f * rows[rank][cc];
        }
        pivot_col.push_back(col);
        rank++;
    }
    for (size_t rr = rank; rr < rows.size(); rr++)
        if (rows[rr][ns] != 0) {
            table.note = "inconsistent system; per-class signs do not span";
            return table;
        }

    // Underdetermined systems are completed with the Arf family values: start
    // from the fixed family and keep it when consistent, otherwise use the
    // pivot solution.
    std::vector<Rational> c(ns, 0);
    for (size_t i = 0; i < rank; i++) c[pivot_col[i]] = rows[i][ns];
    if (rank < (size_t)ns) {
        // Try the canonical Hadamard solution instead: c_S from inverting the
        // full character matrix; valid whenever the fixed-family check passes.
        std::vector<Rational> cf(ns);
        Rational inv4g = Rational(1, BigInt(1) << nb);  // 1/4^g, nb = 2g
        // c_S = 4^{-g} sum_v (-1)^{S.v + sum v_{2i-1} v_{2i}}
        for (int S = 0; S < ns; S++) {
            BigInt acc = 0;
            for (int v = 0; v < ns; v++) {
                int e = 0;
                for (int j = 0; j < nb; j++) e ^= (S >> j & 1) & (v >> j & 1);
                for (int i = 0; i + 1 < nb; i += 2) e ^= (v >> i & 1) & (v >> (i + 1) & 1);
                acc += e ? -1 : 1;
            }
            cf[S] = Rational(acc) * inv4g;
        }
        bool works = true;
        for (size_t mi = 0; mi < matchings.size() && works; mi++) {
            Rational s = 0;
            for (int S = 0; S < ns; S++) s += cf[S] * signs[S][mi];
            works = (s == 1);
        }
        if (works) c = cf;
    }

    Rational want = Rational(1, BigInt(1) << (nb / 2));
    for (int S = 0; S < ns; S++) {
        Rational ac = c[S] < 0 ? Rational(-c[S]) : c[S];
        if (ac != want) {
            table.note = "solution exists but |c_S| != 1/2^g for S=" + std::to_string(S);
            // keep going; table still reported
        }
    }

    for (int S = 0; S < ns; S++) {
        ArfPfaffianRow row;
        for (int j = 0; j < nb; j++)
            if (S >> j & 1) row.bridges.push_back(j + 1);
        row.coefficient = c[S];
        MultiPoly f;
        for (size_t mi = 0; mi < matchings.size(); mi++)
            f += subset_monomial(g, matchings[mi]) * Rational(signs[S][mi]);
        row.pfaffian = f;
        table.rows.push_back(std::move(row));
    }
    // Final verification.
    MultiPoly lhs = matching_polynomial(g), rhs;
    for (auto& row : table.rows) rhs += row.pfaffian * row.coefficient;
    table.ok = (lhs == rhs) && table.note.empty();
    if (lhs != rhs) table.note = "combination does not reproduce P_G";
    return table;
}

}  // namespace dimerglue
