#include "dimerglue/graph.hpp"

#include <set>

namespace dimerglue {

void Graph::add_edge(int u, int v) { add_edge(u, v, (uint32_t)edges.size()); }

void Graph::add_edge(int u, int v, uint32_t var) {
    edges.push_back({u, v, var});
}

void Graph::validate() const {
    std::set<uint32_t> vars;
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw ValidationError("edge endpoint out of range");
        if (!vars.insert(e.var).second)
            throw ValidationError("duplicate edge variable id");
    }
}

std::string Graph::var_name(uint32_t var) const {
    if (var < var_names.size() && !var_names[var].empty()) return var_names[var];
    return "x" + std::to_string(var + 1);
}

MultiPoly subset_monomial(const Graph& g, EdgeSubset s) {
    Monomial m;
    for (int i = 0; i < g.edge_count(); i++)
        if (s >> i & 1) m = m * Monomial::var(g.edges[i].var);
    MultiPoly p;
    p.add_term(m, 1);
    return p;
}

}  // namespace dimerglue
