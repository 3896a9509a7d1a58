#include <omp.h>

#include <unordered_map>

#include "dimerglue/kernels.hpp"

namespace dimerglue {

namespace detail {
std::vector<uint64_t> parity_words(const Graph& g);
bool is_matching(const Graph& g, EdgeSubset s, uint64_t full);
void check_enum_capacity(const Graph& g);
MultiPoly ising_from_counts(const Graph& g,
                            const std::unordered_map<uint32_t, int64_t>& counts);
void check_ising_capacity(const Graph& g);
}  // namespace detail

// Blocked scan: each thread collects hits from a contiguous mask range and
// the blocks are concatenated in range order, so the result matches the
// serial scan exactly for any team size (including a team of one when the
// caller is itself inside a parallel region).
template <class Pred>
static std::vector<EdgeSubset> blocked_scan(uint64_t top, Pred&& pred) {
    std::vector<std::vector<EdgeSubset>> parts;
#pragma omp parallel
    {
#pragma omp single
        parts.resize(omp_get_num_threads());
        int t = omp_get_thread_num(), nt = omp_get_num_threads();
        uint64_t lo = top * t / nt, hi = top * (t + 1) / nt;
        auto& local = parts[t];
        for (uint64_t s = lo; s < hi; s++)
            if (pred((EdgeSubset)s)) local.push_back((EdgeSubset)s);
    }
    std::vector<EdgeSubset> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<EdgeSubset> enumerate_even_subsets_omp(const Graph& g) {
    detail::check_enum_capacity(g);
    auto words = detail::parity_words(g);
    int ne = g.edge_count();
    return blocked_scan(1ull << ne, [&](EdgeSubset s) {
        uint64_t par = 0;
        for (int i = 0; i < ne; i++)
            if (s >> i & 1) par ^= words[i];
        return par == 0;
    });
}

std::vector<EdgeSubset> enumerate_matchings_omp(const Graph& g) {
    detail::check_enum_capacity(g);
    if (g.vertex_count % 2 != 0) return {};
    uint64_t full = (g.vertex_count == 64) ? ~0ull : (1ull << g.vertex_count) - 1;
    return blocked_scan(1ull << g.edge_count(),
                        [&](EdgeSubset s) { return detail::is_matching(g, s, full); });
}

MultiPoly ising_partition_direct_omp(const Graph& g) {
    detail::check_ising_capacity(g);
    std::vector<std::unordered_map<uint32_t, int64_t>> parts;
    uint64_t top = 1ull << g.vertex_count;
#pragma omp parallel
    {
#pragma omp single
        parts.resize(omp_get_num_threads());
        int t = omp_get_thread_num(), nt = omp_get_num_threads();
        uint64_t lo = top * t / nt, hi = top * (t + 1) / nt;
        auto& local = parts[t];
        for (uint64_t sigma = lo; sigma < hi; sigma++) {
            uint32_t mask = 0;
            for (int e = 0; e < g.edge_count(); e++)
                mask |= (uint32_t)((sigma >> g.edges[e].u ^ sigma >> g.edges[e].v) & 1)
                        << e;
            local[mask]++;
        }
    }
    std::unordered_map<uint32_t, int64_t> counts;
    for (auto& p : parts)
        for (auto& [mask, c] : p) counts[mask] += c;
    return detail::ising_from_counts(g, counts);
}

}  // namespace dimerglue
