// Serial reference vs OpenMP kernels on oracle-scale inputs.
#include <omp.h>

#include <cstdio>

#include "dimerglue/kernels.hpp"

using namespace dimerglue;

namespace {

Graph grid(int rows, int cols) {
    Graph g;
    g.vertex_count = rows * cols;
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

template <class F>
double timed(F&& f, size_t& out_size) {
    double t0 = omp_get_wtime();
    out_size = f();
    return omp_get_wtime() - t0;
}

}  // namespace

int main() {
    Graph g = grid(4, 4);  // 24 edges: full 2^24 scan
    std::printf("kernel scan benchmark, %d edges (2^%d masks), %d threads max\n",
                g.edge_count(), g.edge_count(), omp_get_max_threads());

    size_t n1, n2;
    double ts = timed([&] { return enumerate_even_subsets_serial(g).size(); }, n1);
    double tp = timed([&] { return enumerate_even_subsets_omp(g).size(); }, n2);
    std::printf("even subsets  serial %.3fs  omp %.3fs  speedup %.2fx  (%zu == %zu)\n",
                ts, tp, ts / tp, n1, n2);

    ts = timed([&] { return enumerate_matchings_serial(g).size(); }, n1);
    tp = timed([&] { return enumerate_matchings_omp(g).size(); }, n2);
    std::printf("matchings     serial %.3fs  omp %.3fs  speedup %.2fx  (%zu == %zu)\n",
                ts, tp, ts / tp, n1, n2);

    Graph s = grid(3, 6);  // 18 vertices: 2^18 spin configurations
    ts = timed([&] { return ising_partition_direct_serial(s).term_count(); }, n1);
    tp = timed([&] { return ising_partition_direct_omp(s).term_count(); }, n2);
    std::printf("ising 2^%d     serial %.3fs  omp %.3fs  speedup %.2fx  (%zu == %zu)\n",
                s.vertex_count, ts, tp, ts / tp, n1, n2);
    return 0;
}
