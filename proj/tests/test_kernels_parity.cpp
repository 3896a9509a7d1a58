#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include "dimerglue/corpus.hpp"
#include "dimerglue/kernels.hpp"

using namespace dimerglue;

// The OpenMP kernels must reproduce the serial reference bit for bit,
// independent of thread count.

TEST_CASE("parallel scans match the serial reference") {
    for (uint64_t seed = 0; seed < 12; seed++) {
        Graph g = random_multigraph(777 + seed, 8, 14);
        CHECK(enumerate_even_subsets_omp(g) == enumerate_even_subsets_serial(g));
        CHECK(enumerate_matchings_omp(g) == enumerate_matchings_serial(g));
    }
}

TEST_CASE("parallel ising sum matches serial") {
    for (uint64_t seed = 0; seed < 6; seed++) {
        Graph g = random_multigraph(31337 + seed, 9, 12);
        CHECK(ising_partition_direct_omp(g) == ising_partition_direct_serial(g));
    }
}

TEST_CASE("thread count does not change results") {
    Graph g = random_multigraph(424242, 8, 16);
    auto ref = enumerate_even_subsets_serial(g);
    int saved = omp_get_max_threads();
    for (int nt : {1, 2, 3, 7}) {
        omp_set_num_threads(nt);
        CHECK(enumerate_even_subsets_omp(g) == ref);
    }
    omp_set_num_threads(saved);
}
