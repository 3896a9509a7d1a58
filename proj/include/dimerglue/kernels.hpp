#pragma once

// Exhaustive enumeration kernels. Each scan has a serial reference
// implementation and an OpenMP version; tests assert they agree bit for bit
// and the benchmark target compares them. Results are ordered by bitmask
// value regardless of thread count.

#include <vector>

#include "dimerglue/graph.hpp"

namespace dimerglue {

std::vector<EdgeSubset> enumerate_even_subsets_serial(const Graph& g);
std::vector<EdgeSubset> enumerate_even_subsets_omp(const Graph& g);
std::vector<EdgeSubset> enumerate_matchings_serial(const Graph& g);
std::vector<EdgeSubset> enumerate_matchings_omp(const Graph& g);

// Default entry points used by the rest of the library (OpenMP path).
inline std::vector<EdgeSubset> enumerate_even_subsets(const Graph& g) {
    return enumerate_even_subsets_omp(g);
}
inline std::vector<EdgeSubset> enumerate_matchings(const Graph& g) {
    return enumerate_matchings_omp(g);
}

MultiPoly even_polynomial(const Graph& g);
MultiPoly matching_polynomial(const Graph& g);

// Laurent polynomial over spin assignments, exponent of x_e is sigma(u)sigma(v).
MultiPoly ising_partition_direct_serial(const Graph& g);
MultiPoly ising_partition_direct_omp(const Graph& g);
inline MultiPoly ising_partition_direct(const Graph& g) {
    return ising_partition_direct_omp(g);
}

struct VdwReport {
    bool ok = true;
    std::string mismatch;  // empty when ok
};

// Z_G(x) == 2^|V| prod((x_e + x_e^-1)/2) * E_G(z)|_{z_e = (x_e - x_e^-1)/(x_e + x_e^-1)}
// checked exactly after clearing denominators.
VdwReport van_der_waerden_check(const Graph& g);

}  // namespace dimerglue
