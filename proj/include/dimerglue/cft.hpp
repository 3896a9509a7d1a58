#pragma once

#include <complex>
#include <string>

namespace dimerglue {

using cftc = std::complex<double>;

struct Truncated {
    cftc value{1.0, 0.0};
    double tail_bound = 0;  // bound on the relative change from the dropped tail
};

enum class Sector { NS, R };

// prod_{n=1..N} (1 - q^n); tail bound |q|^{N+1}/(1-|q|).
Truncated eta_factor(cftc q, int N);

// Both-chirality fermionic partition functions Z_space^time; q and qbar are
// independent inputs (pass conj(q) for the physical value). (R,R) is 0.
Truncated fermionic_partition(cftc q, cftc qbar, Sector space, Sector time, int d,
                              int N);
inline Truncated fermionic_partition(cftc q, Sector space, Sector time, int d, int N) {
    return fermionic_partition(q, std::conj(q), space, time, d, N);
}

// Chiral partition functions (d even).
Truncated chiral_fermionic_partition(cftc q, Sector space, Sector time, int d, int N);

// Z_lambda(q) = sum_k q^{(k+lambda)^2/2} prod(1-q^n)^{-1}, lambda in
// {0, 1/2, 1, 3/2}.
Truncated lattice_chiral(cftc q, double lambda, int N);

struct TripleProductResult {
    bool ok = false;
    double residual = 0;
    cftc lhs, rhs;
};

// First two summands of the two closed forms of the d=2 fermion partition
// function agree (Jacobi triple product):
//   (1/2)[prod(1+q^{n+1/2})^2(1+qbar^{n+1/2})^2 + prod(1-...)^2(1-...)^2]
//   == [Th_0(q)Th_0(qbar) + Th_1(q)Th_1(qbar)] / [prod(1-q^n) prod(1-qbar^n)]
// with Th_l(q) = sum_k q^{(2k+l)^2/2}.
TripleProductResult triple_product_check(cftc q, cftc qbar, int N, double tol = 1e-10);
inline TripleProductResult triple_product_check(cftc q, int N, double tol = 1e-10) {
    return triple_product_check(q, std::conj(q), N, tol);
}

// prod_{j=0..N} (1 - spin*q^{j+1/2})^2; N == 0 picks the truncation so the
// dropped tail is below 1e-12.
cftc plimit_target(cftc q, int spin, int N);

}  // namespace dimerglue
