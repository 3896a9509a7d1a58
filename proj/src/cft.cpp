#include "dimerglue/cft.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerglue {

namespace {

double tail(double absq, int N) {
    if (absq >= 1.0) return 1e300;
    return std::pow(absq, N + 1) / (1.0 - absq);
}

cftc qpow(cftc q, double e) { return std::pow(q, e); }

}  // namespace

Truncated eta_factor(cftc q, int N) {
    Truncated t;
    for (int n = 1; n <= N; n++) t.value *= 1.0 - qpow(q, n);
    t.tail_bound = tail(std::abs(q), N);
    return t;
}

namespace {

// prod_{n>=0}(1 + s*q^{n+1/2})^d truncated at N factors
cftc half_shift_product(cftc q, double s, int d, int N) {
    cftc v = 1.0;
    for (int n = 0; n < N; n++) {
        cftc f = 1.0 + s * qpow(q, n + 0.5);
        for (int t = 0; t < d; t++) v *= f;
    }
    return v;
}

cftc integer_product(cftc q, double s, int d, int N) {
    cftc v = 1.0;
    for (int n = 1; n <= N; n++) {
        cftc f = 1.0 + s * qpow(q, n);
        for (int t = 0; t < d; t++) v *= f;
    }
    return v;
}

}  // namespace

Truncated chiral_fermionic_partition(cftc q, Sector space, Sector time, int d, int N) {
    if (d % 2) throw std::invalid_argument("chiral partition needs even d");
    Truncated t;
    t.tail_bound = d * tail(std::abs(q), N);
    if (space == Sector::R && time == Sector::R) {
        t.value = 0.0;
        t.tail_bound = 0;
    } else if (space == Sector::NS && time == Sector::R) {
        t.value = half_shift_product(q, +1, d, N);
    } else if (space == Sector::NS && time == Sector::NS) {
        t.value = half_shift_product(q, -1, d, N);
    } else {  // (R, NS)
        t.value = std::pow(2.0, d / 2) * integer_product(q, +1, d, N);
    }
    return t;
}

Truncated fermionic_partition(cftc q, cftc qbar, Sector space, Sector time, int d,
                              int N) {
    Truncated t;
    t.tail_bound = 2.0 * d * tail(std::max(std::abs(q), std::abs(qbar)), N);
    if (space == Sector::R && time == Sector::R) {
        t.value = 0.0;
        t.tail_bound = 0;
    } else if (space == Sector::NS && time == Sector::R) {
        t.value = half_shift_product(q, +1, d, N) * half_shift_product(qbar, +1, d, N);
    } else if (space == Sector::NS && time == Sector::NS) {
        t.value = half_shift_product(q, -1, d, N) * half_shift_product(qbar, -1, d, N);
    } else {  // (R, NS)
        t.value = std::pow(2.0, d) * integer_product(q, +1, d, N) *
                  integer_product(qbar, +1, d, N);
    }
    return t;
}

Truncated lattice_chiral(cftc q, double lambda, int N) {
    Truncated t;
    cftc s = 0.0;
    for (int k = -N; k <= N; k++) {
        double e = 0.5 * (k + lambda) * (k + lambda);
        s += qpow(q, e);
    }
    cftc eta = eta_factor(q, N).value;
    t.value = s / eta;
    double absq = std::abs(q);
    t.tail_bound = 2 * std::pow(absq, 0.5 * N * N) / (1 - absq) + tail(absq, N);
    return t;
}

TripleProductResult triple_product_check(cftc q, cftc qbar, int N, double tol) {
    TripleProductResult res;
    cftc A = half_shift_product(q, +1, 2, N) * half_shift_product(qbar, +1, 2, N);
    cftc B = half_shift_product(q, -1, 2, N) * half_shift_product(qbar, -1, 2, N);
    res.lhs = 0.5 * (A + B);

    auto theta = [&](cftc qq, int l) {
        cftc s = 0.0;
        for (int k = -N; k <= N; k++) {
            double x = 2.0 * k + l;
            s += qpow(qq, 0.5 * x * x);
        }
        return s;
    };
    cftc eta = eta_factor(q, 2 * N).value * eta_factor(qbar, 2 * N).value;
    res.rhs = (theta(q, 0) * theta(qbar, 0) + theta(q, 1) * theta(qbar, 1)) / eta;
    res.residual = std::abs(res.lhs - res.rhs);
    res.ok = res.residual < tol;
    return res;
}

cftc plimit_target(cftc q, int spin, int N) {
    double absq = std::abs(q);
    if (N <= 0) {
        N = 1;
        while (tail(absq, N) > 1e-12 && N < 20000) N++;
    }
    cftc v = 1.0;
    for (int j = 0; j < N; j++) {
        cftc f = 1.0 - (double)spin * qpow(q, j + 0.5);
        v *= f * f;
    }
    return v;
}

}  // namespace dimerglue
