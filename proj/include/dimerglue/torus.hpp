#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dimerglue/pfaffian.hpp"

namespace dimerglue {

// Critical rhomboid torus: 2n steps a summing to 1, 2m steps b summing to
// tau, all of equal modulus.
struct RhomboidTorus {
    std::vector<dcomplex> a;
    std::vector<dcomplex> b;
    dcomplex tau;

    int n() const { return (int)a.size() / 2; }
    int m() const { return (int)b.size() / 2; }
    double step_modulus() const { return std::abs(a.at(0)); }
    void validate(double tol = 1e-9) const;
};

struct SpinChoice {
    int sign = +1;  // +1 selects the (1 - f) branch
};

// Chiral Kasteleyn matrix of the rhomboid torus. Rows are white vertices,
// columns black; the full matrix stacks whites then blacks.
struct TorusKasteleyn {
    int n = 0, m = 0;
    std::vector<std::pair<int, int>> black;  // (a-steps, b-steps), both even
    std::vector<std::pair<int, int>> white;  // both odd
    CMatrix K;     // nm x nm
    CMatrix full;  // 2nm x 2nm, [[0, K], [-K^T, 0]]
};

// Twists: crossing the [0,1] period multiplies by -1 (antiperiodic), crossing
// [0,tau] by the spin sign. Weight of edge {w,b} has modulus equal to the
// rhombus co-diagonal |p-q| and is oriented along the co-diagonal:
// K(w,b) = da*db*(p-q) for the step pair (p,q) with w = b + p + q.
TorusKasteleyn build_torus(const RhomboidTorus& rt, SpinChoice spin);

// f at the vertex reached by kb b-pairs and la a-pairs from the base point.
dcomplex kenyon_exponential(const RhomboidTorus& rt, int kb, int la, dcomplex z);

inline dcomplex f_one(const RhomboidTorus& rt, dcomplex z) {
    return kenyon_exponential(rt, 0, rt.n(), z);
}
inline dcomplex f_tau(const RhomboidTorus& rt, dcomplex z) {
    return kenyon_exponential(rt, rt.m(), 0, z);
}

struct RootReport {
    std::vector<dcomplex> roots;
    int expected_degree = 0;
    int degree_drop = 0;      // leading-coefficient cancellations
    double max_residual = 0;  // max |f_1(z)+1|
    bool degenerate = false;  // fewer than n finite roots
};

// All finite solutions of f_1(z) = -1, i.e. roots of
// prod(1+z a_odd) + prod(1-z a_even).
RootReport antiperiodic_roots(const RhomboidTorus& rt);

// 2^m prod_j (1 - spin * f_tau(z_j)).
dcomplex trace_product(const RhomboidTorus& rt, SpinChoice spin);
dcomplex trace_product(const RhomboidTorus& rt, SpinChoice spin,
                       const std::vector<dcomplex>& roots);

// Exact value of det(K_spin) for the co-diagonal weight convention:
//   (-1)^{nm} 2^m prod_j [prod_i(1+z_j b_{2i-1}) - spin*prod_i(1-z_j b_{2i})] / z_j^m.
// Equals trace_product up to the factor (-spin)^n prod_j Den_tau(z_j)/z_j^m.
dcomplex chiral_det_formula(const RhomboidTorus& rt, SpinChoice spin,
                            const std::vector<dcomplex>& roots);

struct TraceReport {
    dcomplex det_full[2];       // [spin index 0:+1, 1:-1] det of full matrix
    dcomplex det_chiral[2];     // det of K
    dcomplex trace[2];          // 2^m prod(1 -+ f_tau(z_j))
    dcomplex closed[2];         // chiral_det_formula
    dcomplex pfaffian[2];       // numeric Pfaffian of the full matrix
    double literal_rel[2][2];   // |det_full[t] - trace[s]^2| relative
    bool literal_match = false; // det_full == trace^2 for exactly one pairing
    double ratio_rel = 0;       // det ratio identity residual
    double closed_rel = 0;      // max closed-form residual
    RootReport root_report;
    std::string note;
};

TraceReport verify_trace(const RhomboidTorus& rt);

// prod_j (1 - spin*f_tau(i|z_j|)); the regularization replaces each root by
// i|z_j|.
dcomplex regularized_pf(const RhomboidTorus& rt, SpinChoice spin = {+1});

// Diagnostic variant with the discrete exponential replaced by the continuum
// one at the regularized points: prod_j (1 - spin*q^{|z_j|/2pi}).
dcomplex mode_regularized_pf(const RhomboidTorus& rt, SpinChoice spin);

struct UnregularizedResult {
    dcomplex value;
    dcomplex ratio_to_regularized;
    bool pole = false;  // a root coincides with a pole of f_tau
};
UnregularizedResult unregularized_product(const RhomboidTorus& rt, SpinChoice spin);

// a -> (a1/2, a1/2, a2/2, a2/2, ...), likewise b.
RhomboidTorus subdivide(const RhomboidTorus& rt);

struct LimitRow {
    int level = 0, n = 0, m = 0;
    dcomplex regularized;
    dcomplex target;            // truncated prod (1 -+ q^{j+1/2})^2
    double abs_error = 0;
    dcomplex dual_target;       // target * same product at q^ = e^{-2pi i/tau}
    double dual_error = 0;
    dcomplex mode_regularized;
    double mode_error = 0;
    double unregularized_magnitude = 0;
    bool unregularized_pole = false;
};

std::vector<LimitRow> limit_series(const RhomboidTorus& rt0, int levels, SpinChoice spin);

// Seeded random isoradial torus (common step modulus, exact chain closure).
RhomboidTorus random_isoradial(int n, int m, dcomplex tau, uint64_t seed);

dcomplex parse_tau(const std::string& text);

}  // namespace dimerglue
