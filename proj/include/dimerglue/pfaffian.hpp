#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dimerglue/surface.hpp"

namespace dimerglue {

// Skew-symmetric matrix over MultiPoly; only the upper triangle is stored.
class SkewPolyMatrix {
  public:
    explicit SkewPolyMatrix(int n) : n_(n), upper_(n * n) {}
    int dim() const { return n_; }
    MultiPoly& at_upper(int i, int j) { return upper_[i * n_ + j]; }  // requires i<j
    MultiPoly get(int i, int j) const;                               // signed lookup

  private:
    int n_;
    std::vector<MultiPoly> upper_;
};

constexpr int kMaxExactPfaffian = 16;
constexpr int kMaxExactDet = 10;

// A(G,D): entry (i,j) sums +-x_e over edges between i and j; loops drop out.
SkewPolyMatrix skew_adjacency(const Graph& g, const Orientation& d);

struct PfaffianResult {
    MultiPoly value;
    std::vector<int> vertex_order;
};

// Combinatorial expansion along the first row; odd dimension gives zero.
PfaffianResult pfaffian_exact(const SkewPolyMatrix& m);

// Permutation-sum determinant (test oracle, tiny dimensions only).
MultiPoly det_exact(const SkewPolyMatrix& m);

// Sign of matching M in Pfaf A(G,D) relative to `order` (positions of the
// matrix rows): permutation sign of the pairing times the orientation signs.
int matching_sign(const Graph& g, EdgeSubset m, const Orientation& d,
                  const std::vector<int>& order);

// For all pairs of matchings: sign(M)sign(N) == (-1)^{# D-even cycles in M u N}.
bool even_cycle_law_check(const Graph& g, const Orientation& d);

struct ArfPfaffianRow {
    std::vector<int> bridges;  // subset S
    Rational coefficient;
    MultiPoly pfaffian;
};

struct ArfPfaffianTable {
    bool ok = false;
    std::vector<ArfPfaffianRow> rows;
    std::string note;
};

// Builds the 4^g orientations D_S from D0 (reverse edges with odd
// sum_{j in S} r_j(e)) and solves P_G = sum_S c_S F_{D_S}; asserts
// |c_S| = 1/2^g.
ArfPfaffianTable arf_pfaffian_formula(const EmbeddedGraph& eg);

// ---- numeric (complex) path ----

using dcomplex = std::complex<double>;

// Dense row-major complex matrix helpers.
struct CMatrix {
    int n = 0;
    std::vector<dcomplex> a;
    explicit CMatrix(int n_ = 0) : n(n_), a(n_ * n_) {}
    dcomplex& at(int i, int j) { return a[i * n + j]; }
    dcomplex at(int i, int j) const { return a[i * n + j]; }
};

dcomplex det_lu(CMatrix m);

// Pfaffian via skew-symmetric tridiagonalization with partial pivoting
// (Parlett-Reid); returns 0 for matrices singular to machine precision.
dcomplex pfaffian_numeric(CMatrix m);

}  // namespace dimerglue
