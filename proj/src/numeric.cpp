#include <cmath>

#include "dimerglue/pfaffian.hpp"

namespace dimerglue {

dcomplex det_lu(CMatrix m) {
    int n = m.n;
    dcomplex det = 1.0;
    for (int k = 0; k < n; k++) {
        int piv = k;
        double best = std::abs(m.at(k, k));
        for (int i = k + 1; i < n; i++)
            if (std::abs(m.at(i, k)) > best) {
                best = std::abs(m.at(i, k));
                piv = i;
            }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; j++) std::swap(m.at(k, j), m.at(piv, j));
            det = -det;
        }
        det *= m.at(k, k);
        for (int i = k + 1; i < n; i++) {
            dcomplex f = m.at(i, k) / m.at(k, k);
            for (int j = k; j < n; j++) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

dcomplex pfaffian_numeric(CMatrix m) {
    int n = m.n;
    if (n % 2) return 0.0;
    double scale = 0.0;
    for (auto& x : m.a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;

    dcomplex pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: bring the largest |m(i,k)|, i>k, into row k+1
        int piv = k + 1;
        double best = std::abs(m.at(k + 1, k));
        for (int i = k + 2; i < n; i++)
            if (std::abs(m.at(i, k)) > best) {
                best = std::abs(m.at(i, k));
                piv = i;
            }
        if (best < 1e-14 * scale) return 0.0;  // singular to machine precision
        if (piv != k + 1) {
            for (int j = 0; j < n; j++) std::swap(m.at(k + 1, j), m.at(piv, j));
            for (int j = 0; j < n; j++) std::swap(m.at(j, k + 1), m.at(j, piv));
            pf = -pf;
        }
        dcomplex akk1 = m.at(k, k + 1);
        pf *= akk1;
        // congruence clearing column k below row k+1:
        // row_i -= tau_i * row_{k+1}, col_i -= tau_i * col_{k+1},
        // tau_i = A(k,i)/A(k,k+1); trailing block stays skew exactly.
        for (int i = k + 2; i < n; i++) {
            dcomplex ti = m.at(k, i) / akk1;
            dcomplex si = m.at(k + 1, i);
            for (int j = k + 2; j < n; j++)
                m.at(i, j) += -ti * m.at(k + 1, j) + (m.at(k, j) / akk1) * si;
        }
    }
    return pf;
}

}  // namespace dimerglue
