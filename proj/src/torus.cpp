#include "dimerglue/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dimerglue/cft.hpp"

namespace dimerglue {

void RhomboidTorus::validate(double tol) const {
    if (a.size() < 2 || a.size() % 2 || b.size() < 2 || b.size() % 2)
        throw ValidationError("step lists must have positive even length");
    if (tau.imag() <= 0) throw ValidationError("Im(tau) must be positive");
    double s = std::abs(a[0]);
    for (auto& x : a)
        if (std::abs(std::abs(x) - s) > tol * s)
            throw ValidationError("steps must have equal modulus");
    for (auto& x : b)
        if (std::abs(std::abs(x) - s) > tol * s)
            throw ValidationError("steps must have equal modulus");
    dcomplex sa = 0, sb = 0;
    for (auto& x : a) sa += x;
    for (auto& x : b) sb += x;
    if (std::abs(sa - 1.0) > 1e-9) throw ValidationError("sum of a-steps != 1");
    if (std::abs(sb - tau) > 1e-9 * std::max(1.0, std::abs(tau)))
        throw ValidationError("sum of b-steps != tau");
}

TorusKasteleyn build_torus(const RhomboidTorus& rt, SpinChoice spin) {
    int n = rt.n(), m = rt.m();
    int n2 = 2 * n, m2 = 2 * m;
    TorusKasteleyn tk;
    tk.n = n;
    tk.m = m;
    for (int k = 0; k < m; k++)
        for (int i = 0; i < n; i++) tk.black.push_back({2 * i, 2 * k});
    for (int k = 0; k < m; k++)
        for (int i = 0; i < n; i++) tk.white.push_back({2 * i + 1, 2 * k + 1});
    auto widx = [&](int wa, int wb) { return (wb / 2) * n + (wa / 2); };
    int nm = n * m;
    tk.K = CMatrix(nm);

    // genericity guard: vertices must be distinct mod <1, tau>
    std::vector<dcomplex> pa(n2 + 1, 0.0), pb(m2 + 1, 0.0);
    for (int t = 0; t < n2; t++) pa[t + 1] = pa[t] + rt.a[t];
    for (int t = 0; t < m2; t++) pb[t + 1] = pb[t] + rt.b[t];
    {
        std::vector<dcomplex> pos;
        for (int lb = 0; lb < m2; lb++)
            for (int la = 0; la < n2; la++) pos.push_back(pa[la] + pb[lb]);
        double tol = 1e-9 * rt.step_modulus();
        for (size_t i = 0; i < pos.size(); i++)
            for (size_t j = i + 1; j < pos.size(); j++) {
                dcomplex d = pos[i] - pos[j];
                for (int p = -2; p <= 2; p++)
                    for (int q = -2; q <= 2; q++)
                        if (std::abs(d - (double)p - (double)q * rt.tau) < tol)
                            throw ValidationError(
                                "coincident vertices mod <1,tau> (non-generic torus)");
            }
    }

    for (int bi = 0; bi < nm; bi++) {
        auto [la, lb] = tk.black[bi];
        const int moves[4][2] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
        for (auto& mv : moves) {
            int da = mv[0], db = mv[1];
            dcomplex p = da > 0 ? rt.a[la] : -rt.a[(la - 1 + n2) % n2];
            dcomplex q = db > 0 ? rt.b[lb] : -rt.b[(lb - 1 + m2) % m2];
            int wa = la + da, wb = lb + db;
            dcomplex tw = 1.0;
            if (wa < 0) {
                wa += n2;
                tw *= -1.0;  // crossed [0,1]: antiperiodic
            }
            if (wb < 0) {
                wb += m2;
                tw *= (double)spin.sign;  // crossed [0,tau]
            }
            dcomplex codiag = p - q;
            if (std::abs(codiag) < 1e-12 * rt.step_modulus())
                throw ValidationError("degenerate rhombus (zero co-diagonal)");
            tk.K.at(widx(wa, wb), bi) += tw * (double)(da * db) * codiag;
        }
    }
    tk.full = CMatrix(2 * nm);
    for (int w = 0; w < nm; w++)
        for (int bcol = 0; bcol < nm; bcol++) {
            tk.full.at(w, nm + bcol) = tk.K.at(w, bcol);
            tk.full.at(nm + bcol, w) = -tk.K.at(w, bcol);
        }
    return tk;
}

dcomplex kenyon_exponential(const RhomboidTorus& rt, int kb, int la, dcomplex z) {
    dcomplex v = 1.0;
    for (int i = 0; i < kb; i++)
        v *= (1.0 + z * rt.b[2 * i]) / (1.0 - z * rt.b[2 * i + 1]);
    for (int j = 0; j < la; j++)
        v *= (1.0 + z * rt.a[2 * j]) / (1.0 - z * rt.a[2 * j + 1]);
    return v;
}

namespace {

// P(z) = prod(1 + z a_odd) + prod(1 - z a_even), evaluated stably in product
// form, plus its derivative.
struct RootPoly {
    const RhomboidTorus& rt;
    dcomplex eval(dcomplex z) const {
        dcomplex p1 = 1.0, p2 = 1.0;
        for (int j = 0; j < rt.n(); j++) {
            p1 *= 1.0 + z * rt.a[2 * j];
            p2 *= 1.0 - z * rt.a[2 * j + 1];
        }
        return p1 + p2;
    }
    dcomplex deriv(dcomplex z) const {
        dcomplex p1 = 1.0, p2 = 1.0, d1 = 0.0, d2 = 0.0;
        for (int j = 0; j < rt.n(); j++) {
            d1 = d1 * (1.0 + z * rt.a[2 * j]) + p1 * rt.a[2 * j];
            p1 *= 1.0 + z * rt.a[2 * j];
            d2 = d2 * (1.0 - z * rt.a[2 * j + 1]) - p2 * rt.a[2 * j + 1];
            p2 *= 1.0 - z * rt.a[2 * j + 1];
        }
        return d1 + d2;
    }
};

}  // namespace

RootReport antiperiodic_roots(const RhomboidTorus& rt) {
    RootReport rep;
    int n = rt.n();
    rep.expected_degree = n;
    double s = rt.step_modulus();

    // Coefficients in the scaled variable u = z*s: elementary symmetric sums
    // of unit-modulus steps, so magnitudes stay near binomial scale.
    std::vector<dcomplex> c1(n + 1, 0.0), c2(n + 1, 0.0);
    c1[0] = c2[0] = 1.0;
    for (int j = 0; j < n; j++) {
        dcomplex f1 = rt.a[2 * j] / s, f2 = -rt.a[2 * j + 1] / s;
        for (int t = std::min(j, n - 1); t >= 0; t--) {
            c1[t + 1] += c1[t] * f1;
            c2[t + 1] += c2[t] * f2;
        }
    }
    std::vector<dcomplex> c(n + 1);
    for (int t = 0; t <= n; t++) c[t] = c1[t] + c2[t];

    int deg = n;
    while (deg > 0 && std::abs(c[deg]) < 1e-10) deg--;  // genuine cancellation only
    rep.degree_drop = n - deg;
    rep.degenerate = rep.degree_drop > 0;
    if (deg == 0) return rep;

    // Durand-Kerner in u, then one damped-Newton polish per root on the
    // product form of P.
    std::vector<dcomplex> u(deg);
    dcomplex seed(0.4, 0.9);
    dcomplex pw = 1.0;
    for (int i = 0; i < deg; i++) {
        pw *= seed;
        u[i] = pw;
    }
    auto peval = [&](dcomplex x) {
        dcomplex v = 0.0;
        for (int t = deg; t >= 0; t--) v = v * x + c[t];
        return v;
    };
    for (int it = 0; it < 300; it++) {
        double moved = 0;
        for (int i = 0; i < deg; i++) {
            dcomplex denom = c[deg];
            for (int j = 0; j < deg; j++)
                if (j != i) denom *= u[i] - u[j];
            dcomplex delta = peval(u[i]) / denom;
            u[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    RootPoly rp{rt};
    for (int i = 0; i < deg; i++) {
        dcomplex z = u[i] / s;
        for (int it = 0; it < 40; it++) {
            dcomplex f = rp.eval(z), df = rp.deriv(z);
            if (std::abs(df) == 0.0) break;
            dcomplex step = f / df;
            double damp = 1.0;
            while (damp > 1.0 / 64 && std::abs(rp.eval(z - damp * step)) > std::abs(f))
                damp *= 0.5;
            z -= damp * step;
            if (std::abs(step) * damp < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rep.roots.push_back(z);
    }
    std::sort(rep.roots.begin(), rep.roots.end(), [](dcomplex x, dcomplex y) {
        if (x.imag() != y.imag()) return x.imag() < y.imag();
        return x.real() < y.real();
    });
    for (auto z : rep.roots) {
        double denom_scale = 1.0;
        for (int j = 0; j < n; j++) denom_scale *= std::abs(1.0 - z * rt.a[2 * j + 1]);
        double resid = (denom_scale > 0) ? std::abs(f_one(rt, z) + 1.0) : 0.0;
        rep.max_residual = std::max(rep.max_residual, resid);
    }
    return rep;
}

dcomplex trace_product(const RhomboidTorus& rt, SpinChoice spin,
                       const std::vector<dcomplex>& roots) {
    dcomplex v = std::pow(2.0, rt.m());
    for (auto z : roots) v *= 1.0 - (double)spin.sign * f_tau(rt, z);
    return v;
}

dcomplex trace_product(const RhomboidTorus& rt, SpinChoice spin) {
    return trace_product(rt, spin, antiperiodic_roots(rt).roots);
}

dcomplex chiral_det_formula(const RhomboidTorus& rt, SpinChoice spin,
                            const std::vector<dcomplex>& roots) {
    int m = rt.m(), n = rt.n();
    dcomplex v = std::pow(2.0, m);
    if ((n % 2) && (m % 2)) v = -v;
    for (auto z : roots) {
        dcomplex num = 1.0, den = 1.0, zm = 1.0;
        for (int i = 0; i < m; i++) {
            num *= 1.0 + z * rt.b[2 * i];
            den *= 1.0 - z * rt.b[2 * i + 1];
            zm *= z;
        }
        v *= (num - (double)spin.sign * den) / zm;
    }
    return v;
}

TraceReport verify_trace(const RhomboidTorus& rt) {
    TraceReport rep;
    rep.root_report = antiperiodic_roots(rt);
    const auto& roots = rep.root_report.roots;
    for (int si = 0; si < 2; si++) {
        SpinChoice sp{si == 0 ? +1 : -1};
        TorusKasteleyn tk = build_torus(rt, sp);
        rep.det_full[si] = det_lu(tk.full);
        rep.det_chiral[si] = det_lu(tk.K);
        rep.pfaffian[si] = pfaffian_numeric(tk.full);
        rep.trace[si] = trace_product(rt, sp, roots);
        rep.closed[si] = chiral_det_formula(rt, sp, roots);
    }
    int matches = 0;
    for (int t = 0; t < 2; t++)
        for (int s = 0; s < 2; s++) {
            dcomplex t2 = rep.trace[s] * rep.trace[s];
            double rel = std::abs(rep.det_full[t] - t2) /
                         std::max({std::abs(rep.det_full[t]), std::abs(t2), 1e-300});
            rep.literal_rel[t][s] = rel;
            if (rel < 1e-8) matches++;
        }
    rep.literal_match = matches > 0;

    // ratio identity: det_full[+]/det_full[-] == (trace[+]/trace[-])^2
    dcomplex lhs = rep.det_full[0] * rep.trace[1] * rep.trace[1];
    dcomplex rhs = rep.det_full[1] * rep.trace[0] * rep.trace[0];
    rep.ratio_rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});

    double worst = 0;
    for (int si = 0; si < 2; si++) {
        double rel = std::abs(rep.det_chiral[si] - rep.closed[si]) /
                     std::max({std::abs(rep.det_chiral[si]), std::abs(rep.closed[si]), 1e-300});
        worst = std::max(worst, rel);
    }
    rep.closed_rel = worst;
    return rep;
}

dcomplex regularized_pf(const RhomboidTorus& rt, SpinChoice spin) {
    auto roots = antiperiodic_roots(rt).roots;
    dcomplex v = 1.0;
    for (auto z : roots)
        v *= 1.0 - (double)spin.sign * f_tau(rt, dcomplex(0.0, std::abs(z)));
    return v;
}

dcomplex mode_regularized_pf(const RhomboidTorus& rt, SpinChoice spin) {
    auto roots = antiperiodic_roots(rt).roots;
    dcomplex q = std::exp(dcomplex(0, 2 * std::numbers::pi) * rt.tau);
    dcomplex v = 1.0;
    for (auto z : roots)
        v *= 1.0 - (double)spin.sign * std::pow(q, std::abs(z) / (2 * std::numbers::pi));
    return v;
}

UnregularizedResult unregularized_product(const RhomboidTorus& rt, SpinChoice spin) {
    UnregularizedResult res;
    auto roots = antiperiodic_roots(rt).roots;
    res.value = 1.0;
    for (auto z : roots) {
        // pole of f_tau at z = 1/b_even
        for (int i = 0; i < rt.m(); i++)
            if (std::abs(1.0 - z * rt.b[2 * i + 1]) < 1e-9) res.pole = true;
        res.value *= 1.0 - (double)spin.sign * f_tau(rt, z);
    }
    dcomplex reg = regularized_pf(rt, spin);
    res.ratio_to_regularized = (std::abs(reg) > 0) ? res.value / reg : dcomplex(0);
    return res;
}

RhomboidTorus subdivide(const RhomboidTorus& rt) {
    RhomboidTorus out;
    out.tau = rt.tau;
    for (auto x : rt.a) {
        out.a.push_back(x / 2.0);
        out.a.push_back(x / 2.0);
    }
    for (auto x : rt.b) {
        out.b.push_back(x / 2.0);
        out.b.push_back(x / 2.0);
    }
    return out;
}

std::vector<LimitRow> limit_series(const RhomboidTorus& rt0, int levels, SpinChoice spin) {
    std::vector<LimitRow> rows;
    dcomplex q = std::exp(dcomplex(0, 2 * std::numbers::pi) * rt0.tau);
    dcomplex qdual = std::exp(dcomplex(0, -2 * std::numbers::pi) / rt0.tau);
    dcomplex target = plimit_target(q, spin.sign, 0);  // auto truncation
    dcomplex dual = target * plimit_target(qdual, spin.sign, 0);
    RhomboidTorus rt = rt0;
    for (int lev = 0; lev <= levels; lev++) {
        LimitRow row;
        row.level = lev;
        row.n = rt.n();
        row.m = rt.m();
        row.regularized = regularized_pf(rt, spin);
        row.target = target;
        row.abs_error = std::abs(row.regularized - target);
        row.dual_target = dual;
        row.dual_error = std::abs(row.regularized - dual);
        row.mode_regularized = mode_regularized_pf(rt, spin);
        row.mode_error = std::abs(row.mode_regularized - target);
        auto un = unregularized_product(rt, spin);
        row.unregularized_magnitude = std::abs(un.value);
        row.unregularized_pole = un.pole;
        rows.push_back(row);
        if (lev < levels) rt = subdivide(rt);
    }
    return rows;
}

RhomboidTorus random_isoradial(int n, int m, dcomplex tau, uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto unit = [&]() { return (double)(eng() >> 11) / (double)(1ull << 53); };
    RhomboidTorus rt;
    rt.tau = tau;
    double s = std::max(1.0 / (2 * n), std::abs(tau) / (2 * m)) * (1.2 + 0.4 * unit());
    auto chain = [&](int steps, dcomplex targetsum) {
        std::vector<dcomplex> out;
        for (int attempt = 0; attempt < 200; attempt++) {
            out.clear();
            dcomplex rem = targetsum;
            bool ok = true;
            for (int r = steps; r > 2; r--) {
                bool placed = false;
                for (int tries = 0; tries < 400; tries++) {
                    double th = std::arg(rem) + (unit() * 2 - 1) * std::numbers::pi / 1.8;
                    dcomplex st = std::polar(s, th);
                    if (std::abs(rem - st) <= (r - 1) * s * 0.995) {
                        out.push_back(st);
                        rem -= st;
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            double d = std::abs(rem);
            if (d > 2 * s * 0.999999) continue;
            double al = std::arg(rem), de = std::acos(std::min(1.0, d / (2 * s)));
            out.push_back(std::polar(s, al + de));
            out.push_back(std::polar(s, al - de));
            return out;
        }
        throw ValidationError("failed to sample an isoradial chain");
    };
    rt.a = chain(2 * n, 1.0);
    rt.b = chain(2 * m, tau);
    return rt;
}

dcomplex parse_tau(const std::string& text) {
    // forms: "i", "2i", "0.5+1i", "1.2i", "0.3+0.9i"
    std::string t;
    for (char ch : text)
        if (!isspace((unsigned char)ch)) t += ch;
    if (t.empty()) throw ValidationError("empty tau");
    double re = 0, im = 0;
    size_t ipos = t.find('i');
    if (ipos == std::string::npos) throw ValidationError("tau must have an imaginary part");
    // split at the last +/- that is not at position 0 and not after 'e'
    size_t split = std::string::npos;
    for (size_t p = 1; p < t.size(); p++) {
        if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E')
            split = p;
    }
    std::string re_s, im_s;
    if (split == std::string::npos) {
        im_s = t;
    } else {
        re_s = t.substr(0, split);
        im_s = t.substr(split);
    }
    if (!re_s.empty()) re = std::stod(re_s);
    // strip the trailing i
    im_s = im_s.substr(0, im_s.find('i'));
    if (im_s.empty() || im_s == "+")
        im = 1;
    else if (im_s == "-")
        im = -1;
    else
        im = std::stod(im_s);
    dcomplex tau(re, im);
    if (tau.imag() <= 0) throw ValidationError("Im(tau) must be positive");
    return tau;
}

}  // namespace dimerglue
