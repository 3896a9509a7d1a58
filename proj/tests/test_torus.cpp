#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dimerglue/cft.hpp"
#include "dimerglue/torus.hpp"

using namespace dimerglue;

namespace {

RhomboidTorus equal_steps(int n, int m, dcomplex tau) {
    RhomboidTorus rt;
    rt.tau = tau;
    rt.a.assign(2 * n, dcomplex(1.0 / (2 * n), 0));
    rt.b.assign(2 * m, tau / (2.0 * m));
    return rt;
}

const RhomboidTorus& pinned_instance() {  // n=2, m=1, tau=i
    static RhomboidTorus rt = [] {
        RhomboidTorus r;
        r.tau = dcomplex(0, 1);
        r.a = {0.25, 0.25, 0.25, 0.25};
        r.b = {dcomplex(0, 0.5), dcomplex(0, 0.5)};
        return r;
    }();
    return rt;
}

}  // namespace

TEST_CASE("torus construction counts and antisymmetry") {
    auto tk = build_torus(equal_steps(1, 1, dcomplex(0, 1)), SpinChoice{+1});
    CHECK(tk.black.size() == 1);
    CHECK(tk.white.size() == 1);
    // four weighted edges collapse into one entry
    CHECK(std::abs(tk.K.at(0, 0)) > 0);
    for (int i = 0; i < tk.full.n; i++)
        for (int j = 0; j < tk.full.n; j++)
            CHECK(std::abs(tk.full.at(i, j) + tk.full.at(j, i)) < 1e-14);
}

TEST_CASE("weight modulus equals the circumcenter construction") {
    // |K(w,b)| must be twice the distance from the dual circumcenter to the
    // midpoint of {w,b}; the co-diagonal form is the algebraic shortcut.
    RhomboidTorus rt = random_isoradial(2, 2, dcomplex(0.3, 1.2), 99);
    int n2 = 2 * rt.n(), m2 = 2 * rt.m();
    std::vector<dcomplex> pa(n2 + 1, 0.0), pb(m2 + 1, 0.0);
    for (int t = 0; t < n2; t++) pa[t + 1] = pa[t] + rt.a[t];
    for (int t = 0; t < m2; t++) pb[t + 1] = pb[t] + rt.b[t];
    // black (0,0), NE white: rhombus corners b=0, duals at a1 and b1
    dcomplex b = 0, c1 = rt.a[0], c2 = rt.b[0], w = rt.a[0] + rt.b[0];
    dcomplex mid = 0.5 * (b + w);
    double want = 2.0 * std::abs(c1 - mid);
    CHECK(std::abs(std::abs(rt.a[0] - rt.b[0]) - want) < 1e-12);
    CHECK(std::abs(2.0 * std::abs(c2 - mid) - want) < 1e-12);
}

TEST_CASE("kenyon exponential basics") {
    auto rt = equal_steps(2, 1, dcomplex(0, 1));
    CHECK(std::abs(kenyon_exponential(rt, 0, 0, dcomplex(3, 4)) - 1.0) == 0);
    // full a-period with n=2, all steps 1/4
    dcomplex z(0.3, 0.7);
    dcomplex want = std::pow((1.0 + z * 0.25) / (1.0 - z * 0.25), 2);
    CHECK(std::abs(f_one(rt, z) - want) < 1e-14);
    // f_tau with m=1, b=(tau/2, tau/2)
    dcomplex wt = (1.0 + z * rt.tau * 0.5) / (1.0 - z * rt.tau * 0.5);
    CHECK(std::abs(f_tau(rt, z) - wt) < 1e-14);
}

TEST_CASE("antiperiodic roots: pinned, degenerate and generic") {
    auto rep = antiperiodic_roots(pinned_instance());
    REQUIRE(rep.roots.size() == 2);
    CHECK(std::abs(rep.roots[0] - dcomplex(0, -4)) < 1e-9);
    CHECK(std::abs(rep.roots[1] - dcomplex(0, 4)) < 1e-9);
    CHECK(rep.max_residual < 1e-10);

    auto degen = antiperiodic_roots(equal_steps(1, 1, dcomplex(0, 1)));
    CHECK(degen.roots.empty());
    CHECK(degen.degenerate);

    RhomboidTorus rnd = random_isoradial(3, 2, dcomplex(0.2, 1.1), 4242);
    auto rr = antiperiodic_roots(rnd);
    CHECK(rr.roots.size() == 3);
    CHECK(rr.max_residual < 1e-10);
}

TEST_CASE("trace product reproduces the 32/3 value") {
    auto roots = antiperiodic_roots(pinned_instance()).roots;
    dcomplex tp = trace_product(pinned_instance(), SpinChoice{+1}, roots);
    CHECK(std::abs(tp - dcomplex(32.0 / 3.0, 0)) < 1e-9);
    dcomplex tm = trace_product(pinned_instance(), SpinChoice{-1}, roots);
    CHECK(std::abs(tm - dcomplex(-8.0 / 3.0, 0)) < 1e-9);
    // spin flip changes each factor to (1 + f)
    CHECK(std::abs(f_tau(pinned_instance(), roots[1]) - dcomplex(-1.0 / 3, 0)) <
          1e-10);
}

TEST_CASE("degenerate root set gives the empty product") {
    auto rt = equal_steps(1, 1, dcomplex(0, 1));
    CHECK(std::abs(trace_product(rt, SpinChoice{+1}) - 2.0) < 1e-12);
}

TEST_CASE("determinant identities on random isoradial tori") {
    int idx = 0;
    for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {4, 4}}) {
        dcomplex tau(0.1 * idx, 1.0 + 0.2 * idx);
        RhomboidTorus rt = random_isoradial(n, m, tau, 1000 + idx);
        rt.validate();
        auto rep = verify_trace(rt);
        INFO("n=", n, " m=", m);
        CHECK(rep.root_report.max_residual < 1e-10);
        CHECK(rep.ratio_rel < 1e-8);
        CHECK(rep.closed_rel < 1e-8);
        idx++;
    }
}

TEST_CASE("rigid rotation leaves |det| invariant") {
    RhomboidTorus rt = random_isoradial(2, 2, dcomplex(0, 1.3), 7);
    auto tk = build_torus(rt, SpinChoice{+1});
    double d0 = std::abs(det_lu(tk.full));
    RhomboidTorus rot = rt;
    dcomplex phase = std::polar(1.0, 0.7);
    for (auto& x : rot.a) x *= phase;
    for (auto& x : rot.b) x *= phase;
    // steps no longer sum to 1/tau, so build directly without validate
    auto tk2 = build_torus(rot, SpinChoice{+1});
    CHECK(std::abs(std::abs(det_lu(tk2.full)) - d0) < 1e-8 * std::max(1.0, d0));
}

TEST_CASE("regularized product on the pinned instance") {
    // roots +-4i both map to 4i; f_tau(4i) = -1/3
    dcomplex reg = regularized_pf(pinned_instance(), SpinChoice{+1});
    CHECK(std::abs(reg - dcomplex(16.0 / 9.0, 0)) < 1e-10);
}

TEST_CASE("unregularized ratio structure") {
    auto rt = equal_steps(2, 2, dcomplex(0, 2));
    auto res = unregularized_product(rt, SpinChoice{+1});
    CHECK(!res.pole);
    CHECK(std::abs(res.ratio_to_regularized) > 1.0 + 1e-6);  // |ratio| != 1
    // all roots on the positive imaginary axis -> ratio 1: take the conjugate
    // fold manually by keeping only one sign class: not available here, so
    // check instead that the pinned instance (roots +-4i) has the predicted
    // ratio (1 - f(-4i)) / (1 - f(4i)) relative to the regularized square.
    auto roots = antiperiodic_roots(pinned_instance()).roots;
    dcomplex f_neg = f_tau(pinned_instance(), roots[0]);  // z = -4i
    dcomplex f_pos = f_tau(pinned_instance(), roots[1]);
    auto res2 = unregularized_product(pinned_instance(), SpinChoice{+1});
    dcomplex want = (1.0 - f_neg) / (1.0 - f_pos);
    CHECK(std::abs(res2.ratio_to_regularized - want) < 1e-10);
}

TEST_CASE("subdivision halves steps and preserves sums exactly") {
    auto rt = equal_steps(1, 1, dcomplex(0, 1));
    auto s = subdivide(rt);
    CHECK(s.n() == 2);
    CHECK(s.m() == 2);
    CHECK(s.a == std::vector<dcomplex>{0.25, 0.25, 0.25, 0.25});
    dcomplex sum = 0;
    for (auto x : s.a) sum += x;
    CHECK(sum == dcomplex(1.0));  // dyadic: exact
    s.validate();
    CHECK(2 * s.n() * 2 * s.m() == 4 * (2 * rt.n()) * (2 * rt.m()) / 1);  // 4x vertices
}

TEST_CASE("limit series columns and divergence") {
    auto rt = equal_steps(2, 2, dcomplex(0, 2));
    auto rows = limit_series(rt, 2, SpinChoice{+1});
    REQUIRE(rows.size() == 3);
    // the mode-regularized diagnostic must decrease monotonically toward the
    // closed-form target
    CHECK(rows[1].mode_error < rows[0].mode_error);
    CHECK(rows[2].mode_error < rows[1].mode_error);
    // the raw product diverges
    CHECK(rows[1].unregularized_magnitude > rows[0].unregularized_magnitude);
    CHECK(rows[2].unregularized_magnitude > rows[1].unregularized_magnitude);
    // the literal regularized product tracks the dual-corrected target
    CHECK(rows[2].dual_error < rows[1].dual_error);
}

TEST_CASE("limit errors decrease for three moduli") {
    for (dcomplex tau : {dcomplex(0, 1), dcomplex(0, 2), dcomplex(0.5, 1)}) {
        RhomboidTorus rt;
        rt.tau = tau;
        rt.a = {0.25, 0.25, 0.25, 0.25};
        rt.b = {tau / 4.0, tau / 4.0, tau / 4.0, tau / 4.0};
        auto rows = limit_series(rt, 3, SpinChoice{+1});
        for (size_t i = 1; i < rows.size(); i++) {
            CHECK(rows[i].mode_error < rows[i - 1].mode_error);
            CHECK(rows[i].dual_error < rows[i - 1].dual_error);
        }
    }
}

TEST_CASE("tau parser") {
    CHECK(parse_tau("i") == dcomplex(0, 1));
    CHECK(parse_tau("2i") == dcomplex(0, 2));
    CHECK(parse_tau("0.5+1i") == dcomplex(0.5, 1));
    CHECK_THROWS_AS(parse_tau("1"), ValidationError);
    CHECK_THROWS_AS(parse_tau("-2i"), ValidationError);
}
