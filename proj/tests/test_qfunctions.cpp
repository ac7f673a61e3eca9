#include "doctest.h"
#include "qmoment/qfunctions.hpp"

using namespace qmoment;

namespace {
const QContext& ctx_half() {
    static QContext ctx(Rat(1, 2));
    return ctx;
}
Real tol20() { return make_real(Rat(1, pow(Int(10), 20u)), 128); }  // 1e-20
}  // namespace

TEST_CASE("values at the origin") {
    const QContext& ctx = ctx_half();
    CHECK(eval_E(Complex(Real(0)), ctx).value.re == 1);
    CHECK(eval_Eq_alpha(Real(0.5), Complex(Real(0)), ctx).value.re == 1);
    CHECK(eval_Sq(Real(0), ctx).value.re == 0);
    CHECK(eval_Cq(Real(0), ctx).value.re == 1);
    CHECK(eval_Shq(Real(0), ctx).value.re == 0);
    CHECK(eval_Chq(Real(0), ctx).value.re == 1);
    CHECK(eval_Aq(Complex(Real(0)), ctx).value.re == 1);
}

TEST_CASE("e_q against the q-binomial theorem product") {
    // e_q(z) = 1/(z;q)_inf at z = q = 0.5
    const QContext& ctx = ctx_half();
    SeriesValue lhs = eval_Eq_alpha(Real(0), Complex(Real(0.5)), ctx);
    SeriesValue prod = q_pochhammer(Complex(Real(0.5)), ctx, kPochInfinity);
    Real rhs = 1 / prod.value.re;
    CHECK(abs(lhs.value.re - rhs) <= tol20() * tol20());

    CHECK_THROWS_AS(eval_Eq_alpha(Real(0), Complex(Real(1)), ctx), NonConvergence);
    CHECK_THROWS_AS(eval_Eq_alpha(Real(-1), Complex(Real(0.5)), ctx), DomainError);
}

TEST_CASE("E^(1) equals Jackson's E_q at a shifted argument") {
    const QContext& ctx = ctx_half();
    Complex w(Real(0.8), Real(0.3));
    SeriesValue lhs = eval_Eq_alpha(Real(1), w, ctx);
    // E_q(z) = 0phi0(;;q,-z)
    HypergeometricSpec spec;
    spec.argument = QParam(-ctx.scale_q_quarter(w, 2), 0);  // z = q^{1/2} w
    SeriesValue rhs = eval_phi(spec, ctx);
    CHECK(abs_val(lhs.value - rhs.value) <= tol20() * tol20());
}

TEST_CASE("E series equals its 1phi1 representation") {
    const QContext& ctx = ctx_half();
    for (double zd : {0.7, -1.3, 2.1}) {
        Complex z{Real(zd)};
        HypergeometricSpec spec;
        spec.upper = {QParam::zero()};
        spec.lower = {QParam::qpow(2, Complex(Real(-1)))};
        spec.base_quarters = 2;
        spec.argument = QParam(-z, 1);  // -q^{1/4} z
        SeriesValue via_phi = eval_phi(spec, ctx);
        SeriesValue direct = eval_E(z, ctx);
        CHECK(abs_val(via_phi.value - direct.value) <= tol20() * tol20());
    }
}

TEST_CASE("q-difference equation of E at z = 0.7") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();
    Real z(0.7);
    SeriesValue r = eval_E(Complex(z), ctx) - eval_E(Complex(ctx.scale_q_quarter(z, 4)), ctx) -
                    sv_value(Complex(ws.up(z) * ws.q14)) *
                        eval_E(Complex(ctx.scale_q_quarter(z, 2)), ctx);
    CHECK(abs_val(r.value) <= r.error());
    CHECK(abs_val(r.value) <= tol20());
}

TEST_CASE("base inversion evaluations at z = 0.3") {
    const QContext& ctx = ctx_half();
    // E_{1/q}(q^{-1/4} z) = E_q(-q^{1/4} z)
    Real z(0.3);
    SeriesValue lhs = eval_E_qinv(Complex(ctx.scale_q_quarter(z, -1)), ctx);
    SeriesValue rhs = eval_E(Complex(-ctx.scale_q_quarter(z, 1)), ctx);
    CHECK(abs_val(lhs.value - rhs.value) <= tol20() * tol20());
}

TEST_CASE("S and C q-difference relations at z = 0.9") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();
    Real z(0.9);
    SeriesValue r1 = eval_Sq(z, ctx) - eval_Sq(ctx.scale_q_quarter(z, 4), ctx) -
                     sv_value(Complex(ws.up(z))) * eval_Cq(ctx.scale_q_quarter(z, 2), ctx);
    SeriesValue r2 = eval_Cq(z, ctx) - eval_Cq(ctx.scale_q_quarter(z, 4), ctx) +
                     sv_value(Complex(ws.up(z) * ws.q12)) *
                         eval_Sq(ctx.scale_q_quarter(z, 2), ctx);
    CHECK(abs_val(r1.value) <= tol20());
    CHECK(abs_val(r2.value) <= tol20());
}

TEST_CASE("Pythagorean identity at v = 1.3") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();
    Real v(1.3);
    Real vq = ctx.scale_q_quarter(v, 2);
    SeriesValue r = eval_Cq(vq, ctx) * eval_Cq(v, ctx) +
                    ws.q12 * (eval_Sq(vq, ctx) * eval_Sq(v, ctx));
    CHECK(abs(r.value.re - 1) <= tol20());
}

TEST_CASE("S and C against their 1phi1 base-q^2 forms") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();
    for (double zd : {0.4, 1.7, -2.2}) {
        Real z = ws.up(Real(zd));  // z^2 below must carry full width
        // S(z) = z/(1-q) 1phi1(0; q^3; q^2, q^2 z^2)
        HypergeometricSpec s;
        s.upper = {QParam::zero()};
        s.lower = {QParam::qpow(12)};
        s.base_quarters = 8;
        s.argument = QParam(Complex(z * z), 8);
        SeriesValue s_phi = sv_value(Complex(ws.up(z) / (1 - ws.q))) * eval_phi(s, ctx);
        CHECK(abs_val(s_phi.value - eval_Sq(z, ctx).value) <= tol20() * tol20());

        // C(z) = 1phi1(0; q; q^2, q z^2)
        HypergeometricSpec c;
        c.upper = {QParam::zero()};
        c.lower = {QParam::qpow(4)};
        c.base_quarters = 8;
        c.argument = QParam(Complex(z * z), 4);
        SeriesValue c_phi = eval_phi(c, ctx);
        CHECK(abs_val(c_phi.value - eval_Cq(z, ctx).value) <= tol20() * tol20());
    }
}

TEST_CASE("hyperbolic functions") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();
    Real x(0.8);

    // E(x) = Ch(x) + q^{1/4} Sh(x)
    SeriesValue lhs = eval_E(Complex(x), ctx);
    SeriesValue rhs = eval_Chq(x, ctx) + ws.q14 * eval_Shq(x, ctx);
    CHECK(abs_val(lhs.value - rhs.value) <= tol20());

    // real series match the complex detour: Sh(x) = -i S(ix), Ch(x) = C(ix)
    SeriesValue s_det = eval_Sq(Complex(Real(0), x), ctx);
    CHECK(abs(eval_Shq(x, ctx).value.re - s_det.value.im) <= tol20());
    SeriesValue c_det = eval_Cq(Complex(Real(0), x), ctx);
    CHECK(abs(eval_Chq(x, ctx).value.re - c_det.value.re) <= tol20());

    // Ch >= 1 on the real line (all terms nonnegative)
    for (double t : {-3.0, -0.4, 0.0, 1.1, 2.8}) CHECK(eval_Chq(Real(t), ctx).value.re >= 1);
}

TEST_CASE("A_q changes sign between 1 and 10 at q = 0.5") {
    const QContext& ctx = ctx_half();
    // dense-sampling oracle
    int sign_changes = 0;
    Real prev = eval_Aq(Complex(Real(1)), ctx).value.re;
    for (int i = 1; i <= 90; ++i) {
        Real x = Real(1) + Real(i) / 10;
        Real cur = eval_Aq(Complex(x), ctx).value.re;
        if ((prev > 0) != (cur > 0)) ++sign_changes;
        prev = cur;
    }
    CHECK(sign_changes >= 2);  // z_1 ~ 1.25 and z_2 ~ 6.5 lie in (1,10)

    // series form sum q^{n^2} (-z)^n/(q;q)_n against the 0phi1 path
    for (double zd : {0.3, 2.7, -1.4}) {
        HypergeometricSpec spec;
        spec.lower = {QParam::zero()};
        spec.argument = QParam(Complex(Real(-zd)), 4);  // -q z
        SeriesValue via_phi = eval_phi(spec, ctx);
        SeriesValue direct = eval_Aq(Complex(Real(zd)), ctx);
        CHECK(abs_val(via_phi.value - direct.value) <= tol20() * tol20());
    }
}

TEST_CASE("addition formula") {
    const QContext& ctx = ctx_half();
    // u = v: the second 3phi3 term carries the (u-v) prefactor and vanishes
    Complex w(Real(0.6));
    SeriesValue rhs = product_formula_rhs(w, w, ctx);
    SeriesValue lhs = eval_E(w, ctx) * eval_E(-w, ctx);
    CHECK(abs_val(lhs.value - rhs.value) <= tol20());

    // direct product oracle at u = 0.9, v = 0.4
    SeriesValue r2 = product_formula_rhs(Complex(Real(0.9)), Complex(Real(0.4)), ctx);
    SeriesValue l2 = eval_E(Complex(Real(0.9)), ctx) * eval_E(Complex(Real(-0.4)), ctx);
    CHECK(abs_val(l2.value - r2.value) <= tol20());

    CHECK_THROWS_AS(product_formula_rhs(Complex(Real(0)), Complex(Real(1)), ctx), DomainError);
    CHECK_THROWS_AS(product_formula_rhs(Complex(Real(1)), Complex(Real(0)), ctx), DomainError);
}

TEST_CASE("trigonometric closed forms") {
    const QContext& ctx = ctx_half();
    QContext ctx3(Rat(3, 10));
    Workspace ws3 = ctx3.base_workspace();

    // difference formula vanishes identically at u = v
    SeriesValue d0 = trig_diff_formula(Complex(Real(1.1)), Complex(Real(1.1)), ctx);
    CHECK(abs_val(d0.value) == 0);

    // direct-evaluation oracle at u = 1.2, v = 0.5, q = 0.3
    Complex u(Real(1.2)), v(Real(0.5));
    SeriesValue sum_closed = trig_sum_formula(u, v, ctx3);
    SeriesValue sum_direct = eval_Cq(u, ctx3) * eval_Cq(v, ctx3) +
                             ws3.q12 * (eval_Sq(u, ctx3) * eval_Sq(v, ctx3));
    CHECK(abs_val(sum_closed.value - sum_direct.value) <= tol20());

    SeriesValue diff_closed = trig_diff_formula(u, v, ctx3);
    SeriesValue diff_direct = eval_Sq(u, ctx3) * eval_Cq(v, ctx3) -
                              eval_Cq(u, ctx3) * eval_Sq(v, ctx3);
    CHECK(abs_val(diff_closed.value - diff_direct.value) <= tol20());

    // u = q^{1/2} v collapses the sum formula to 1
    Real vv(1.1);
    SeriesValue one = trig_sum_formula(Complex(ctx.scale_q_quarter(vv, 2)), Complex(vv), ctx);
    CHECK(abs(one.value.re - 1) <= tol20());
}

TEST_CASE("squared modulus of E on the imaginary axis") {
    const QContext& ctx = ctx_half();
    Workspace ws = ctx.base_workspace();

    CHECK(abs_E_sq(Real(0), ctx).value.re == 1);

    Real x(1);
    SeriesValue p2 = abs_E_sq(x, ctx);
    SeriesValue cs = eval_Cq(x, ctx) * eval_Cq(x, ctx) +
                     ws.q12 * (eval_Sq(x, ctx) * eval_Sq(x, ctx));
    CHECK(abs(p2.value.re - cs.value.re) <= tol20());
    SeriesValue e = eval_E(Complex(Real(0), x), ctx);
    CHECK(abs(p2.value.re - norm_sq(e.value)) <= tol20());

    for (double t : {-2.0, 0.7, 3.3}) CHECK(abs_E_sq(Real(t), ctx).value.re > 0);
}

TEST_CASE("derivative series against central differences") {
    // high-precision central differences with a 2^-100 step (test oracle only)
    QContext hi(Rat(1, 2), 512);
    Real h = upsized(pow2(-100), 700);
    for (double xd : {0.7, 2.4}) {
        Real x = upsized(Real(xd), 700);
        Real sp = eval_Sq_prime(x, hi).value.re;
        Real fd = (eval_Sq(Real(x + h), hi).value.re - eval_Sq(Real(x - h), hi).value.re) / (2 * h);
        CHECK(abs(sp - fd) <= pow2(-180));

        Real cp = eval_Cq_prime(x, hi).value.re;
        Real fdc = (eval_Cq(Real(x + h), hi).value.re - eval_Cq(Real(x - h), hi).value.re) / (2 * h);
        CHECK(abs(cp - fdc) <= pow2(-180));

        Real ap = eval_Aq_prime(Complex(x), hi).value.re;
        Real fda = (eval_Aq(Complex(Real(x + h)), hi).value.re -
                    eval_Aq(Complex(Real(x - h)), hi).value.re) /
                   (2 * h);
        CHECK(abs(ap - fda) <= pow2(-180));
    }
}

TEST_CASE("SeriesValue refinement honesty") {
    // doubling max_terms and halving the tolerance moves values by less than
    // the reported tail bound
    const QContext& ctx = ctx_half();
    QContext tight(Rat(1, 2), 256, QContext::default_rel_tol() / 2, 20000);
    for (double zd : {0.9, -1.7, 3.1}) {
        SeriesValue a = eval_E(Complex(Real(zd)), ctx);
        SeriesValue b = eval_E(Complex(Real(zd)), tight);
        CHECK(abs_val(a.value - b.value) <= a.tail_bound + a.round_off + b.round_off);
        CHECK(a.terms_used <= ctx.max_terms());
    }
}
