#include "doctest.h"
#include "qmoment/qcore.hpp"

using namespace qmoment;

namespace {
const QContext& ctx_half() {
    static QContext ctx(Rat(1, 2));
    return ctx;
}
Real tiny(long bits = 200) { return pow2(-bits); }
}  // namespace

TEST_CASE("q_pochhammer finite products") {
    const QContext& ctx = ctx_half();
    // (0.5; 0.5)_2 = (1 - 0.5)(1 - 0.25) = 0.375
    SeriesValue v = q_pochhammer(Complex(Real(0.5)), ctx, 2);
    CHECK(abs(v.value.re - Real(0.375)) <= tiny());
    CHECK(v.value.im == 0);

    // empty product
    SeriesValue e = q_pochhammer(Complex(Real(7)), ctx, 0);
    CHECK(e.value.re == 1);
    CHECK(e.tail_bound == 0);

    // step identity (a;q)_{n+1} = (a;q)_n (1 - a q^n)
    Workspace ws = ctx.base_workspace();
    Complex a(Real(0.3), Real(-0.7));
    for (long n : {1L, 4L, 9L}) {
        SeriesValue lhs = q_pochhammer(a, ctx, n + 1);
        SeriesValue rhs = q_pochhammer(a, ctx, n);
        Complex factor = Complex(ws.up(Real(1))) - ws.up(a) * ws.qpow(n);
        CHECK(abs_val(lhs.value - rhs.value * factor) <= tiny());
    }
}

TEST_CASE("q_pochhammer infinite products") {
    const QContext& ctx = ctx_half();
    // first factor vanishes
    SeriesValue z = q_pochhammer(Complex(Real(1)), ctx, kPochInfinity);
    CHECK(z.value.re == 0);

    // against a long finite product (independent of the stopping rule)
    SeriesValue inf = q_pochhammer(Complex(Real(0.5)), ctx, kPochInfinity);
    SeriesValue fin = q_pochhammer(Complex(Real(0.5)), ctx, 800);
    CHECK(abs(inf.value.re - fin.value.re) <= inf.tail_bound + tiny());

    // doubling max_terms / halving the tolerance stays inside the tail bound
    QContext tight(Rat(1, 2), 256, QContext::default_rel_tol() / 2, 20000);
    SeriesValue inf2 = q_pochhammer(Complex(Real(0.5)), tight, kPochInfinity);
    CHECK(abs(inf.value.re - inf2.value.re) <= inf.tail_bound + inf.round_off + inf2.round_off);
}

TEST_CASE("q_binomial exact polynomials") {
    LaurentPolyQ b21 = q_binomial_exact(2, 1);
    LaurentPolyQ expect21 = LaurentPolyQ::one() + LaurentPolyQ::q_power(4);
    CHECK(b21 == expect21);
    Workspace ws = ctx_half().base_workspace();
    CHECK(abs(b21.eval(ws) - Real(1.5)) <= tiny());

    CHECK(q_binomial_exact(5, 0) == LaurentPolyQ::one());
    CHECK(q_binomial_exact(5, 5) == LaurentPolyQ::one());

    // [4 2] = 1 + q + 2q^2 + q^3 + q^4
    LaurentPolyQ b42 = q_binomial_exact(4, 2);
    LaurentPolyQ expect42 = LaurentPolyQ::one() + LaurentPolyQ::q_power(4) +
                            LaurentPolyQ::q_power(8, Int(2)) + LaurentPolyQ::q_power(12) +
                            LaurentPolyQ::q_power(16);
    CHECK(b42 == expect42);

    CHECK_THROWS_AS(q_binomial_exact(3, 4), DomainError);

    // q-Pascal: [n+1, k] = [n, k-1] + q^k [n, k]
    for (long n = 1; n <= 20; ++n)
        for (long k = 1; k <= n; ++k) {
            LaurentPolyQ rhs = q_binomial_exact(n, k - 1) +
                               LaurentPolyQ::q_power(4 * k) * q_binomial_exact(n, k);
            CHECK(q_binomial_exact(n + 1, k) == rhs);
        }
}

TEST_CASE("laurent exact division") {
    // (q;q)_4 / ((q;q)_2 (q;q)_2) must divide exactly
    LaurentPolyQ num = q_pochhammer_exact(4, 1, 4);
    LaurentPolyQ den = q_pochhammer_exact(4, 1, 2) * q_pochhammer_exact(4, 1, 2);
    auto quot = LaurentPolyQ::divide_exact(num, den);
    REQUIRE(quot.has_value());
    CHECK(*quot == q_binomial_exact(4, 2));

    // non-exact division is reported, not mis-divided
    LaurentPolyQ three = LaurentPolyQ::integer(3);
    LaurentPolyQ two = LaurentPolyQ::integer(2);
    CHECK_FALSE(LaurentPolyQ::divide_exact(three, two).has_value());
}

TEST_CASE("eval_phi trivial and terminating") {
    const QContext& ctx = ctx_half();

    // A_q(0) = 0phi1(;0;q,0) = 1
    {
        HypergeometricSpec spec;
        spec.lower = {QParam::zero()};
        spec.argument = QParam(Complex(Real(0)), 0);
        SeriesValue v = eval_phi(spec, ctx);
        CHECK(v.value.re == 1);
    }
    // E(0) via the 1phi1 with base q^{1/2}: 1phi1(0; -q^{1/2}; q^{1/2}, 0) = 1
    {
        HypergeometricSpec spec;
        spec.upper = {QParam::zero()};
        spec.lower = {QParam::qpow(2, Complex(Real(-1)))};
        spec.base_quarters = 2;
        spec.argument = QParam(Complex(Real(0)), 0);
        SeriesValue v = eval_phi(spec, ctx);
        CHECK(v.value.re == 1);
    }

    // terminating 3phi3 with upper q^{-2}: exactly 3 terms, zero tail,
    // against an exact-rational brute-force summation
    {
        HypergeometricSpec spec;
        spec.upper = {QParam::zero(), QParam::qpow(-8), QParam::qpow(12)};
        spec.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                      QParam::qpow(4, Complex(Real(-1)))};
        spec.argument = QParam(Complex(Real(0.7)), 0);
        SeriesValue v = eval_phi(spec, ctx);
        CHECK(v.terms_used == 3);
        CHECK(v.tail_bound == 0);

        // oracle: direct 3-term sum in rational arithmetic; the lower
        // parameters +-q^{1/2} pair into (q;q^2)_k, so every term is rational
        // in q.  Terms:
        //   (q^{-2};q)_k (q^3;q)_k (-1)^k q^{k(k-1)/2} z^k
        //     / ((q;q)_k (q;q^2)_k (-q;q)_k)
        Rat q(1, 2);
        Rat zd(0.7);  // the same dyadic the evaluation received
        auto poch = [](const Rat& a, const Rat& ratio, long n) {
            Rat p(1), f(a);
            for (long k = 0; k < n; ++k) {
                p *= (1 - f);
                f *= ratio;
            }
            return p;
        };
        Rat sum(0);
        for (long k = 0; k <= 2; ++k) {
            Rat qpow_k2(1);
            for (long j = 0; j < k * (k - 1) / 2; ++j) qpow_k2 *= q;
            Rat zk(1);
            for (long j = 0; j < k; ++j) zk *= zd;
            Rat term = poch(Rat(4), q, k) * poch(q * q * q, q, k) * qpow_k2 * zk /
                       (poch(q, q, k) * poch(q, q * q, k) * poch(-q, q, k));
            if (k % 2) term = -term;
            sum += term;
        }
        Real oracle = make_real(sum, 300);
        CHECK(abs(v.value.re - oracle) <= tiny());
    }

    // upper parameter exactly 1 = q^0 forces a single term
    {
        HypergeometricSpec spec;
        spec.upper = {QParam::zero(), QParam::qpow(0), QParam::qpow(8)};
        spec.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                      QParam::qpow(4, Complex(Real(-1)))};
        spec.argument = QParam(Complex(Real(2)), 0);
        SeriesValue v = eval_phi(spec, ctx);
        CHECK(v.terms_used == 1);
        CHECK(v.value.re == 1);
    }
}

TEST_CASE("eval_phi error contracts") {
    const QContext& ctx = ctx_half();

    // pole in a lower parameter without earlier termination
    {
        HypergeometricSpec spec;
        spec.upper = {QParam::zero()};
        spec.lower = {QParam::qpow(-4)};
        spec.argument = QParam(Complex(Real(0.3)), 0);
        CHECK_THROWS_AS(eval_phi(spec, ctx), PoleInLowerParameter);
    }
    // ... but allowed when an upper parameter terminates first
    {
        HypergeometricSpec spec;
        spec.upper = {QParam::qpow(-4)};
        spec.lower = {QParam::qpow(-8)};
        spec.argument = QParam(Complex(Real(0.3)), 0);
        SeriesValue v = eval_phi(spec, ctx);
        CHECK(v.terms_used == 2);
    }
    // r = s+1 with |z| >= 1 diverges
    {
        HypergeometricSpec spec;
        spec.upper = {QParam(Complex(Real(0.5)), 0)};
        spec.argument = QParam(Complex(Real(1)), 0);  // 1phi0, |z| = 1
        CHECK_THROWS_AS(eval_phi(spec, ctx), NonConvergence);
    }
    // r > s+1 non-terminating diverges
    {
        HypergeometricSpec spec;
        spec.upper = {QParam(Complex(Real(0.5)), 0), QParam(Complex(Real(0.25)), 0)};
        spec.argument = QParam(Complex(Real(0.5)), 0);  // 2phi0
        CHECK_THROWS_AS(eval_phi(spec, ctx), NonConvergence);
    }
}

TEST_CASE("gauss binomial product identity") {
    // sum_k [n k] q^{k(k-1)/2} (-z)^k = (z;q)_n as exact polynomials in z
    for (long n : {3L, 7L, 12L}) {
        XPolyExact lhs;
        for (long k = 0; k <= n; ++k) {
            LaurentPolyQ c = q_binomial_exact(n, k);
            c.shift(2 * k * (k - 1));
            if (k % 2) c = -c;
            lhs += XPolyExact::x_power(k, std::move(c));
        }
        XPolyExact rhs = XPolyExact::constant(LaurentPolyQ::one());
        for (long j = 0; j < n; ++j) {
            XPolyExact factor = XPolyExact::constant(LaurentPolyQ::one());
            factor -= XPolyExact::x_power(1, LaurentPolyQ::q_power(4 * j));
            rhs = rhs * factor;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("QContext validation") {
    CHECK_THROWS_AS(QContext(Rat(0)), DomainError);
    CHECK_THROWS_AS(QContext(Rat(1)), DomainError);
    CHECK_THROWS_AS(QContext(Rat(-1, 2)), DomainError);
    CHECK_THROWS_AS(QContext(Rat(3, 2)), DomainError);
    CHECK_THROWS_AS(QContext(Rat(1, 2), 32), DomainError);
    CHECK_THROWS_AS(QContext(Rat(1, 2), 256, Rat(0)), DomainError);
    CHECK_THROWS_AS(QContext(Rat(1, 2), 256, Rat(1, 1000), 4), DomainError);
}

TEST_CASE("decimal parsing") {
    CHECK(parse_decimal_rational("0.3") == Rat(3, 10));
    CHECK(parse_decimal_rational("1e-3") == Rat(1, 1000));
    CHECK(parse_decimal_rational("-2.5e2") == Rat(-250));
    CHECK(parse_decimal_rational("3/10") == Rat(3, 10));
    CHECK_THROWS_AS(parse_decimal_rational("abc"), DomainError);
}
