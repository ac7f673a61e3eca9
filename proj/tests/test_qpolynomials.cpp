#include "doctest.h"
#include "qmoment/qpolynomials.hpp"

using namespace qmoment;

namespace {
const QContext& ctx_half() {
    static QContext ctx(Rat(1, 2));
    return ctx;
}
Real tol20() { return make_real(Rat(1, pow(Int(10), 20u)), 128); }

XPolyExact xpow(long k) { return XPolyExact::x_power(k); }
XPolyExact qc(long quarters) { return XPolyExact::constant(LaurentPolyQ::q_power(quarters)); }
}  // namespace

TEST_CASE("fibonacci polynomials: initial data and small cases") {
    CHECK(fib_poly(0, FibBase::q).is_zero());
    CHECK(fib_poly(1, FibBase::q) == XPolyExact::constant(LaurentPolyQ::one()));
    CHECK(fib_poly(0, FibBase::q_inverse).is_zero());
    CHECK(fib_poly(1, FibBase::q_inverse) == XPolyExact::constant(LaurentPolyQ::one()));

    // phi_3 = x^2 + q and its base-inverted sibling x^2 + q^{-1}
    CHECK(fib_poly(3, FibBase::q) == xpow(2) + qc(4));
    CHECK(fib_poly(3, FibBase::q_inverse) == xpow(2) + qc(-4));

    // deg phi_n = n - 1
    for (long n = 1; n <= 20; ++n) CHECK(fib_poly(n, FibBase::q).degree() == n - 1);
}

TEST_CASE("explicit sums equal the recurrences up to n = 25") {
    for (long n = 0; n <= 25; ++n) {
        CHECK(fib_poly(n, FibBase::q) == fib_poly_recurrence(n, FibBase::q));
        CHECK(fib_poly(n, FibBase::q_inverse) == fib_poly_recurrence(n, FibBase::q_inverse));
        CHECK(T_poly(n, FibBase::q) == T_poly_recurrence(n, FibBase::q));
        CHECK(T_poly(n, FibBase::q_inverse) == T_poly_recurrence(n, FibBase::q_inverse));
    }
}

TEST_CASE("T polynomials small cases") {
    CHECK(T_poly(-1, FibBase::q).is_zero());
    CHECK(T_poly(0, FibBase::q) == XPolyExact::constant(LaurentPolyQ::one()));
    CHECK(T_poly(1, FibBase::q) == xpow(1));
    CHECK(T_poly(2, FibBase::q) == xpow(2) - XPolyExact::constant(LaurentPolyQ::one()));
    // T_3 = x^3 - (1+q) x
    XPolyExact t3 = xpow(3) - XPolyExact::x_power(1, LaurentPolyQ::one() + LaurentPolyQ::q_power(4));
    CHECK(T_poly(3, FibBase::q) == t3);
}

TEST_CASE("P and Q polynomials") {
    // P_2 = q^{1/2}(x^2 - 1)
    XPolyExact p2 = xpow(2) - XPolyExact::constant(LaurentPolyQ::one());
    p2.scale(LaurentPolyQ::q_power(2));
    CHECK(P_poly(2) == p2);

    CHECK(P_poly(-1).is_zero());
    CHECK(P_poly(0) == XPolyExact::constant(LaurentPolyQ::one()));
    CHECK(P_poly(1) == xpow(1));
    CHECK(Q_poly(0).is_zero());
    CHECK(Q_poly(1) == XPolyExact::constant(LaurentPolyQ::one()));  // Q_1 = P_0 = 1

    // values at the origin: P_{2n}(0) = (-1)^n q^{n/2}, P_{2n-1}(0) = 0,
    // Q_{2n+1}(0) = (-1)^n q^{n/2}, Q_{2n}(0) = 0, for n <= 8
    for (long n = 0; n <= 8; ++n) {
        LaurentPolyQ expect = LaurentPolyQ::q_power(2 * n, Int(n % 2 ? -1 : 1));
        CHECK(P_poly(2 * n).coeff(0) == expect);
        CHECK(Q_poly(2 * n + 1).coeff(0) == expect);
        if (n >= 1) {
            CHECK(P_poly(2 * n - 1).coeff(0).is_zero());
            CHECK(Q_poly(2 * n).coeff(0).is_zero());
        }
    }

    // three-term recurrence P_{n+1} = q^{n/2} x P_n - q^{1/2} P_{n-1}, exactly
    for (long n = 0; n <= 12; ++n) {
        XPolyExact rhs = xpow(1) * P_poly(n);
        rhs.scale(LaurentPolyQ::q_power(2 * n));
        XPolyExact tail = P_poly(n - 1);
        tail.scale(LaurentPolyQ::q_power(2));
        rhs -= tail;
        CHECK(P_poly(n + 1) == rhs);
    }

    // parity P_n(-x) = (-1)^n P_n(x) and degree
    for (long n = 0; n <= 15; ++n) {
        CHECK(P_poly(n).degree() == n);
        CHECK(P_poly(n).even_odd_parity_matches(n));
    }

    // monic relation q^{-n(n-1)/4} P_n(x;q) = T_n(x;q^{-1}) for n <= 15
    for (long n = 0; n <= 15; ++n) {
        XPolyExact monic = P_poly(n);
        monic.scale(LaurentPolyQ::q_power(-n * (n - 1)));
        CHECK(monic == T_poly(n, FibBase::q_inverse));
    }

    // Q_n(x) = P_{n-1}(q^{1/2} x)
    for (long n = 1; n <= 10; ++n) CHECK(Q_poly(n) == P_poly(n - 1).subst_x_qpow(2));
}

TEST_CASE("base symmetry of the fibonacci family") {
    CHECK(symmetry_check(0));
    CHECK(symmetry_check(1));
    // n = 3 by hand: q^2 ((q^{-1}x)^2 + q^{-1}) = x^2 + q
    XPolyExact rhs = fib_poly(3, FibBase::q_inverse).subst_x_qpow(-4);
    rhs.scale(LaurentPolyQ::q_power(8));
    CHECK(rhs == fib_poly(3, FibBase::q));
    for (long n = 0; n <= 12; ++n) CHECK(symmetry_check(n));
}

TEST_CASE("substitution engine round trip") {
    for (long n : {2L, 5L, 9L}) {
        XPolyExact p = fib_poly(n, FibBase::q_inverse);
        CHECK(p.subst_x_qpow(2).subst_x_qpow(-2) == p);
        CHECK(p.subst_x_qpow(-3).subst_x_qpow(3) == p);
    }
}

TEST_CASE("frakF basics and the fibonacci connection") {
    const QContext& ctx = ctx_half();
    CHECK(frakF({}).re == 1);
    CHECK(frakF({Complex(Real(5))}).re == 1);
    Complex a(Real(0.4)), b(Real(1.7));
    Complex f2 = frakF({a, b});
    CHECK(abs_val(f2 - (Complex(Real(1)) - a * b)) == 0);

    // phi_{n+1}(x;q^{-1}) = x^n frakF({i x^{-1} q^{-(2k-1)/4}}_{k=1..n})
    Workspace ws = ctx.workspace(320);
    Real x = ws.up(Real(1.3));
    for (long n = 0; n <= 10; ++n) {
        std::vector<Complex> entries;
        for (long k = 1; k <= n; ++k)
            entries.emplace_back(Real(0), ws.qpow4(-(2 * k - 1)) / x);
        Complex rhs = frakF(entries);
        Real xn = pow(x, static_cast<int>(n));
        Complex lhs = fib_poly(n + 1, FibBase::q_inverse).eval(Complex(x), ws);
        CHECK(abs_val(lhs - Complex(xn) * rhs) <= tol20());
    }
}

TEST_CASE("euler-cassini is exact") {
    // n = m: both sides vanish identically
    CHECK(cassini_check(4, 4));
    // m=2, n=0 reduces to phi_2 = x on both sides
    CHECK(cassini_check(2, 0));
    CHECK_THROWS_AS(cassini_check(2, 3), DomainError);
    for (long m = 0; m <= 10; ++m)
        for (long n = 0; n <= m; ++n) CHECK(cassini_check(m, n));
}

TEST_CASE("wronskian-type representation") {
    const QContext& ctx = ctx_half();
    // n = 0: both sides vanish
    ResidualReport r0 = wronskian_repr_check(0, Complex(Real(0.9)), ctx);
    CHECK(r0.residual <= r0.bound);
    CHECK(r0.residual <= tol20());

    // n = 1 turns on the two-product identity E(x)E(-q^{1/2}x) + E(-x)E(q^{1/2}x) = 2
    Workspace ws = ctx.base_workspace();
    Real x(0.8);
    Real xq = ctx.scale_q_quarter(x, 2);
    SeriesValue bracket = eval_E(Complex(x), ctx) * eval_E(Complex(-xq), ctx) +
                          eval_E(Complex(-x), ctx) * eval_E(Complex(xq), ctx);
    CHECK(abs(bracket.value.re - 2) <= tol20());

    ResidualReport r5 = wronskian_repr_check(5, Complex(Real(0.8)), ctx);
    CHECK(r5.residual <= r5.bound);
    CHECK(r5.residual <= tol20());

    // a complex sample
    ResidualReport rc = wronskian_repr_check(4, Complex(Real(0.3), Real(0.6)), ctx);
    CHECK(rc.residual <= rc.bound);
}

TEST_CASE("hyperbolic representations") {
    QContext ctx4(Rat(2, 5));  // q = 0.4
    auto [odd0, even0] = hyperbolic_repr_check(0, Real(1.2), ctx4);
    CHECK(odd0.residual <= tol20());   // phi_1 = 1 via the hyperbolic Pythagorean instance
    CHECK(even0.residual <= tol20());  // phi_0 = 0 = Sh Ch - Ch Sh

    auto [odd3, even3] = hyperbolic_repr_check(3, Real(1.1), ctx4);
    CHECK(odd3.residual <= tol20());
    CHECK(even3.residual <= tol20());
    CHECK(odd3.residual <= odd3.bound);
    CHECK(even3.residual <= even3.bound);
}

TEST_CASE("terminating 3phi3 forms") {
    const QContext& ctx = ctx_half();
    auto [odd0, even0] = terminating_3phi3_check(0, Real(0.9), ctx);
    CHECK(odd0.residual <= tol20());
    CHECK(even0.residual == 0);  // phi_0 = 0 with vanishing (1-q^0) prefactor

    auto [odd1, even1] = terminating_3phi3_check(1, Real(0.9), ctx);
    CHECK(odd1.residual <= tol20());
    CHECK(even1.residual <= tol20());  // phi_2 = x from the single-term series

    auto [odd2, even2] = terminating_3phi3_check(2, Real(1.5), ctx);
    CHECK(odd2.residual <= tol20());
    CHECK(even2.residual <= tol20());

    // exact-rational oracle at x = 3/2, q = 1/2 for phi_5 = phi_{2n+1}, n = 2:
    // q^{n^2} phi_5(x;1/q) equals the terminating 3phi3 summed in exact
    // rational arithmetic (the paired lower parameters make each term
    // rational)
    {
        Rat q(1, 2), x(3, 2);
        Rat lhs = fib_poly(5, FibBase::q_inverse).eval_rational(x, q);
        for (int i = 0; i < 4; ++i) lhs *= q;  // q^{n^2} = q^4
        // 3phi3[0, q^{-2}, q^3; q^{1/2}, -q^{1/2}, -q; q, q^3 x^2]: terms
        // (q^{-2};q)_k (q^3;q)_k (-1)^k q^{k(k-1)/2} (q^3 x^2)^k
        //   / ((q;q)_k (q;q^2)_k (-q;q)_k)
        auto poch = [](const Rat& a, const Rat& ratio, long n) {
            Rat p(1), f(a);
            for (long k = 0; k < n; ++k) {
                p *= (1 - f);
                f *= ratio;
            }
            return p;
        };
        Rat z = q * q * q * x * x;
        Rat rhs(0);
        for (long k = 0; k <= 2; ++k) {
            Rat qk2(1);
            for (long j = 0; j < k * (k - 1) / 2; ++j) qk2 *= q;
            Rat zk(1);
            for (long j = 0; j < k; ++j) zk *= z;
            Rat term = poch(Rat(4), q, k) * poch(q * q * q, q, k) * qk2 * zk /
                       (poch(q, q, k) * poch(q, q * q, k) * poch(-q, q, k));
            if (k % 2) term = -term;
            rhs += term;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("limit relations") {
    const QContext& ctx = ctx_half();
    // x = 0: odd polynomials and Sh vanish; the odd_Ch scaling is exact
    CHECK(limit_check(LimitKind::even_Sh, Real(0), 7, ctx) == 0);
    CHECK(limit_check(LimitKind::odd_Ch, Real(0), 7, ctx) <= tol20());

    // residuals decay like q^n: check monotone decay and the true convergence
    for (LimitKind kind :
         {LimitKind::even_Sh, LimitKind::odd_Ch, LimitKind::P_even, LimitKind::P_odd}) {
        Real prev(-1);
        for (long n : {10L, 20L, 30L}) {
            Real r = limit_check(kind, Real(1), n, ctx);
            if (prev >= 0) CHECK(r < prev);
            prev = r;
        }
        // by n = 40 the limits are well inside 1e-10 at q = 0.5
        CHECK(limit_check(kind, Real(1), 40, ctx) < make_real(Rat(1, pow(Int(10), 10u)), 64));
    }
}

TEST_CASE("prop 3.5 relations") {
    const QContext& ctx = ctx_half();
    // relation v at n = 0 degenerates to E(x) = E(x)
    ResidualReport rv = prop35_check(Prop35::v, 0, Real(0.9), ctx);
    CHECK(rv.residual <= tol20());

    for (auto rel : {Prop35::i, Prop35::ii, Prop35::iii, Prop35::iv, Prop35::v}) {
        ResidualReport r = prop35_check(rel, 2, Real(0.7), ctx);
        CHECK(r.residual <= tol20());
        CHECK(r.residual <= r.bound);
    }

    // consistency of the proof: q^{1/4} (i) + (ii) equals (v) at even index,
    // so the residuals cannot disagree by more than their bounds
    Workspace ws = ctx.base_workspace();
    ResidualReport ri = prop35_check(Prop35::i, 3, Real(0.6), ctx);
    ResidualReport rii = prop35_check(Prop35::ii, 3, Real(0.6), ctx);
    ResidualReport rv6 = prop35_check(Prop35::v, 6, Real(0.6), ctx);
    CHECK(rv6.residual <= ws.q14 * ri.residual + rii.residual + ws.q14 * ri.bound + rii.bound +
                              rv6.bound);
}

TEST_CASE("generating functions") {
    const QContext& ctx = ctx_half();
    // s = 0: both sides collapse to 1
    auto [a0, c0] = generating_function_check(Real(1.2), Real(0), 5, ctx);
    CHECK(a0.residual <= tol20());
    CHECK(c0.residual <= tol20());

    auto [a1, c1] = generating_function_check(Real(1.2), Real(0.6), 60, ctx);
    CHECK(a1.residual <= make_real(Rat(1, pow(Int(10), 18u)), 64));
    CHECK(c1.residual <= make_real(Rat(1, pow(Int(10), 18u)), 64));

    CHECK_THROWS_AS(generating_function_check(Real(0), Real(0.5), 10, ctx), DomainError);
    // Chen-Ismail region |t| < q^{-1/4}
    CHECK_THROWS_AS(generating_function_check(Real(1), Real(1.4), 10, ctx), DomainError);
}
