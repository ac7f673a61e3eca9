#include "qmoment/qpolynomials.hpp"

namespace qmoment {

XPolyExact fib_poly(long n, FibBase base) {
    if (n < 0) throw DomainError("fib_poly: n must be >= 0");
    XPolyExact p;
    for (long k = 0; 2 * k < n; ++k) {
        LaurentPolyQ c = q_binomial_exact(n - k - 1, k);
        c.shift(base == FibBase::q ? 4 * k * k : 4 * k * (k + 1 - n));
        p += XPolyExact::x_power(n - 2 * k - 1, std::move(c));
    }
    return p;
}

XPolyExact fib_poly_recurrence(long n, FibBase base) {
    if (n < 0) throw DomainError("fib_poly: n must be >= 0");
    XPolyExact prev;                                // phi_0 = 0
    XPolyExact cur = XPolyExact::constant(LaurentPolyQ::one());  // phi_1
    if (n == 0) return prev;
    const XPolyExact x = XPolyExact::x_power(1);
    for (long k = 1; k < n; ++k) {
        // phi_{k+1} = x phi_k + q^{+-(k-1)} phi_{k-1}
        XPolyExact next = x * cur;
        XPolyExact tail = prev;
        tail.scale(LaurentPolyQ::q_power(base == FibBase::q ? 4 * (k - 1) : -4 * (k - 1)));
        next += tail;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

XPolyExact T_poly(long n, FibBase base) {
    if (n < -1) throw DomainError("T_poly: n must be >= -1");
    XPolyExact p;
    if (n == -1) return p;
    for (long k = 0; 2 * k <= n; ++k) {
        LaurentPolyQ c = q_binomial_exact(n - k, k);
        if (k % 2) c = -c;
        c.shift(4 * k * (k - 1));
        p += XPolyExact::x_power(n - 2 * k, std::move(c));
    }
    return base == FibBase::q ? p : p.base_inverted();
}

XPolyExact T_poly_recurrence(long n, FibBase base) {
    if (n < -1) throw DomainError("T_poly: n must be >= -1");
    XPolyExact prev;                                             // T_{-1} = 0
    XPolyExact cur = XPolyExact::constant(LaurentPolyQ::one());  // T_0
    if (n == -1) return prev;
    const XPolyExact x = XPolyExact::x_power(1);
    for (long k = 0; k < n; ++k) {
        // T_{k+1} = x T_k - q^{+-(k-1)} T_{k-1}
        XPolyExact next = x * cur;
        XPolyExact tail = prev;
        tail.scale(LaurentPolyQ::q_power(base == FibBase::q ? 4 * (k - 1) : -4 * (k - 1)));
        next -= tail;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

XPolyExact P_poly(long n) {
    if (n < -1) throw DomainError("P_poly: n must be >= -1");
    XPolyExact p;
    if (n == -1) return p;
    for (long k = 0; 2 * k <= n; ++k) {
        LaurentPolyQ c = q_binomial_exact(n - k, k);
        if (k % 2) c = -c;
        c.shift(n * (n - 1) + 4 * k * (k - n + 1));  // quarters: n(n-1)/4 + k(k-n+1)
        p += XPolyExact::x_power(n - 2 * k, std::move(c));
    }
    return p;
}

XPolyExact Q_poly(long n) {
    if (n < 0) throw DomainError("Q_poly: n must be >= 0");
    if (n == 0) return XPolyExact();
    return P_poly(n - 1).subst_x_qpow(2);
}

bool symmetry_check(long n) {
    if (n < 0) throw DomainError("symmetry_check: n must be >= 0");
    XPolyExact lhs = fib_poly(n, FibBase::q);
    XPolyExact rhs = fib_poly(n, FibBase::q_inverse).subst_x_qpow(-2 * (n - 1));
    rhs.scale(LaurentPolyQ::q_power(2 * (n - 1) * (n - 1)));
    return lhs == rhs;
}

Complex frakF(const std::vector<Complex>& entries) {
    Complex f_prev(Real(1));  // F of the empty tuple
    Complex f(Real(1));       // F(x_1) = 1
    if (entries.empty()) return f_prev;
    for (size_t k = 1; k < entries.size(); ++k) {
        Complex next = f - entries[k - 1] * entries[k] * f_prev;
        f_prev = std::move(f);
        f = std::move(next);
    }
    return f;
}

bool cassini_check(long m, long n) {
    if (n < 0 || m < 0) throw DomainError("cassini_check: indices must be >= 0");
    if (n > m) throw DomainError("cassini_check: requires n <= m");
    const XPolyExact phi_m = fib_poly(m, FibBase::q_inverse);
    const XPolyExact phi_n = fib_poly(n, FibBase::q_inverse);
    const XPolyExact phi_n1 = fib_poly(n + 1, FibBase::q_inverse).subst_x_qpow(-2);
    const XPolyExact phi_m1 = fib_poly(m + 1, FibBase::q_inverse).subst_x_qpow(-2);

    XPolyExact lhs_a = phi_m * phi_n1;
    lhs_a.scale(LaurentPolyQ::q_power(2 * n));  // q^{n/2}
    XPolyExact lhs_b = phi_n * phi_m1;
    lhs_b.scale(LaurentPolyQ::q_power(2 * m));  // q^{m/2}
    XPolyExact lhs = lhs_a - lhs_b;

    XPolyExact rhs = fib_poly(m - n, FibBase::q_inverse).subst_x_qpow(2 * n);
    rhs.scale(LaurentPolyQ::q_power(4 * n - 2 * m * n, Int(n % 2 ? -1 : 1)));  // q^{n - mn/2}
    return lhs == rhs;
}

namespace {

ResidualReport report_of(const SeriesValue& lhs, const SeriesValue& rhs) {
    SeriesValue diff = lhs - rhs;
    return ResidualReport{abs_val(diff.value), diff.error()};
}

}  // namespace

ResidualReport wronskian_repr_check(long n, const Complex& x, const QContext& ctx) {
    if (n < 0) throw DomainError("wronskian_repr_check: n must be >= 0");
    SeriesValue lhs = fib_poly(n, FibBase::q_inverse).eval_sv(x, ctx);

    Complex xq = ctx.scale_q_quarter(x, 2 * n);  // q^{n/2} x
    SeriesValue a = eval_E(x, ctx) * eval_E(-xq, ctx);
    SeriesValue b = eval_E(-x, ctx) * eval_E(xq, ctx);
    SeriesValue bracket = (n % 2) ? a + b : a - b;
    Workspace ws = ctx.base_workspace();
    Real pref = ws.qpow4(-(n - 1) * (n - 1)) / 2;
    SeriesValue rhs = pref * bracket;
    return report_of(lhs, rhs);
}

std::pair<ResidualReport, ResidualReport> hyperbolic_repr_check(long n, const Real& x,
                                                                const QContext& ctx) {
    if (n < 0) throw DomainError("hyperbolic_repr_check: n must be >= 0");
    Workspace ws = ctx.base_workspace();

    // odd: phi_{2n+1}(x) = q^{-n^2} (Ch(x)Ch(q^{n+1/2}x) - q^{1/2} Sh(x)Sh(q^{n+1/2}x))
    Real xo = ctx.scale_q_quarter(x, 4 * n + 2);
    SeriesValue odd_rhs = ws.qpow4(-4 * n * n) *
                          (eval_Chq(x, ctx) * eval_Chq(xo, ctx) -
                           ws.q12 * (eval_Shq(x, ctx) * eval_Shq(xo, ctx)));
    SeriesValue odd_lhs = fib_poly(2 * n + 1, FibBase::q_inverse).eval_sv(Complex(x), ctx);

    // even: phi_{2n}(x) = q^{-n(n-1)} (Sh(x)Ch(q^n x) - Ch(x)Sh(q^n x))
    Real xe = ctx.scale_q_quarter(x, 4 * n);
    SeriesValue even_rhs = ws.qpow4(-4 * n * (n - 1)) *
                           (eval_Shq(x, ctx) * eval_Chq(xe, ctx) -
                            eval_Chq(x, ctx) * eval_Shq(xe, ctx));
    SeriesValue even_lhs = fib_poly(2 * n, FibBase::q_inverse).eval_sv(Complex(x), ctx);

    return {report_of(odd_lhs, odd_rhs), report_of(even_lhs, even_rhs)};
}

std::pair<ResidualReport, ResidualReport> terminating_3phi3_check(long n, const Real& x,
                                                                  const QContext& ctx) {
    if (n < 0) throw DomainError("terminating_3phi3_check: n must be >= 0");
    Workspace ws = ctx.base_workspace();
    Real x2 = ws.up(x) * ws.up(x);

    // phi_{2n+1}(x;1/q) = q^{-n^2} 3phi3[0, q^{-n}, q^{n+1}; q^{1/2}, -q^{1/2}, -q; q, q^{n+1}x^2]
    HypergeometricSpec odd;
    odd.upper = {QParam::zero(), QParam::qpow(-4 * n), QParam::qpow(4 * (n + 1))};
    odd.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                 QParam::qpow(4, Complex(Real(-1)))};
    odd.argument = QParam(Complex(x2), 4 * (n + 1));
    SeriesValue odd_rhs = ws.qpow4(-4 * n * n) * eval_phi(odd, ctx);
    SeriesValue odd_lhs = fib_poly(2 * n + 1, FibBase::q_inverse).eval_sv(Complex(x), ctx);

    // phi_{2n}(x;1/q) = q^{-n(n-1)} (1-q^n)/(1-q) x
    //                   3phi3[0, q^{-n+1}, q^{n+1}; q^{3/2}, -q^{3/2}, -q; q, q^{n+1}x^2]
    SeriesValue even_rhs;
    if (n == 0) {
        even_rhs = sv_exact(Complex(0));
    } else {
        HypergeometricSpec even;
        even.upper = {QParam::zero(), QParam::qpow(-4 * (n - 1)), QParam::qpow(4 * (n + 1))};
        even.lower = {QParam::qpow(6), QParam::qpow(6, Complex(Real(-1))),
                      QParam::qpow(4, Complex(Real(-1)))};
        even.argument = QParam(Complex(x2), 4 * (n + 1));
        Real pref = ws.qpow4(-4 * n * (n - 1)) * (1 - ws.qpow(n)) / (1 - ws.q) * ws.up(x);
        even_rhs = pref * eval_phi(even, ctx);
    }
    SeriesValue even_lhs = fib_poly(2 * n, FibBase::q_inverse).eval_sv(Complex(x), ctx);

    return {report_of(odd_lhs, odd_rhs), report_of(even_lhs, even_rhs)};
}

Real limit_check(LimitKind kind, const Real& x, long n, const QContext& ctx) {
    if (n < 0) throw DomainError("limit_check: n must be >= 0");
    Workspace ws = ctx.base_workspace();
    switch (kind) {
        case LimitKind::even_Sh: {
            SeriesValue lhs = fib_poly(2 * n, FibBase::q_inverse).eval_sv(Complex(x), ctx);
            return abs_val((ws.qpow4(4 * n * (n - 1)) * lhs - eval_Shq(x, ctx)).value);
        }
        case LimitKind::odd_Ch: {
            SeriesValue lhs = fib_poly(2 * n + 1, FibBase::q_inverse).eval_sv(Complex(x), ctx);
            return abs_val((ws.qpow4(4 * n * n) * lhs - eval_Chq(x, ctx)).value);
        }
        case LimitKind::P_even: {
            SeriesValue lhs = P_poly(2 * n).eval_sv(Complex(x), ctx);
            Real pref = ws.qpow4(-2 * n);
            if (n % 2) pref = -pref;
            return abs_val((pref * lhs - eval_Cq(ctx.scale_q_quarter(x, -2), ctx)).value);
        }
        case LimitKind::P_odd: {
            SeriesValue lhs = P_poly(2 * n + 1).eval_sv(Complex(x), ctx);
            Real pref = ws.qpow4(-2 * n);
            if (n % 2) pref = -pref;
            SeriesValue rhs = ws.q12 * eval_Sq(ctx.scale_q_quarter(x, -2), ctx);
            return abs_val((pref * lhs - rhs).value);
        }
    }
    throw DomainError("limit_check: unknown kind");
}

ResidualReport prop35_check(Prop35 relation, long n, const Real& x, const QContext& ctx) {
    if (n < 0) throw DomainError("prop35_check: n must be >= 0");
    Workspace ws = ctx.base_workspace();
    const Real xm = ctx.scale_q_quarter(x, -2);  // q^{-1/2} x

    // polynomial arguments q^{-1/2} x are taken by exact substitution
    auto phi_inv = [&](long idx, bool shifted) {
        XPolyExact p = fib_poly(idx, FibBase::q_inverse);
        return shifted ? p.subst_x_qpow(-2) : p;
    };
    auto at = [&](const XPolyExact& p) { return p.eval_sv(Complex(x), ctx); };

    switch (relation) {
        case Prop35::i: {
            SeriesValue lhs = at(phi_inv(2 * n + 1, true)) * eval_Shq(x, ctx) -
                              ws.qpow4(-4 * n) * (at(phi_inv(2 * n, false)) * eval_Chq(xm, ctx));
            SeriesValue rhs =
                ws.qpow4(-4 * n * n) * eval_Shq(ctx.scale_q_quarter(x, 4 * n), ctx);
            return report_of(lhs, rhs);
        }
        case Prop35::ii: {
            SeriesValue lhs =
                at(phi_inv(2 * n + 1, true)) * eval_Chq(x, ctx) -
                ws.qpow4(-4 * n + 2) * (at(phi_inv(2 * n, false)) * eval_Shq(xm, ctx));
            SeriesValue rhs =
                ws.qpow4(-4 * n * n) * eval_Chq(ctx.scale_q_quarter(x, 4 * n), ctx);
            return report_of(lhs, rhs);
        }
        case Prop35::iii: {
            SeriesValue lhs =
                at(phi_inv(2 * n + 1, false)) * eval_Shq(xm, ctx) -
                ws.qpow4(4 * n) * (at(phi_inv(2 * n + 2, true)) * eval_Chq(x, ctx));
            SeriesValue rhs =
                ws.qpow4(-4 * n * n) * eval_Shq(ctx.scale_q_quarter(x, 4 * n + 2), ctx);
            return report_of(lhs, rhs);
        }
        case Prop35::iv: {
            SeriesValue lhs =
                at(phi_inv(2 * n + 1, false)) * eval_Chq(xm, ctx) -
                ws.qpow4(4 * n + 2) * (at(phi_inv(2 * n + 2, true)) * eval_Shq(x, ctx));
            SeriesValue rhs =
                ws.qpow4(-4 * n * n) * eval_Chq(ctx.scale_q_quarter(x, 4 * n + 2), ctx);
            return report_of(lhs, rhs);
        }
        case Prop35::v: {
            SeriesValue lhs =
                at(phi_inv(n + 1, true)) * eval_E(Complex(x), ctx) -
                ws.qpow4(-(2 * n - 1)) * (at(phi_inv(n, false)) * eval_E(Complex(xm), ctx));
            Real pref = ws.qpow4(-n * n);
            if (n % 2) pref = -pref;
            SeriesValue rhs = pref * eval_E(Complex(ctx.scale_q_quarter(x, 2 * n)), ctx);
            return report_of(lhs, rhs);
        }
    }
    throw DomainError("prop35_check: unknown relation");
}

std::pair<ResidualReport, ResidualReport> generating_function_check(const Real& x, const Real& s,
                                                                    long N, const QContext& ctx) {
    if (N < 1) throw DomainError("generating_function_check: N must be >= 1");
    Workspace ws = ctx.base_workspace();

    // sum_{n<N} q^{n(n-1)/2} phi_{n+1}(x;1/q) (-s)^n  vs  2phi2[q, s/x; 0, 0; q, s x]
    ResidualReport analytic;
    {
        SeriesValue partial = sv_exact(Complex(0));
        for (long n = 0; n < N; ++n) {
            SeriesValue term = fib_poly(n + 1, FibBase::q_inverse).eval_sv(Complex(x), ctx);
            Real f = ws.qpow4(2 * n * (n - 1)) * pow(ws.up(s), static_cast<int>(n));
            if (n % 2) f = -f;
            partial = partial + f * term;
        }
        if (x == 0) throw DomainError("generating_function_check: x = 0 has no 2phi2 form");
        HypergeometricSpec gf;
        gf.upper = {QParam::qpow(4), QParam(Complex(s / x), 0)};
        gf.lower = {QParam::zero(), QParam::zero()};
        gf.argument = QParam(Complex(s * x), 0);
        analytic = report_of(partial, eval_phi(gf, ctx));
    }

    // sum P_n(x;q) t^n vs sum_k q^{k(k-1)/4} x^k t^k / (-q^{1/2} t^2; q)_{k+1}, t = s
    ResidualReport chen_ismail;
    {
        Real t = ws.up(s);
        if (abs(t) >= ws.qpow4(-1))
            throw DomainError("generating_function_check: requires |t| < q^{-1/4}");
        // left: adaptive partial sum of P_n(x) t^n
        SeriesValue left = sv_exact(Complex(0));
        Real tn = ws.up(Real(1));
        Real pm = ws.up(Real(0)), pc = ws.up(Real(1));  // P_{-1}, P_0
        Real qn2 = ws.up(Real(1));                      // q^{n/2}
        long small = 0;
        for (long n = 0; n < 4 * N + 400; ++n) {
            Real term = pc * tn;
            left = left + sv_value(Complex(term));
            if (abs(term) <= ws.rel_tol * abs_val(left.value) + pow2(-ctx.precision_bits()))
                ++small;
            else
                small = 0;
            if (small >= 5) break;
            Real pn = qn2 * ws.up(x) * pc - ws.q12 * pm;
            pm = pc;
            pc = pn;
            qn2 *= ws.q12;
            tn *= t;
        }
        // right: sum_k q^{k(k-1)/4} (xt)^k / (-q^{1/2} t^2; q)_{k+1}
        SeriesValue right = sv_exact(Complex(0));
        Real xt = ws.up(x) * t;
        Real xtk = ws.up(Real(1));
        Real poch = 1 + ws.q12 * t * t;  // (-q^{1/2} t^2; q)_1
        Real qk = ws.q;                  // q^{k+1}, next Pochhammer factor
        Real qk14 = ws.up(Real(1));      // q^{k(k-1)/4}
        Real qstep = ws.up(Real(1));     // q^{k/2}, the increment ratio of qk14
        small = 0;
        for (long k = 0; k < 4 * N + 400; ++k) {
            Real term = qk14 * xtk / poch;
            right = right + sv_value(Complex(term));
            if (abs(term) <= ws.rel_tol * abs_val(right.value) + pow2(-ctx.precision_bits()))
                ++small;
            else
                small = 0;
            if (small >= 5) break;
            xtk *= xt;
            poch *= 1 + ws.q12 * t * t * qk;
            qk *= ws.q;
            qk14 *= qstep;   // q^{k(k-1)/4} *= q^{(2k)/4}... see below
            qstep *= ws.q12;
        }
        chen_ismail = report_of(left, right);
    }
    return {analytic, chen_ismail};
}

std::vector<Real> p_values(const Real& x, long n_max, const Workspace& ws) {
    std::vector<Real> vals;
    vals.reserve(n_max + 1);
    Real pm = ws.up(Real(0)), pc = ws.up(Real(1));
    Real qn2 = ws.up(Real(1));  // q^{n/2}
    Real xx = ws.up(x);
    for (long n = 0; n <= n_max; ++n) {
        vals.push_back(pc);
        Real pn = qn2 * xx * pc - ws.q12 * pm;
        pm = pc;
        pc = pn;
        qn2 *= ws.q12;
    }
    return vals;
}

std::vector<Real> t_values(const Real& x, long n_max, const Workspace& ws) {
    std::vector<Real> vals;
    vals.reserve(n_max + 1);
    Real tm = ws.up(Real(0)), tc = ws.up(Real(1));
    Real qn1 = ws.qpow4(-4);  // q^{n-1}
    Real xx = ws.up(x);
    for (long n = 0; n <= n_max; ++n) {
        vals.push_back(tc);
        Real tn = xx * tc - qn1 * tm;
        tm = tc;
        tc = tn;
        qn1 *= ws.q;
    }
    return vals;
}

}  // namespace qmoment
