#include "qmoment/qfunctions.hpp"

namespace qmoment {

namespace {

// sum q^{n^2/4} z^n / (q;q)_n ; ratio = q^{(2n+1)/4} z / (1 - q^{n+1})
template <class T>
SeriesValue eval_E_impl(const T& z, const QContext& ctx, StopRule rule) {
    auto attempt = [&](const Workspace& ws) {
        T zz = ws.up(z);
        T one(ws.up(Real(1)));
        Real qq = ws.q14;  // q^{(2n+1)/4}
        Real qn1 = ws.q;   // q^{n+1}
        auto ratio = [&](long) -> T {
            T r = zz * (qq / (1 - qn1));
            qq *= ws.q12;
            qn1 *= ws.q;
            return r;
        };
        return sum_ratio_series<T>(one, ratio, ws);
    };
    return run_series<T>(ctx, attempt, "E_q", rule);
}

// trig/hyperbolic kernels share one shape: first = z^{odd? 1 : 0}/(...),
// ratio carries sign * q^{...} z^2 / ((1-q^{2n+a})(1-q^{2n+a+1})).
template <class T>
SeriesValue eval_sc_impl(const T& z, const QContext& ctx, bool odd, bool alternating,
                         StopRule rule) {
    auto attempt = [&](const Workspace& ws) {
        T zz = ws.up(z);
        T z2 = zz * zz;
        T first = odd ? T(zz * (ws.up(Real(1)) / (1 - ws.q))) : T(ws.up(Real(1)));
        // odd (S/Sh):  ratio_n = sgn q^{2n+2} z^2 / ((1-q^{2n+2})(1-q^{2n+3}))
        // even (C/Ch): ratio_n = sgn q^{2n+1} z^2 / ((1-q^{2n+1})(1-q^{2n+2}))
        Real qa = odd ? Real(ws.q * ws.q) : ws.q;  // q^{2n+2} or q^{2n+1}
        Real qb = odd ? Real(ws.q * qa) : Real(ws.q * ws.q);
        auto ratio = [&](long) -> T {
            Real f = qa / ((1 - qa) * (1 - qb));
            T r = z2 * (alternating ? Real(-f) : f);
            Real q2 = ws.q * ws.q;
            qa *= q2;
            qb *= q2;
            return r;
        };
        return sum_ratio_series<T>(first, ratio, ws);
    };
    return run_series<T>(ctx, attempt, alternating ? (odd ? "S_q" : "C_q") : (odd ? "Sh_q" : "Ch_q"),
                         rule);
}

// A(z): first = 1, ratio = -q^{2n+1} z / (1 - q^{n+1})
template <class T>
SeriesValue eval_Aq_impl(const T& z, const QContext& ctx, StopRule rule) {
    auto attempt = [&](const Workspace& ws) {
        T zz = ws.up(z);
        Real qa = ws.q;   // q^{2n+1}
        Real qn1 = ws.q;  // q^{n+1}
        auto ratio = [&](long) -> T {
            T r = zz * Real(-qa / (1 - qn1));
            qa *= ws.q * ws.q;
            qn1 *= ws.q;
            return r;
        };
        return sum_ratio_series<T>(T(ws.up(Real(1))), ratio, ws);
    };
    return run_series<T>(ctx, attempt, "A_q", rule);
}

SeriesValue eval_Sq_rule(const Real& z, const QContext& ctx, StopRule rule) {
    return eval_sc_impl<Real>(z, ctx, true, true, rule);
}
SeriesValue eval_Cq_rule(const Real& z, const QContext& ctx, StopRule rule) {
    return eval_sc_impl<Real>(z, ctx, false, true, rule);
}

}  // namespace

SeriesValue eval_E(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_E_impl<Real>(z.re, ctx, StopRule::value_accurate);
    return eval_E_impl<Complex>(z, ctx, StopRule::value_accurate);
}

SeriesValue eval_Eq_alpha(const Real& alpha, const Complex& z, const QContext& ctx) {
    if (alpha < 0) throw DomainError("E_q^(alpha): alpha must be >= 0");
    if (alpha == 0) {
        Workspace ws0 = ctx.base_workspace();
        if (abs_val(ws0.up(z)) >= 1) throw NonConvergence("e_q defined for |z| < 1 only", 0);
    }
    auto attempt = [&](const Workspace& ws) {
        Complex zz = ws.up(z);
        Real qalpha = pow(ws.q, ws.up(alpha));
        Real qq = sqrt(qalpha);  // q^{alpha(2n+1)/2}
        Real qn1 = ws.q;
        auto ratio = [&](long) -> Complex {
            Complex r = zz * (qq / (1 - qn1));
            qq *= qalpha;
            qn1 *= ws.q;
            return r;
        };
        return sum_ratio_series<Complex>(Complex(ws.up(Real(1))), ratio, ws);
    };
    return run_series<Complex>(ctx, attempt, "E_q^(alpha)");
}

SeriesValue eval_Sq(const Real& z, const QContext& ctx) {
    return eval_sc_impl<Real>(z, ctx, true, true, StopRule::value_accurate);
}
SeriesValue eval_Sq(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_Sq(z.re, ctx);
    return eval_sc_impl<Complex>(z, ctx, true, true, StopRule::value_accurate);
}
SeriesValue eval_Cq(const Real& z, const QContext& ctx) {
    return eval_sc_impl<Real>(z, ctx, false, true, StopRule::value_accurate);
}
SeriesValue eval_Cq(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_Cq(z.re, ctx);
    return eval_sc_impl<Complex>(z, ctx, false, true, StopRule::value_accurate);
}
SeriesValue eval_Shq(const Real& z, const QContext& ctx) {
    return eval_sc_impl<Real>(z, ctx, true, false, StopRule::value_accurate);
}
SeriesValue eval_Shq(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_Shq(z.re, ctx);
    return eval_sc_impl<Complex>(z, ctx, true, false, StopRule::value_accurate);
}
SeriesValue eval_Chq(const Real& z, const QContext& ctx) {
    return eval_sc_impl<Real>(z, ctx, false, false, StopRule::value_accurate);
}
SeriesValue eval_Chq(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_Chq(z.re, ctx);
    return eval_sc_impl<Complex>(z, ctx, false, false, StopRule::value_accurate);
}
SeriesValue eval_Aq(const Complex& z, const QContext& ctx) {
    if (z.is_real()) return eval_Aq_impl<Real>(z.re, ctx, StopRule::value_accurate);
    return eval_Aq_impl<Complex>(z, ctx, StopRule::value_accurate);
}

SeriesValue eval_Sq_prime(const Real& z, const QContext& ctx) {
    // sum (-1)^n (2n+1) q^{n(n+1)} z^{2n} / (q;q)_{2n+1}
    auto attempt = [&](const Workspace& ws) {
        Real zz = ws.up(z);
        Real z2 = zz * zz;
        Real first = ws.up(Real(1)) / (1 - ws.q);
        Real qa = ws.q * ws.q;  // q^{2n+2}
        Real qb = ws.q * qa;    // q^{2n+3}
        auto ratio = [&, n = 0L](long) mutable -> Real {
            Real r = -z2 * qa * Real(2 * n + 3) / (Real(2 * n + 1) * (1 - qa) * (1 - qb));
            Real q2 = ws.q * ws.q;
            qa *= q2;
            qb *= q2;
            ++n;
            return r;
        };
        return sum_ratio_series<Real>(first, ratio, ws);
    };
    return run_series<Real>(ctx, attempt, "S_q'");
}

SeriesValue eval_Cq_prime(const Real& z, const QContext& ctx) {
    // sum_{n>=1} (-1)^n 2n q^{n^2} z^{2n-1} / (q;q)_{2n}
    auto attempt = [&](const Workspace& ws) {
        Real zz = ws.up(z);
        Real z2 = zz * zz;
        Real first = -2 * zz * ws.q / ((1 - ws.q) * (1 - ws.q * ws.q));
        Real qa = ws.q * ws.q * ws.q;  // q^{2n+1}, n = 1
        Real qb = ws.q * qa;
        auto ratio = [&, n = 1L](long) mutable -> Real {
            Real r = -z2 * qa * Real(2 * n + 2) / (Real(2 * n) * (1 - qa) * (1 - qb));
            Real q2 = ws.q * ws.q;
            qa *= q2;
            qb *= q2;
            ++n;
            return r;
        };
        return sum_ratio_series<Real>(first, ratio, ws);
    };
    return run_series<Real>(ctx, attempt, "C_q'");
}

SeriesValue eval_Aq_prime(const Complex& z, const QContext& ctx) {
    // sum_{n>=1} (-1)^n n q^{n^2} z^{n-1} / (q;q)_n
    auto attempt = [&](const Workspace& ws) {
        Complex zz = ws.up(z);
        Complex first(-ws.q / (1 - ws.q));
        Real qa = ws.q * ws.q * ws.q;  // q^{2n+1}, n = 1
        Real qn1 = ws.q * ws.q;        // q^{n+1}, n = 1
        auto ratio = [&, n = 1L](long) mutable -> Complex {
            Complex r = zz * Real(-qa * Real(n + 1) / (Real(n) * (1 - qn1)));
            qa *= ws.q * ws.q;
            qn1 *= ws.q;
            ++n;
            return r;
        };
        return sum_ratio_series<Complex>(first, ratio, ws);
    };
    return run_series<Complex>(ctx, attempt, "A_q'");
}

SeriesValue eval_E_qinv(const Complex& w, const QContext& ctx) {
    return eval_E(-ctx.scale_q_quarter(w, 2), ctx);
}
SeriesValue eval_Sq_qinv(const Complex& w, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    return Complex(-ws.q12) * eval_Sq(ctx.scale_q_quarter(w, 2), ctx);
}
SeriesValue eval_Cq_qinv(const Complex& w, const QContext& ctx) {
    return eval_Cq(ctx.scale_q_quarter(w, 2), ctx);
}

namespace {

// shared 3phi3 shell: [0, (v/u) q^{k/4}, (u/v) q^{k/4}; q^{k/4}-family; q, arg]
SeriesValue addition_3phi3(const Complex& u_in, const Complex& v_in, long shift_quarters,
                           const Complex& arg_coeff, long arg_quarters, const QContext& ctx) {
    HypergeometricSpec spec;
    // parameter ratios are formed well above the target precision so the
    // inputs act as exact values
    Workspace hi = ctx.workspace(ctx.precision_bits() + 192);
    Complex u = hi.up(u_in), v = hi.up(v_in);
    Complex vu = v / u;
    Complex uv = u / v;
    spec.upper = {QParam::zero(), QParam(vu, shift_quarters), QParam(uv, shift_quarters)};
    if (shift_quarters == 2) {
        spec.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                      QParam::qpow(4, Complex(Real(-1)))};
    } else {
        spec.lower = {QParam::qpow(6), QParam::qpow(6, Complex(Real(-1))),
                      QParam::qpow(4, Complex(Real(-1)))};
    }
    spec.argument = QParam(arg_coeff, arg_quarters);
    return eval_phi(spec, ctx);
}

}  // namespace

SeriesValue product_formula_rhs(const Complex& u_in, const Complex& v_in, const QContext& ctx) {
    if (u_in.is_zero() || v_in.is_zero())
        throw DomainError("product_formula_rhs: u and v must be nonzero");
    Workspace hi = ctx.workspace(ctx.precision_bits() + 192);
    Complex u = hi.up(u_in), v = hi.up(v_in);
    SeriesValue first = addition_3phi3(u, v, 2, u * v, 2, ctx);
    SeriesValue second = addition_3phi3(u, v, 4, u * v, 4, ctx);
    Complex pref = Complex(hi.q14) * (u - v) / Complex(1 - hi.q);
    return first + sv_value(pref) * second;
}

SeriesValue trig_sum_formula(const Complex& u_in, const Complex& v_in, const QContext& ctx) {
    if (u_in.is_zero() || v_in.is_zero())
        throw DomainError("trig_sum_formula: u and v must be nonzero");
    Workspace hi = ctx.workspace(ctx.precision_bits() + 192);
    Complex u = hi.up(u_in), v = hi.up(v_in);
    return addition_3phi3(u, v, 2, -(u * v), 2, ctx);
}

SeriesValue trig_diff_formula(const Complex& u_in, const Complex& v_in, const QContext& ctx) {
    if (u_in.is_zero() || v_in.is_zero())
        throw DomainError("trig_diff_formula: u and v must be nonzero");
    Workspace hi = ctx.workspace(ctx.precision_bits() + 192);
    Complex u = hi.up(u_in), v = hi.up(v_in);
    SeriesValue phi = addition_3phi3(u, v, 4, -(u * v), 4, ctx);
    Complex pref = (u - v) / Complex(1 - hi.q);
    return sv_value(pref) * phi;
}

SeriesValue abs_E_sq(const Real& x, const QContext& ctx) {
    Real xx = upsized(x, ctx.precision_bits() + 192);
    HypergeometricSpec spec;
    spec.upper = {QParam::zero(), QParam::qpow(2)};
    spec.lower = {QParam::qpow(2, Complex(Real(-1))), QParam::qpow(4, Complex(Real(-1)))};
    spec.argument = QParam(Complex(-(xx * xx)), 2);
    return eval_phi(spec, ctx);
}

namespace {

SeriesValue fu_or_bt(const Real& z, const Real* u, const Real* t, bool t_infinite,
                     const QContext& ctx, StopRule rule) {
    Workspace ws = ctx.base_workspace();
    Real zq = ctx.scale_q_quarter(z, -2);  // q^{-1/2} z
    SeriesValue Cz = eval_Cq_rule(zq, ctx, rule);
    if (t_infinite) return Real(-1) * Cz;  // B(z) alone
    SeriesValue Sz = eval_Sq_rule(zq, ctx, rule);
    if (u) {
        SeriesValue Cu = eval_Cq(*u, ctx);
        SeriesValue Su = eval_Sq(*u, ctx);
        return Cz * Cu + ws.q12 * (Sz * Su);
    }
    // B(z) t - D(z) = -C(q^{-1/2}z) t - q^{1/2} S(q^{-1/2}z)
    return sv_value(Complex(-ws.up(*t))) * Cz - ws.q12 * Sz;
}

}  // namespace

SeriesValue fn_fu(const Real& z, const Real& u, const QContext& ctx) {
    return fu_or_bt(z, &u, nullptr, false, ctx, StopRule::value_accurate);
}

SeriesValue fn_bt_minus_d(const Real& z, const Real& t, bool t_infinite, const QContext& ctx) {
    return fu_or_bt(z, nullptr, &t, t_infinite, ctx, StopRule::value_accurate);
}

EntireFunctionId EntireFunctionId::simple(Tag t) {
    EntireFunctionId f;
    f.tag = t;
    return f;
}
EntireFunctionId EntireFunctionId::eq_alpha(Real a) {
    EntireFunctionId f;
    f.tag = Tag::EqAlpha;
    f.alpha = std::move(a);
    return f;
}
EntireFunctionId EntireFunctionId::fu(Real u) {
    EntireFunctionId f;
    f.tag = Tag::Fu;
    f.u = std::move(u);
    return f;
}
EntireFunctionId EntireFunctionId::bt_minus_d(Real t) {
    EntireFunctionId f;
    f.tag = Tag::BtMinusD;
    f.t = std::move(t);
    return f;
}
EntireFunctionId EntireFunctionId::bt_infinity() {
    EntireFunctionId f;
    f.tag = Tag::BtMinusD;
    f.t_infinite = true;
    return f;
}

EntireFunctionId::Symmetry EntireFunctionId::symmetry() const {
    switch (tag) {
        case Tag::Sq:
        case Tag::Shq:
            return Symmetry::odd;
        case Tag::Cq:
        case Tag::Chq:
            return Symmetry::even;
        case Tag::Fu:
        case Tag::BtMinusD:
            return Symmetry::none;
        default:
            return Symmetry::none;
    }
}

std::string EntireFunctionId::name() const {
    switch (tag) {
        case Tag::Eq:
            return "Eq";
        case Tag::EqAlpha:
            return "EqAlpha";
        case Tag::Sq:
            return "Sq";
        case Tag::Cq:
            return "Cq";
        case Tag::Shq:
            return "Shq";
        case Tag::Chq:
            return "Chq";
        case Tag::Aq:
            return "Aq";
        case Tag::Fu:
            return "f_u";
        case Tag::BtMinusD:
            return t_infinite ? "B" : "Bt-D";
    }
    return "?";
}

SeriesValue eval_entire(const EntireFunctionId& f, const Real& x, const QContext& ctx,
                        StopRule rule) {
    switch (f.tag) {
        case EntireFunctionId::Tag::Eq:
            return eval_E_impl<Real>(x, ctx, rule);
        case EntireFunctionId::Tag::EqAlpha:
            return eval_Eq_alpha(f.alpha, Complex(x), ctx);
        case EntireFunctionId::Tag::Sq:
            return eval_Sq_rule(x, ctx, rule);
        case EntireFunctionId::Tag::Cq:
            return eval_Cq_rule(x, ctx, rule);
        case EntireFunctionId::Tag::Shq:
            return eval_sc_impl<Real>(x, ctx, true, false, rule);
        case EntireFunctionId::Tag::Chq:
            return eval_sc_impl<Real>(x, ctx, false, false, rule);
        case EntireFunctionId::Tag::Aq:
            return eval_Aq_impl<Real>(x, ctx, rule);
        case EntireFunctionId::Tag::Fu:
            return fu_or_bt(x, &f.u, nullptr, false, ctx, rule);
        case EntireFunctionId::Tag::BtMinusD:
            return fu_or_bt(x, nullptr, &f.t, f.t_infinite, ctx, rule);
    }
    throw DomainError("eval_entire: unknown function tag");
}

}  // namespace qmoment
