#include "qmoment/nevanlinna.hpp"

#include <algorithm>

#include "qmoment/quadrature.hpp"

namespace qmoment {

NevanlinnaQuad eval_ABCD(const Complex& z, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    Complex zq = ctx.scale_q_quarter(z, -2);
    NevanlinnaQuad f;
    f.A = eval_Sq(z, ctx);
    f.C = eval_Cq(z, ctx);
    f.B = Real(-1) * eval_Cq(zq, ctx);
    f.D = ws.q12 * eval_Sq(zq, ctx);
    return f;
}

std::array<Real, 4> approx_ABCD(long n, const Real& z, const QContext& ctx) {
    if (n < 1) throw DomainError("approx_ABCD: n must be >= 1");
    Workspace ws = ctx.base_workspace();
    // beta_n (X_{n+1}(z) Y_n(0) - Y_{n+1}(0) X_n(z)) over the four (X,Y) pairs
    XPolyExact Pn = P_poly(n), Pn1 = P_poly(n + 1);
    XPolyExact Qn = Q_poly(n), Qn1 = Q_poly(n + 1);
    Real beta = ws.qpow4(-2 * n);
    Real pz = Pn.eval(z, ws), p1z = Pn1.eval(z, ws);
    Real qz = Qn.eval(z, ws), q1z = Qn1.eval(z, ws);
    Real p0 = Pn.coeff(0).eval(ws), p10 = Pn1.coeff(0).eval(ws);
    Real q0 = Qn.coeff(0).eval(ws), q10 = Qn1.coeff(0).eval(ws);
    return {
        beta * (q1z * q0 - q10 * qz),  // A_{n+1}
        beta * (p1z * q0 - q10 * pz),  // B_{n+1}
        beta * (q1z * p0 - p10 * qz),  // C_{n+1}
        beta * (p1z * p0 - p10 * pz),  // D_{n+1}
    };
}

SeriesValue eval_B_prime(const Real& z, const QContext& ctx) {
    // B(z) = -C(q^{-1/2} z)  =>  B'(z) = -q^{-1/2} C'(q^{-1/2} z)
    Workspace ws = ctx.base_workspace();
    return Real(-ws.qpow4(-2)) * eval_Cq_prime(ctx.scale_q_quarter(z, -2), ctx);
}

SeriesValue eval_D_prime(const Real& z, const QContext& ctx) {
    // D(z) = q^{1/2} S(q^{-1/2} z)  =>  D'(z) = S'(q^{-1/2} z)
    return eval_Sq_prime(ctx.scale_q_quarter(z, -2), ctx);
}

namespace {

SeriesValue kernel_3phi3(const Complex& u_in, const Complex& v_in, const QContext& ctx) {
    Workspace hi = ctx.workspace(ctx.precision_bits() + 192);
    Complex u = hi.up(u_in), v = hi.up(v_in);
    HypergeometricSpec spec;
    spec.upper = {QParam::zero(), QParam(v / u, 4), QParam(u / v, 4)};
    spec.lower = {QParam::qpow(6), QParam::qpow(6, Complex(Real(-1))),
                  QParam::qpow(4, Complex(Real(-1)))};
    spec.argument = QParam(-(u * v), 0);
    return (hi.up(Real(1)) / (1 - hi.q)) * eval_phi(spec, ctx);
}

}  // namespace

SeriesValue kernel(const Complex& u, const Complex& v, const QContext& ctx) {
    if (!u.is_zero() && !v.is_zero()) return kernel_3phi3(u, v, ctx);
    // On the axes fall back to partial sums of sum P_n(u) P_n(v).  Along the
    // axes every other product vanishes and the nonzero terms decay at least
    // geometrically; the tail is bounded from the decay ratio of the last two
    // nonzero terms.
    Workspace ws = ctx.base_workspace();
    Complex uu = ws.up(u), vv = ws.up(v);
    Complex pm_u(ws.up(Real(0))), pc_u(ws.up(Real(1)));
    Complex pm_v = pm_u, pc_v = pc_u;
    Real qn2 = ws.up(Real(1));
    SeriesValue acc = sv_exact(Complex(0));
    Real last_nonzero(0), prev_nonzero(0);
    Real rmag[3] = {Real(1), Real(1), Real(1)};
    long rcount = 0;
    long small = 0;
    for (long n = 0; n < ws.max_terms; ++n) {
        Complex term = pc_u * pc_v;
        acc = acc + sv_value(term);
        acc.terms_used = n + 1;
        Real aterm = abs_val(term);
        if (aterm != 0) {
            if (last_nonzero != 0) rmag[(rcount++) % 3] = aterm / last_nonzero;
            prev_nonzero = last_nonzero;
            last_nonzero = aterm;
        }
        if (aterm <= ws.rel_tol * abs_val(acc.value) + pow2(-2 * ctx.precision_bits()))
            ++small;
        else
            small = 0;
        if (small >= 5 && rcount >= 3) {
            Real r = std::max({rmag[0], rmag[1], rmag[2]});
            if (r < 1) {
                acc.tail_bound += last_nonzero * r / (1 - r);
                return acc;
            }
        }
        Complex next_u = qn2 * uu * pc_u - Complex(ws.q12) * pm_u;
        Complex next_v = qn2 * vv * pc_v - Complex(ws.q12) * pm_v;
        pm_u = pc_u;
        pc_u = next_u;
        pm_v = pc_v;
        pc_v = next_v;
        qn2 *= ws.q12;
    }
    throw NonConvergence("kernel partial sums", ws.max_terms);
}

SeriesValue kernel_bd(const Real& u, const Real& v, const QContext& ctx) {
    if (u == v) throw DomainError("kernel_bd: requires u != v");
    NevanlinnaQuad fu = eval_ABCD(Complex(u), ctx);
    NevanlinnaQuad fv = eval_ABCD(Complex(v), ctx);
    Workspace ws = ctx.base_workspace();
    SeriesValue num = fu.B * fv.D - fu.D * fv.B;
    return sv_value(Complex(ws.up(Real(1)) / (ws.up(u) - ws.up(v)))) * num;
}

Real kernel_partial_sum(const Real& u, const Real& v, long terms, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    std::vector<Real> pu = p_values(u, terms - 1, ws);
    std::vector<Real> pv = p_values(v, terms - 1, ws);
    Real acc = ws.up(Real(0));
    for (long n = 0; n < terms; ++n) acc += pu[n] * pv[n];
    return acc;
}

SeriesValue kernel_diag(const Real& u, const QContext& ctx) {
    Real uu = upsized(u, ctx.precision_bits() + 192);
    HypergeometricSpec spec;
    spec.upper = {QParam::zero(), QParam::qpow(4), QParam::qpow(4)};
    spec.lower = {QParam::qpow(6), QParam::qpow(6, Complex(Real(-1))),
                  QParam::qpow(4, Complex(Real(-1)))};
    spec.argument = QParam(Complex(-(uu * uu)), 0);
    Workspace ws = ctx.base_workspace();
    return (ws.up(Real(1)) / (1 - ws.q)) * eval_phi(spec, ctx);
}

SeriesValue kernel_diag_derivative_path(const Real& u, const QContext& ctx) {
    NevanlinnaQuad f = eval_ABCD(Complex(u), ctx);
    return eval_B_prime(u, ctx) * f.D - f.B * eval_D_prime(u, ctx);
}

Real first_sine_zero(const QContext& ctx) {
    ZeroTable t = find_zeros(EntireFunctionId::simple(EntireFunctionId::Tag::Sq), 1, ctx);
    return t.zeros.front().location;
}

SeriesValue f_u(const Real& z, const Real& u, const QContext& ctx) {
    if (u < 0 || u >= first_sine_zero(ctx))
        throw DomainError("f_u: u must lie in [0, s_1(q))");
    return fn_fu(z, u, ctx);
}

SeriesValue f_u_3phi3(const Real& z_in, const Real& u_in, const QContext& ctx) {
    if (u_in == 0 || z_in == 0) throw DomainError("f_u_3phi3: undefined at u = 0 or z = 0");
    Real z = upsized(z_in, ctx.precision_bits() + 192);
    Real u = upsized(u_in, ctx.precision_bits() + 192);
    // Cor 2.2 with (q^{-1/2} z, u):  3phi3[0, u^{-1}z, u z^{-1} q; q^{1/2}, -q^{1/2}, -q; q, -uz]
    HypergeometricSpec spec;
    spec.upper = {QParam::zero(), QParam(Complex(z / u), 0), QParam(Complex(u / z), 4)};
    spec.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                  QParam::qpow(4, Complex(Real(-1)))};
    spec.argument = QParam(Complex(-(u * z)), 0);
    return eval_phi(spec, ctx);
}

MeasureParam MeasureParam::from_u(Real u) {
    MeasureParam p;
    p.kind = Kind::U;
    p.u = std::move(u);
    return p;
}
MeasureParam MeasureParam::from_t(Real t) {
    MeasureParam p;
    p.kind = Kind::T;
    p.t = std::move(t);
    return p;
}
MeasureParam MeasureParam::t_infinity() {
    MeasureParam p;
    p.kind = Kind::T;
    p.t_infinite = true;
    return p;
}

Real DiscreteMeasure::total_mass() const {
    Real s(0);
    for (const auto& m : masses) s = s + m;  // rebinding keeps the masses' precision
    return s;
}

Real DiscreteMeasure::max_abs_support() const {
    Real m(0);
    for (const auto& x : support) m = std::max(m, abs(x));
    return m;
}

namespace {

// Omitted-mass bound: geometric extrapolation of the decay of the three
// outermost masses on each side.
Real truncation_bound_from(const std::vector<Real>& support, const std::vector<Real>& masses) {
    Real bound(0);
    for (int side = 0; side < 2; ++side) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < support.size(); ++i)
            if ((side == 0 && support[i] > 0) || (side == 1 && support[i] < 0)) idx.push_back(i);
        if (side == 1) std::reverse(idx.begin(), idx.end());  // outward order
        size_t n = idx.size();
        if (n < 4) continue;
        Real r(0);
        for (size_t j = n - 3; j < n; ++j) {
            Real rj = masses[idx[j]] / masses[idx[j - 1]];
            r = std::max(r, rj);
        }
        if (r >= Real(9) / 10) r = Real(9) / 10;
        bound = bound + masses[idx[n - 1]] * r / (1 - r);
    }
    return bound;
}

DiscreteMeasure assemble_measure(const MeasureParam& param, const EntireFunctionId& fn,
                                 long count, const QContext& ctx) {
    DiscreteMeasure mu;
    mu.q = ctx.q_exact();
    mu.parameter = param;

    std::vector<Real> pts;
    const bool origin =
        (fn.tag == EntireFunctionId::Tag::BtMinusD && !fn.t_infinite && fn.t == 0);
    if (origin) pts.push_back(Real(0));
    for (const auto& z : scan_positive_zeros(fn, +1, count, ctx)) pts.push_back(z.location);
    for (const auto& z : scan_positive_zeros(fn, -1, count, ctx)) pts.push_back(z.location);
    std::sort(pts.begin(), pts.end());

    mu.support = std::move(pts);
    mu.masses.reserve(mu.support.size());
    for (const auto& x : mu.support) {
        SeriesValue kd = kernel_diag(x, ctx);
        Real mass = 1 / kd.real_value();
        if (!(mass > 0)) throw QError("build_measure: nonpositive mass computed");
        mu.masses.push_back(mass);
    }
    mu.truncation_bound = truncation_bound_from(mu.support, mu.masses);
    return mu;
}

}  // namespace

DiscreteMeasure build_measure(const MeasureParam& param, long count, const QContext& ctx) {
    if (count < 1) throw DomainError("build_measure: count must be >= 1");
    EntireFunctionId fn;
    if (param.kind == MeasureParam::Kind::U) {
        if (param.u < 0 || param.u >= first_sine_zero(ctx))
            throw DomainError("build_measure: u must lie in [0, s_1(q))");
        fn = EntireFunctionId::fu(param.u);
    } else if (param.t_infinite) {
        fn = EntireFunctionId::bt_infinity();
    } else {
        fn = EntireFunctionId::bt_minus_d(param.t);
    }
    return assemble_measure(param, fn, count, ctx);
}

// The Prop 4.7/4.8 masses -S(q s_k)/(s_k S'(s_k)) and -C(q c_k)/(c_k C'(c_k))
// sit exponentially close to zeros of S and C themselves, so evaluating them
// at far support points would require the zero locations to far more digits
// than the bisection width contract provides.  rho(x) = 1/K(x,x) is the same
// number through eq. (rho) and is insensitive to the support location; the
// closed-form masses remain as cross-checks over the first few zeros in the
// test suite.
DiscreteMeasure sine_measure(long count, const QContext& ctx) {
    if (count < 1) throw DomainError("sine_measure: count must be >= 1");
    Workspace ws = ctx.base_workspace();
    ZeroTable sz = find_zeros(EntireFunctionId::simple(EntireFunctionId::Tag::Sq), count, ctx);

    DiscreteMeasure mu;
    mu.q = ctx.q_exact();
    mu.parameter = MeasureParam::from_t(Real(0));
    std::vector<std::pair<Real, Real>> pts;
    pts.emplace_back(Real(0), 1 - ws.q);  // rho(0) = 1 - q
    for (const auto& s : sz.locations()) {
        Real x = ctx.scale_q_quarter(s, 2);
        Real mass = 1 / kernel_diag(x, ctx).real_value();
        if (!(mass > 0)) throw QError("sine_measure: nonpositive mass");
        pts.emplace_back(x, mass);
        pts.emplace_back(-x, mass);
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [x, m] : pts) {
        mu.support.push_back(x);
        mu.masses.push_back(m);
    }
    mu.truncation_bound = truncation_bound_from(mu.support, mu.masses);
    return mu;
}

DiscreteMeasure cosine_measure(long count, const QContext& ctx) {
    if (count < 1) throw DomainError("cosine_measure: count must be >= 1");
    ZeroTable cz = find_zeros(EntireFunctionId::simple(EntireFunctionId::Tag::Cq), count, ctx);

    DiscreteMeasure mu;
    mu.q = ctx.q_exact();
    mu.parameter = MeasureParam::t_infinity();
    std::vector<std::pair<Real, Real>> pts;
    for (const auto& c : cz.locations()) {
        Real x = ctx.scale_q_quarter(c, 2);
        Real mass = 1 / kernel_diag(x, ctx).real_value();
        if (!(mass > 0)) throw QError("cosine_measure: nonpositive mass");
        pts.emplace_back(x, mass);
        pts.emplace_back(-x, mass);
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [x, m] : pts) {
        mu.support.push_back(x);
        mu.masses.push_back(m);
    }
    mu.truncation_bound = truncation_bound_from(mu.support, mu.masses);
    return mu;
}

SeriesValue ac_density(const Real& x, const ACMeasureSpec& spec, const QContext& ctx) {
    if (!(spec.gamma > 0)) throw DomainError("ac_density: gamma must be positive");
    Workspace ws = ctx.base_workspace();
    NevanlinnaQuad f = eval_ABCD(Complex(x), ctx);
    SeriesValue lin = sv_value(Complex(ws.up(spec.beta))) * f.B - f.D;
    SeriesValue den = lin * lin + sv_value(Complex(ws.up(spec.gamma) * ws.up(spec.gamma))) *
                                      (f.B * f.B);
    Real g = ws.up(spec.gamma) / ws.pi();
    SeriesValue out;
    out.value = Complex(g / den.value.re);
    // first-order propagation of the denominator error through the reciprocal
    out.tail_bound = g * den.error() / (den.value.re * den.value.re) * 2;
    out.terms_used = den.terms_used;
    return out;
}

SeriesValue ac_density_E_path(const Real& x, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    SeriesValue e = eval_E(Complex(Real(0), ctx.scale_q_quarter(x, -2)), ctx);
    SeriesValue mod2 = e * sv_exact(conj(e.value));
    Real pref = ws.up(Real(1)) / (ws.q14 * ws.pi());
    SeriesValue out;
    out.value = Complex(pref / mod2.value.re);
    out.tail_bound = pref * mod2.error() / (mod2.value.re * mod2.value.re) * 2;
    out.terms_used = e.terms_used;
    return out;
}

SeriesValue ac_density_2phi2_path(const Real& x, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    HypergeometricSpec spec;
    spec.upper = {QParam::zero(), QParam::qpow(2)};
    spec.lower = {QParam::qpow(2, Complex(Real(-1))), QParam::qpow(4, Complex(Real(-1)))};
    spec.argument = QParam(Complex(-(x * x)), -2);
    SeriesValue phi = eval_phi(spec, ctx);
    SeriesValue out;
    Real pref = ws.pi() * ws.q14;
    out.value = Complex(1 / (pref * phi.value.re));
    out.tail_bound = phi.error() / (pref * phi.value.re * phi.value.re) * 2;
    out.terms_used = phi.terms_used;
    return out;
}

std::vector<std::vector<Real>> verify_orthogonality(const DiscreteMeasure& mu, long n_max,
                                                    const QContext& ctx, const Real& tol) {
    if (n_max < 0) throw DomainError("verify_orthogonality: n_max must be >= 0");
    // omitted mass lives just past the cut; the first omitted point sits near
    // max_support / q and dominates the polynomial-weighted tail, with
    // |P_n(x)|^2 <= ~ x^{2n} q^{n(n-1)/2} near the leading term
    Workspace ws0 = ctx.base_workspace();
    Real next_point = std::max(Real(1), mu.max_abs_support()) / ws0.q;
    Real growth = pow(next_point, static_cast<int>(2 * n_max)) *
                  ws0.qpow4(2 * n_max * (n_max - 1));
    if (mu.truncation_bound * growth > tol / 10)
        throw TruncationTooCoarse("verify_orthogonality: omitted mass " +
                                  decimal_string(mu.truncation_bound, 8) +
                                  " too large for tolerance " + decimal_string(tol, 8));

    Workspace ws = ctx.base_workspace();
    std::vector<std::vector<Real>> gram(n_max + 1, std::vector<Real>(n_max + 1, ws.up(Real(0))));
    for (size_t i = 0; i < mu.support.size(); ++i) {
        std::vector<Real> p = p_values(mu.support[i], n_max, ws);
        Real w = ws.up(mu.masses[i]);
        for (long n = 0; n <= n_max; ++n)
            for (long m = n; m <= n_max; ++m) gram[n][m] += w * p[n] * p[m];
    }
    std::vector<std::vector<Real>> res(n_max + 1, std::vector<Real>(n_max + 1));
    for (long n = 0; n <= n_max; ++n)
        for (long m = 0; m <= n_max; ++m) {
            const Real& g = gram[std::min(n, m)][std::max(n, m)];
            res[n][m] = abs(n == m ? Real(g - 1) : g);
        }
    return res;
}

namespace {

// Integration window and panels for the AC density: extend R until the
// density times the largest polynomial weight is negligible.
std::vector<Real> ac_panels(const ACMeasureSpec& spec, long n_max, const QContext& ctx,
                            const Real& tol) {
    Workspace ws = ctx.base_workspace();
    Real R = ws.up(Real(1));
    for (int it = 0; it < 200; ++it) {
        Real dl = ac_density(-R, spec, ctx).real_value();
        Real dr = ac_density(R, spec, ctx).real_value();
        Real w = pow(R, static_cast<int>(2 * n_max + 2));
        if (std::max(dl, dr) * w < tol / 20) break;
        R *= 2;
    }
    return symmetric_geometric_panels(R, ws.up(Real(1)), ws.qpow4(-2));
}

std::vector<std::vector<Real>> ac_gram(const ACMeasureSpec& spec, long n_max,
                                       const QContext& ctx, const Real& tol, int order) {
    Workspace ws = ctx.base_workspace();
    std::vector<Real> edges = ac_panels(spec, n_max, ctx, tol);
    const GaussLegendre& rule = GaussLegendre::order(order, ctx.precision_bits() + 64);
    size_t dims = static_cast<size_t>((n_max + 1) * (n_max + 1));
    std::vector<Real> accum(dims, ws.up(Real(0)));
    integrate_panels(
        edges, rule,
        [&](const Real& x, std::vector<Real>& out) {
            out.assign(dims, Real(0));
            Real d = ac_density(x, spec, ctx).real_value();
            std::vector<Real> p = p_values(x, n_max, ws);
            size_t k = 0;
            for (long n = 0; n <= n_max; ++n)
                for (long m = 0; m <= n_max; ++m) out[k++] = d * p[n] * p[m];
        },
        accum);
    std::vector<std::vector<Real>> gram(n_max + 1, std::vector<Real>(n_max + 1));
    size_t k = 0;
    for (long n = 0; n <= n_max; ++n)
        for (long m = 0; m <= n_max; ++m) gram[n][m] = accum[k++];
    return gram;
}

}  // namespace

std::vector<std::vector<Real>> verify_orthogonality(const ACMeasureSpec& spec, long n_max,
                                                    const QContext& ctx, const Real& tol) {
    auto gram = ac_gram(spec, n_max, ctx, tol, 48);
    std::vector<std::vector<Real>> res(n_max + 1, std::vector<Real>(n_max + 1));
    for (long n = 0; n <= n_max; ++n)
        for (long m = 0; m <= n_max; ++m) res[n][m] = abs(n == m ? Real(gram[n][m] - 1) : gram[n][m]);
    return res;
}

std::vector<Real> moments(const DiscreteMeasure& mu, long k_max, const QContext& ctx) {
    if (k_max < 0) throw DomainError("moments: k_max must be >= 0");
    Workspace ws = ctx.base_workspace();
    std::vector<Real> mom(k_max + 1, ws.up(Real(0)));
    for (size_t i = 0; i < mu.support.size(); ++i) {
        Real xp = ws.up(Real(1));
        Real x = ws.up(mu.support[i]);
        Real w = ws.up(mu.masses[i]);
        for (long k = 0; k <= k_max; ++k) {
            mom[k] += w * xp;
            xp *= x;
        }
    }
    return mom;
}

std::vector<Real> moments(const ACMeasureSpec& spec, long k_max, const QContext& ctx) {
    if (k_max < 0) throw DomainError("moments: k_max must be >= 0");
    Workspace ws = ctx.base_workspace();
    std::vector<Real> edges = ac_panels(spec, (k_max + 1) / 2, ctx, pow2(-60));
    const GaussLegendre& rule = GaussLegendre::order(48, ctx.precision_bits() + 64);
    std::vector<Real> accum(k_max + 1, ws.up(Real(0)));
    integrate_panels(
        edges, rule,
        [&](const Real& x, std::vector<Real>& out) {
            out.assign(k_max + 1, Real(0));
            Real d = ac_density(x, spec, ctx).real_value();
            Real xp = ws.up(Real(1));
            for (long k = 0; k <= k_max; ++k) {
                out[k] = d * xp;
                xp *= x;
            }
        },
        accum);
    return accum;
}

std::vector<LaurentPolyQ> jacobi_moments_exact(const JacobiOperator& op, long k_max) {
    if (k_max < 0) throw DomainError("jacobi_moments_exact: k_max must be >= 0");
    long N = op.truncation_order;
    if (N <= k_max / 2) throw DomainError("jacobi_moments_exact: truncation too small");
    // v = J^k e_0 computed exactly; beta_n = q^{-n/2} lives on the quarter
    // lattice as a shift by -2n.
    std::vector<LaurentPolyQ> v(N + 1);
    v[0] = LaurentPolyQ::one();
    std::vector<LaurentPolyQ> mom;
    mom.push_back(v[0]);
    for (long k = 1; k <= k_max; ++k) {
        std::vector<LaurentPolyQ> w(N + 1);
        for (long i = 0; i <= N; ++i) {
            if (v[i].is_zero()) continue;
            if (i > 0) {
                LaurentPolyQ t = v[i];
                t.shift(-2 * (i - 1));  // beta_{i-1}
                w[i - 1] += t;
            }
            if (i < N) {
                LaurentPolyQ t = v[i];
                t.shift(-2 * i);  // beta_i
                w[i + 1] += t;
            }
        }
        v = std::move(w);
        mom.push_back(v[0]);
    }
    return mom;
}

std::vector<Real> jacobi_moments(const JacobiOperator& op, long k_max, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    std::vector<LaurentPolyQ> exact = jacobi_moments_exact(op, k_max);
    std::vector<Real> mom;
    mom.reserve(exact.size());
    for (const auto& p : exact) mom.push_back(p.eval(ws));
    return mom;
}

namespace {

struct AqMeasure {
    std::vector<Real> zeros;      // z_j
    std::vector<Real> raw_mass;   // A(q z_j) / (z_j A'(z_j)), negative
    std::vector<Real> y;          // q^{-1/2} z_j^{-1/2}
};

AqMeasure aq_measure(long count, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    ZeroTable za = find_zeros(EntireFunctionId::simple(EntireFunctionId::Tag::Aq), count, ctx);
    AqMeasure m;
    for (const auto& z : za.locations()) {
        Real num = eval_Aq(Complex(ctx.scale_q_quarter(z, 4)), ctx).real_value();
        Real den = ws.up(z) * eval_Aq_prime(Complex(z), ctx).real_value();
        m.zeros.push_back(z);
        m.raw_mass.push_back(num / den);
        m.y.push_back(1 / sqrt(ws.q * ws.up(z)));
    }
    return m;
}

}  // namespace

std::vector<std::vector<Real>> aq_orthogonality_check(long n_max, long count,
                                                      const QContext& ctx) {
    if (n_max < 0) throw DomainError("aq_orthogonality_check: n_max must be >= 0");
    Workspace ws = ctx.base_workspace();
    AqMeasure m = aq_measure(count, ctx);

    std::vector<std::vector<Real>> acc(n_max + 1, std::vector<Real>(n_max + 1, ws.up(Real(0))));
    for (size_t j = 0; j < m.zeros.size(); ++j) {
        std::vector<Real> tp = t_values(m.y[j], n_max, ws);
        std::vector<Real> tn = t_values(-m.y[j], n_max, ws);
        for (long n = 0; n <= n_max; ++n)
            for (long s = n; s <= n_max; ++s)
                acc[n][s] += m.raw_mass[j] * (tp[n] * tp[s] + tn[n] * tn[s]);
    }
    std::vector<std::vector<Real>> res(n_max + 1, std::vector<Real>(n_max + 1));
    for (long n = 0; n <= n_max; ++n)
        for (long s = 0; s <= n_max; ++s) {
            Real v = acc[std::min(n, s)][std::max(n, s)];
            if (n == s) v += 2 * ws.qpow4(2 * n * (n - 1));  // + 2 q^{n(n-1)/2}
            res[n][s] = abs(v);
        }
    return res;
}

Real aq_stieltjes_residual(const Complex& z, long count, const QContext& ctx) {
    Workspace ws = ctx.base_workspace();
    AqMeasure m = aq_measure(count, ctx);
    Complex zz = ws.up(z);
    Complex one(ws.up(Real(1)));
    Complex lhs(ws.up(Real(0)));
    for (size_t j = 0; j < m.zeros.size(); ++j) {
        Complex yz = Complex(ws.up(m.y[j])) * zz;
        lhs += Complex(-m.raw_mass[j] / 2) * (one / (one - yz) + one / (one + yz));
    }
    SeriesValue num = eval_Aq(zz * zz, ctx);
    SeriesValue den = eval_Aq(ctx.scale_q_quarter(zz * zz, -4), ctx);
    if (abs_val(den.value) <= den.error())
        throw DomainError("aq_stieltjes_residual: z^2/q is a zero of A_q");
    return abs_val(lhs - num.value / den.value);
}

}  // namespace qmoment
