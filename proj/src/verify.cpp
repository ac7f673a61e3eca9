#include "qmoment/verify.hpp"

#include <algorithm>

namespace qmoment {

std::uint64_t RandomGrid::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Real RandomGrid::uniform(double lo, double hi) {
    // 53-bit dyadic fraction; exact as a Real
    double f = static_cast<double>(next() >> 11) * 0x1p-53;
    return Real(lo) + Real(f) * (Real(hi) - Real(lo));
}

Real RandomGrid::nonzero(double a) {
    for (;;) {
        Real x = uniform(-a, a);
        if (abs(x) > Real(a) / 64) return x;
    }
}

namespace {

CheckResult make_check(std::string name, const Real& residual, const Real& tol,
                       std::string note = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tol;
    c.pass = residual <= tol;
    c.note = std::move(note);
    return c;
}

CheckResult make_bool_check(std::string name, bool ok, std::string note = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = Real(ok ? 0 : 1);
    c.tolerance = Real(0);
    c.pass = ok;
    c.note = std::move(note);
    return c;
}

Real matrix_max(const std::vector<std::vector<Real>>& m) {
    Real worst(0);
    for (const auto& row : m)
        for (const auto& v : row) worst = std::max(worst, v);
    return worst;
}

}  // namespace

CheckList verify_series(const QContext& ctx, std::uint64_t seed) {
    CheckList out;
    RandomGrid rng(seed);
    Workspace ws = ctx.base_workspace();

    // tail honesty: recomputing with doubled cap / halved tolerance moves the
    // value by at most the reported tail bound
    {
        QContext tight(ctx.q_exact(), ctx.precision_bits(), ctx.rel_tol_exact() / 2,
                       ctx.max_terms() * 2);
        Real worst(0);
        for (int i = 0; i < 12; ++i) {
            Complex z(rng.uniform(-3, 3), rng.uniform(-1, 1));
            SeriesValue a = eval_E(z, ctx);
            SeriesValue b = eval_E(z, tight);
            Real moved = abs_val(a.value - b.value);
            Real slack = a.tail_bound + a.round_off + b.round_off;
            worst = std::max(worst, slack == 0 ? moved : Real(moved - slack));
        }
        for (int i = 0; i < 12; ++i) {
            Complex a_param(rng.uniform(-2, 2), 0);
            SeriesValue a = q_pochhammer(a_param, ctx, kPochInfinity);
            SeriesValue b = q_pochhammer(a_param, tight, kPochInfinity);
            Real moved = abs_val(a.value - b.value);
            Real slack = a.tail_bound + a.round_off + b.round_off;
            worst = std::max(worst, slack == 0 ? moved : Real(moved - slack));
        }
        out.push_back(make_check("series.tail_bound_honest_under_refinement", worst, Real(0)));
    }

    // (a;q)_{n+1} = (a;q)_n (1 - a q^n)
    {
        Real worst(0);
        for (int i = 0; i < 10; ++i) {
            Complex a(rng.uniform(-2, 2), rng.uniform(-2, 2));
            long n = 1 + static_cast<long>(i);
            SeriesValue lhs = q_pochhammer(a, ctx, n + 1);
            SeriesValue rhs = q_pochhammer(a, ctx, n);
            Complex factor = Complex(ws.up(Real(1))) - ws.up(a) * ws.qpow(n);
            worst = std::max(worst, abs_val(lhs.value - rhs.value * factor));
        }
        out.push_back(
            make_check("series.pochhammer_step_identity", worst, pow2(-ctx.precision_bits() + 16)));
    }

    // q-Pascal identity, exact for all 1 <= k <= n <= 20
    {
        bool ok = true;
        for (long n = 1; n <= 20 && ok; ++n)
            for (long k = 1; k <= n && ok; ++k) {
                LaurentPolyQ lhs = q_binomial_exact(n + 1, k);
                LaurentPolyQ rhs = q_binomial_exact(n, k - 1) +
                                   LaurentPolyQ::q_power(4 * k) * q_binomial_exact(n, k);
                ok = (lhs == rhs);
            }
        out.push_back(make_bool_check("series.q_pascal_exact_n_le_20", ok));
    }

    // terminating detection: upper parameter q^{-n} gives exactly n+1 terms
    // and a zero tail
    {
        bool ok = true;
        for (long n = 0; n <= 6 && ok; ++n) {
            HypergeometricSpec spec;
            spec.upper = {QParam::zero(), QParam::qpow(-4 * n), QParam::qpow(12)};
            spec.lower = {QParam::qpow(2), QParam::qpow(2, Complex(Real(-1))),
                          QParam::qpow(4, Complex(Real(-1)))};
            spec.argument = QParam(Complex(Real(3) / 2), 4);
            SeriesValue sv = eval_phi(spec, ctx);
            ok = (sv.terms_used == n + 1) && (sv.tail_bound == 0);
        }
        out.push_back(make_bool_check("series.terminating_detection_exact", ok));
    }

    // finite sum identity: sum_k [n,k] q^{k(k-1)/2} (-z)^k = (z;q)_n, exact
    // as polynomials in z for n <= 12
    {
        bool ok = true;
        for (long n = 0; n <= 12 && ok; ++n) {
            XPolyExact lhs;
            for (long k = 0; k <= n; ++k) {
                LaurentPolyQ c = q_binomial_exact(n, k);
                c.shift(2 * k * (k - 1));  // q^{k(k-1)/2}
                if (k % 2) c = -c;
                lhs += XPolyExact::x_power(k, std::move(c));
            }
            XPolyExact rhs = XPolyExact::constant(LaurentPolyQ::one());
            for (long j = 0; j < n; ++j) {
                XPolyExact factor = XPolyExact::constant(LaurentPolyQ::one());
                factor -= XPolyExact::x_power(1, LaurentPolyQ::q_power(4 * j));
                rhs = rhs * factor;
            }
            ok = (lhs == rhs);
        }
        out.push_back(make_bool_check("series.gauss_binomial_product_identity_n_le_12", ok));
    }
    return out;
}

CheckList verify_functions(const QContext& ctx, std::uint64_t seed) {
    CheckList out;
    RandomGrid rng(seed);
    Workspace ws = ctx.base_workspace();
    const Real tol = pow2(-ctx.precision_bits() + 24);

    // q-Euler identity E(iz) = C(z) + i q^{1/4} S(z) at 200 random points
    {
        Real worst(0);
        for (int i = 0; i < 200; ++i) {
            Complex z(rng.uniform(-2.5, 2.5), (i % 2) ? rng.uniform(-1.5, 1.5) : Real(0));
            SeriesValue e = eval_E(Complex(-z.im, z.re), ctx);  // E(iz)
            SeriesValue c = eval_Cq(z, ctx);
            SeriesValue s = eval_Sq(z, ctx);
            Complex rhs = c.value + Complex(Real(0), ws.q14) * s.value;
            worst = std::max(worst, abs_val(e.value - rhs));
        }
        out.push_back(make_check("functions.q_euler_identity", worst, tol));
    }

    // q-difference equations for E, S, C on a grid
    {
        Real worst(0);
        for (int i = 0; i < 50; ++i) {
            Real z = rng.uniform(-2, 2);
            // E(z) - E(qz) - z q^{1/4} E(q^{1/2} z)
            SeriesValue r1 = eval_E(Complex(z), ctx) -
                             eval_E(Complex(ctx.scale_q_quarter(z, 4)), ctx) -
                             sv_value(Complex(ws.up(z) * ws.q14)) *
                                 eval_E(Complex(ctx.scale_q_quarter(z, 2)), ctx);
            // S(z) - S(qz) - z C(q^{1/2} z)
            SeriesValue r2 = eval_Sq(z, ctx) - eval_Sq(ctx.scale_q_quarter(z, 4), ctx) -
                             sv_value(Complex(ws.up(z))) *
                                 eval_Cq(ctx.scale_q_quarter(z, 2), ctx);
            // C(z) - C(qz) + z q^{1/2} S(q^{1/2} z)
            SeriesValue r3 = eval_Cq(z, ctx) - eval_Cq(ctx.scale_q_quarter(z, 4), ctx) +
                             sv_value(Complex(ws.up(z) * ws.q12)) *
                                 eval_Sq(ctx.scale_q_quarter(z, 2), ctx);
            worst = std::max({worst, abs_val(r1.value), abs_val(r2.value), abs_val(r3.value)});
        }
        out.push_back(make_check("functions.q_difference_equations", worst, tol));
    }

    // three-term relation u(q^2 z) + (q^2 z^2 - (1+q)) u(qz) + q u(z) = 0
    {
        Real worst(0);
        for (int i = 0; i < 20; ++i) {
            Real z = rng.uniform(-3, 3);
            Real zq = ctx.scale_q_quarter(z, 4);
            Real zq2 = ctx.scale_q_quarter(z, 8);
            Real coef = ws.q * ws.q * ws.up(z) * ws.up(z) - (1 + ws.q);
            for (bool sine : {true, false}) {
                SeriesValue u0 = sine ? eval_Sq(z, ctx) : eval_Cq(z, ctx);
                SeriesValue u1 = sine ? eval_Sq(zq, ctx) : eval_Cq(zq, ctx);
                SeriesValue u2 = sine ? eval_Sq(zq2, ctx) : eval_Cq(zq2, ctx);
                SeriesValue r = u2 + sv_value(Complex(coef)) * u1 + ws.q * u0;
                worst = std::max(worst, abs_val(r.value));
            }
        }
        out.push_back(make_check("functions.second_order_q_difference", worst, tol));
    }

    // base inversion: term-wise rearranged q^{-1} series vs the identity path
    {
        Real worst(0);
        Workspace hi = ctx.workspace(ctx.precision_bits() + 128);
        for (int i = 0; i < 8; ++i) {
            Real w = rng.uniform(-1.5, 1.5);
            // E_{1/q}(w) summed directly: sum q^{-n^2/4} w^n / (1/q;1/q)_n,
            // truncated at N terms (terms grow, then the comparison is made
            // against the same truncation of E_q(-q^{1/2} w))
            const long N = 24;
            Real direct = hi.up(Real(0));
            Real qinv = 1 / hi.q;
            Real poch = hi.up(Real(1));
            Real qinv_pk = qinv;  // (1/q)^{k+1}
            Real wn = hi.up(Real(1));
            for (long n = 0; n < N; ++n) {
                direct += hi.qpow4(-n * n) * wn / poch;
                poch *= (1 - qinv_pk);
                qinv_pk *= qinv;
                wn *= hi.up(w);
            }
            Real target = hi.up(Real(0));
            Real zneg = -hi.q12 * hi.up(w);
            Real zn = hi.up(Real(1));
            Real poch2 = hi.up(Real(1));
            Real qk = hi.q;
            for (long n = 0; n < N; ++n) {
                target += hi.qpow4(n * n) * zn / poch2;
                poch2 *= (1 - qk);
                qk *= hi.q;
                zn *= zneg;
            }
            worst = std::max(worst, abs(direct - target));
        }
        out.push_back(make_check("functions.base_inversion_termwise", worst, tol));

        // and the identity-path evaluations agree with the definitions
        Real worst2(0);
        for (int i = 0; i < 8; ++i) {
            Complex w(rng.uniform(-1.5, 1.5), 0);
            SeriesValue lhs = eval_Sq_qinv(w, ctx);
            SeriesValue rhs = Real(-ws.q12) * eval_Sq(ctx.scale_q_quarter(w, 2), ctx);
            worst2 = std::max(worst2, abs_val(lhs.value - rhs.value));
            SeriesValue lc = eval_Cq_qinv(w, ctx);
            SeriesValue rc = eval_Cq(ctx.scale_q_quarter(w, 2), ctx);
            worst2 = std::max(worst2, abs_val(lc.value - rc.value));
        }
        out.push_back(make_check("functions.base_inversion_identity_path", worst2, tol));
    }

    // addition formula and its trigonometric corollaries on a random grid
    {
        Real worst(0), worst_sum(0), worst_diff(0);
        for (int i = 0; i < 40; ++i) {
            Complex u(rng.nonzero(2)), v(rng.nonzero(2));
            SeriesValue rhs = product_formula_rhs(u, v, ctx);
            SeriesValue lhs = eval_E(u, ctx) * eval_E(-v, ctx);
            worst = std::max(worst, abs_val(lhs.value - rhs.value));

            SeriesValue ts = trig_sum_formula(u, v, ctx);
            SeriesValue ds = eval_Cq(u, ctx) * eval_Cq(v, ctx) +
                             ws.q12 * (eval_Sq(u, ctx) * eval_Sq(v, ctx));
            worst_sum = std::max(worst_sum, abs_val(ts.value - ds.value));

            SeriesValue td = trig_diff_formula(u, v, ctx);
            SeriesValue dd = eval_Sq(u, ctx) * eval_Cq(v, ctx) -
                             eval_Cq(u, ctx) * eval_Sq(v, ctx);
            worst_diff = std::max(worst_diff, abs_val(td.value - dd.value));
        }
        out.push_back(make_check("functions.addition_formula", worst, tol));
        out.push_back(make_check("functions.trig_sum_closed_form", worst_sum, tol));
        out.push_back(make_check("functions.trig_diff_closed_form", worst_diff, tol));
    }

    // Pythagorean identity C(q^{1/2}v) C(v) + q^{1/2} S(q^{1/2}v) S(v) = 1
    {
        Real worst(0);
        for (int i = 0; i < 25; ++i) {
            Real v = rng.uniform(-3, 3);
            Real vq = ctx.scale_q_quarter(v, 2);
            SeriesValue r = eval_Cq(vq, ctx) * eval_Cq(v, ctx) +
                            ws.q12 * (eval_Sq(vq, ctx) * eval_Sq(v, ctx));
            worst = std::max(worst, abs(r.value.re - 1));
        }
        out.push_back(make_check("functions.pythagorean_identity", worst, tol));
    }

    // |E(ix)|^2 three paths
    {
        Real worst(0);
        for (int i = 0; i < 15; ++i) {
            Real x = rng.uniform(-2.5, 2.5);
            SeriesValue p2 = abs_E_sq(x, ctx);
            SeriesValue cs = eval_Cq(x, ctx) * eval_Cq(x, ctx) +
                             ws.q12 * (eval_Sq(x, ctx) * eval_Sq(x, ctx));
            SeriesValue e = eval_E(Complex(Real(0), x), ctx);
            Real direct = norm_sq(e.value);
            worst = std::max({worst, abs(p2.value.re - cs.value.re), abs(p2.value.re - direct)});
        }
        out.push_back(make_check("functions.abs_E_squared_paths", worst, tol));
    }

    // Hahn-Exton q-Bessel route: S and C against J^{(3)}_{+-1/2} for z > 0
    {
        Real worst(0);
        const QContext ctx_q2(ctx.q_exact() * ctx.q_exact(), ctx.precision_bits(),
                              ctx.rel_tol_exact(), ctx.max_terms());
        for (int i = 0; i < 6; ++i) {
            Real z = rng.uniform(0.05, 2.5);
            // J_nu^{(3)}(z;p) = (p^{nu+1};p)_inf/(p;p)_inf z^nu 1phi1(0;p^{nu+1};p,pz^2),
            // base p = q^2; the S relation reads
            // S(z) = (q^2;q^2)_inf / (q;q^2)_inf z^{1/2} J_{1/2}^{(3)}(z;q^2).
            HypergeometricSpec j12;
            j12.upper = {QParam::zero()};
            j12.lower = {QParam::qpow(12)};  // (q^2)^{3/2} = q^3
            j12.base_quarters = 8;
            j12.argument = QParam(Complex(z * z), 8);
            SeriesValue phi_s = eval_phi(j12, ctx);
            // combined prefactor (q^3;q^2)_inf/(q;q^2)_inf = 1/(1-q), assembled
            // from the infinite products to exercise q_pochhammer as well
            SeriesValue p3 = q_pochhammer(Complex(ws.q * ws.q * ws.q), ctx_q2, kPochInfinity);
            SeriesValue p1 = q_pochhammer(Complex(ws.q), ctx_q2, kPochInfinity);
            Real lhs_s = eval_Sq(z, ctx).value.re;
            Real rhs_s = (p3.value.re / p1.value.re) * ws.up(z) * phi_s.value.re;
            worst = std::max(worst, abs(lhs_s - rhs_s));

            HypergeometricSpec jm12;
            jm12.upper = {QParam::zero()};
            jm12.lower = {QParam::qpow(4)};  // (q^2)^{1/2} = q
            jm12.base_quarters = 8;
            jm12.argument = QParam(Complex(z * z), 4);  // q^2 (q^{-1/2}z)^2 = q z^2
            SeriesValue phi_c = eval_phi(jm12, ctx);
            Real lhs_c = eval_Cq(z, ctx).value.re;
            // C(z) = (q^2;q^2)_inf/(q;q^2)_inf (q^{-1/2}z)^{1/2} J_{-1/2}^{(3)}(q^{-1/2}z;q^2);
            // the square-root prefactor matches the Bessel argument, so the
            // infinite products cancel and the right side is the 1phi1 alone.
            Real rhs_c = phi_c.value.re;
            worst = std::max(worst, abs(lhs_c - rhs_c));
        }
        out.push_back(make_check("functions.hahn_exton_bessel_route", worst, tol));
    }
    return out;
}

CheckList verify_polynomials(const QContext& ctx, std::uint64_t seed) {
    CheckList out;
    RandomGrid rng(seed);

    {
        bool ok = true;
        for (long n = 0; n <= 25 && ok; ++n) {
            ok = (fib_poly(n, FibBase::q) == fib_poly_recurrence(n, FibBase::q)) &&
                 (fib_poly(n, FibBase::q_inverse) == fib_poly_recurrence(n, FibBase::q_inverse)) &&
                 (T_poly(n, FibBase::q) == T_poly_recurrence(n, FibBase::q)) &&
                 (T_poly(n, FibBase::q_inverse) == T_poly_recurrence(n, FibBase::q_inverse));
        }
        out.push_back(make_bool_check("polynomials.explicit_equals_recurrence_n_le_25", ok));
    }

    {
        bool ok = true;
        for (long n = 1; n <= 20 && ok; ++n) {
            ok = fib_poly(n, FibBase::q).degree() == n - 1 && T_poly(n, FibBase::q).degree() == n &&
                 P_poly(n).degree() == n && P_poly(n).even_odd_parity_matches(n);
        }
        out.push_back(make_bool_check("polynomials.degree_and_parity", ok));
    }

    {
        bool ok = true;
        for (long n = 0; n <= 15 && ok; ++n) {
            XPolyExact monic = P_poly(n);
            monic.scale(LaurentPolyQ::q_power(-n * (n - 1)));  // q^{-n(n-1)/4}
            ok = (monic == T_poly(n, FibBase::q_inverse));
        }
        out.push_back(make_bool_check("polynomials.monic_P_equals_T_inverse_base_n_le_15", ok));
    }

    {
        bool ok = true;
        for (long n = 0; n <= 12 && ok; ++n) ok = symmetry_check(n);
        out.push_back(make_bool_check("polynomials.base_symmetry_n_le_12", ok));
    }

    // substitution engine round trip
    {
        bool ok = true;
        for (long n = 1; n <= 10 && ok; ++n) {
            XPolyExact p = P_poly(n);
            ok = (p.subst_x_qpow(3).subst_x_qpow(-3) == p);
        }
        out.push_back(make_bool_check("polynomials.substitution_round_trip", ok));
    }

    // frakF against the tridiagonal determinant and the fundamental identity
    {
        Real worst(0);
        Workspace ws = ctx.base_workspace();
        for (long n = 1; n <= 8; ++n) {
            std::vector<Complex> t;
            for (long i = 0; i < n; ++i)
                t.push_back(ws.up(Complex(rng.uniform(-2, 2), rng.uniform(-2, 2))));
            // determinant oracle: Gaussian elimination on the tridiagonal
            // matrix with unit diagonal and t_i off-diagonal
            std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n, Complex(Real(0))));
            for (long i = 0; i < n; ++i) {
                m[i][i] = Complex(Real(1));
                if (i + 1 < n) {
                    m[i][i + 1] = ws.up(t[i]);
                    m[i + 1][i] = ws.up(t[i + 1]);
                }
            }
            Complex det(ws.up(Real(1)));
            for (long col = 0; col < n; ++col) {
                long piv = -1;
                for (long row = col; row < n; ++row)
                    if (!m[row][col].is_zero()) {
                        piv = row;
                        break;
                    }
                if (piv < 0) {
                    det = Complex(Real(0));
                    break;
                }
                if (piv != col) {
                    std::swap(m[piv], m[col]);
                    det = -det;
                }
                det *= m[col][col];
                for (long row = col + 1; row < n; ++row) {
                    if (m[row][col].is_zero()) continue;
                    Complex f = m[row][col] / m[col][col];
                    for (long c2 = col; c2 < n; ++c2) m[row][c2] -= f * m[col][c2];
                }
            }
            worst = std::max(worst, abs_val(frakF(t) - det));
        }
        out.push_back(
            make_check("polynomials.frakF_determinant_oracle_n_le_8", worst,
                       pow2(-ctx.precision_bits() / 2)));

        // F(x_1..x_n) F(x_2..x_m) - F(x_1..x_m) F(x_2..x_n)
        //   = (prod_{j<=n} x_j x_{j+1}) F(x_{n+2}..x_m)
        Real worst_f(0);
        for (int trial = 0; trial < 10; ++trial) {
            long m_len = 3 + static_cast<long>(trial % 6);
            long n_len = 1 + static_cast<long>(trial % (m_len - 1));
            std::vector<Complex> xs;
            for (long i = 0; i < m_len + 1; ++i)
                xs.push_back(ws.up(Complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))));
            auto seg = [&](long from, long to) {  // 1-based inclusive
                std::vector<Complex> s;
                for (long i = from; i <= to; ++i) s.push_back(xs[i - 1]);
                return s;
            };
            Complex lhs = frakF(seg(1, n_len)) * frakF(seg(2, m_len)) -
                          frakF(seg(1, m_len)) * frakF(seg(2, n_len));
            Complex prod(Real(1));
            for (long j = 1; j <= n_len; ++j) prod *= xs[j - 1] * xs[j];
            Complex rhs = prod * frakF(seg(n_len + 2, m_len));
            worst_f = std::max(worst_f, abs_val(lhs - rhs));
        }
        out.push_back(make_check("polynomials.frakF_fundamental_identity", worst_f,
                                 pow2(-ctx.precision_bits() / 2)));
    }

    // indeterminacy criterion: partial sums of P_n(0)^2 + Q_n(0)^2 increase
    // to 2/(1-q) = (1+q)/(1-q) + 1 and match the geometric closed form
    {
        bool ok = true;
        LaurentPolyQ partial;
        LaurentPolyQ geom;  // sum_{j<=K} q^j (P even) + (Q odd)
        for (long n = 0; n <= 24 && ok; ++n) {
            LaurentPolyQ p0 = P_poly(n).coeff(0);
            LaurentPolyQ qq0 = Q_poly(n).coeff(0);
            partial += p0 * p0 + qq0 * qq0;
            if (n % 2 == 0) geom += LaurentPolyQ::q_power(4 * (n / 2), Int(n == 0 ? 1 : 2));
            ok = (partial == geom);
        }
        out.push_back(make_bool_check("polynomials.indeterminacy_partial_sums_exact", ok));
    }

    // residual identity suites at the context q
    {
        Real worst(0);
        bool bounded = true;
        for (long n : {0L, 1L, 2L, 5L, 8L}) {
            Complex x(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5));
            ResidualReport r = wronskian_repr_check(n, x, ctx);
            worst = std::max(worst, r.residual);
            bounded = bounded && r.within_bound();
        }
        out.push_back(make_check("polynomials.wronskian_representation", worst,
                                 pow2(-ctx.precision_bits() + 32),
                                 bounded ? "" : "residual exceeded combined bound"));
    }
    {
        Real worst(0);
        for (long n : {0L, 1L, 3L, 6L}) {
            Real x = rng.uniform(-1.5, 1.5);
            auto [odd, even] = hyperbolic_repr_check(n, x, ctx);
            worst = std::max({worst, odd.residual, even.residual});
        }
        out.push_back(make_check("polynomials.hyperbolic_representations", worst,
                                 pow2(-ctx.precision_bits() + 32)));
    }
    {
        Real worst(0);
        for (long n : {0L, 1L, 2L, 4L, 7L}) {
            Real x = rng.uniform(-1.5, 1.5);
            auto [odd, even] = terminating_3phi3_check(n, x, ctx);
            worst = std::max({worst, odd.residual, even.residual});
        }
        out.push_back(make_check("polynomials.terminating_3phi3_forms", worst,
                                 pow2(-ctx.precision_bits() + 32)));
    }
    {
        Real worst(0);
        for (auto rel : {Prop35::i, Prop35::ii, Prop35::iii, Prop35::iv, Prop35::v}) {
            for (long n : {0L, 2L, 5L}) {
                Real x = rng.uniform(-1.2, 1.2);
                worst = std::max(worst, prop35_check(rel, n, x, ctx).residual);
            }
        }
        out.push_back(
            make_check("polynomials.prop35_relations", worst, pow2(-ctx.precision_bits() + 32)));
    }
    {
        auto [analytic, chen] = generating_function_check(rng.uniform(0.5, 1.5),
                                                          rng.uniform(0.2, 0.7), 60, ctx);
        out.push_back(make_check("polynomials.generating_function_analytic", analytic.residual,
                                 pow2(-ctx.precision_bits() + 48)));
        out.push_back(make_check("polynomials.generating_function_chen_ismail", chen.residual,
                                 pow2(-ctx.precision_bits() + 48)));
    }
    {
        // V(s) = 1 - s(x - s) V(qs) for the 2phi2 side
        Real worst(0);
        Workspace ws = ctx.base_workspace();
        for (int i = 0; i < 6; ++i) {
            Real x = rng.uniform(0.4, 1.6);
            Real s = rng.uniform(-1.2, 1.2);
            auto V = [&](const Real& sv) {
                HypergeometricSpec gf;
                gf.upper = {QParam::qpow(4), QParam(Complex(sv / x), 0)};
                gf.lower = {QParam::zero(), QParam::zero()};
                gf.argument = QParam(Complex(sv * x), 0);
                return eval_phi(gf, ctx);
            };
            SeriesValue lhs = V(s);
            SeriesValue rhs =
                sv_exact(Complex(Real(1))) -
                sv_value(Complex(ws.up(s) * (ws.up(x) - ws.up(s)))) * V(ctx.scale_q_quarter(s, 4));
            worst = std::max(worst, abs_val(lhs.value - rhs.value));
        }
        out.push_back(make_check("polynomials.generating_function_q_difference", worst,
                                 pow2(-ctx.precision_bits() + 32)));
    }
    return out;
}

CheckList verify_cassini(const QContext& ctx) {
    (void)ctx;
    CheckList out;
    bool ok = true;
    long pairs = 0;
    for (long m = 0; m <= 10 && ok; ++m)
        for (long n = 0; n <= m && ok; ++n) {
            ok = cassini_check(m, n);
            ++pairs;
        }
    out.push_back(make_bool_check("cassini.exact_sweep_n_le_m_le_10", ok,
                                  std::to_string(pairs) + " (m,n) pairs"));
    return out;
}

CheckList verify_nevanlinna(const QContext& ctx, std::uint64_t seed) {
    CheckList out;
    RandomGrid rng(seed);
    Workspace ws = ctx.base_workspace();

    {
        Real worst(0);
        for (int i = 0; i < 100; ++i) {
            Complex z(rng.uniform(-3, 3), rng.uniform(-3, 3));
            NevanlinnaQuad f = eval_ABCD(z, ctx);
            SeriesValue det = f.A * f.D - f.B * f.C;
            worst = std::max(worst, abs_val(det.value - Complex(Real(1))));
        }
        out.push_back(make_check("nevanlinna.AD_minus_BC_equals_1", worst,
                                 pow2(-ctx.precision_bits() + 24)));
    }

    {
        // structure A(z) = q^{-1/2} D(q^{1/2} z)
        Real worst(0);
        for (int i = 0; i < 10; ++i) {
            Real z = rng.uniform(-2, 2);
            NevanlinnaQuad f = eval_ABCD(Complex(z), ctx);
            NevanlinnaQuad g = eval_ABCD(Complex(ctx.scale_q_quarter(z, 2)), ctx);
            worst = std::max(worst, abs_val(f.A.value - Complex(ws.qpow4(-2)) * g.D.value));
        }
        out.push_back(make_check("nevanlinna.A_equals_scaled_D", worst,
                                 pow2(-ctx.precision_bits() + 24)));
    }

    {
        // approximants: B_{n+1}(0) = -1, A_{n+1}(0) = 0, convergence at z = 1
        bool exact_ok = true;
        for (long n = 1; n <= 30; ++n) {
            auto abcd = approx_ABCD(n, Real(0), ctx);
            exact_ok = exact_ok && abs(abcd[1] + 1) < pow2(-ctx.precision_bits()) &&
                       abs(abcd[0]) < pow2(-ctx.precision_bits());
        }
        out.push_back(make_bool_check("nevanlinna.approximants_at_origin", exact_ok));

        NevanlinnaQuad lim = eval_ABCD(Complex(Real(1)), ctx);
        Real prev_res(-1);
        bool shrinking = true;
        Real res40(0);
        for (long n : {20L, 30L, 40L}) {
            auto abcd = approx_ABCD(n, Real(1), ctx);
            Real res = abs(abcd[3] - lim.D.value.re);
            if (prev_res >= 0 && res > prev_res) shrinking = false;
            prev_res = res;
            res40 = res;
        }
        out.push_back(make_check("nevanlinna.approximant_D_converges", res40, Real(1) / 100000,
                                 shrinking ? "monotone" : "non-monotone decay"));
    }

    {
        // kernel three paths + symmetry
        Real worst(0);
        for (int i = 0; i < 20; ++i) {
            Real u = rng.nonzero(2), v = rng.nonzero(2);
            if (u == v) continue;
            SeriesValue closed = kernel(Complex(u), Complex(v), ctx);
            SeriesValue swapped = kernel(Complex(v), Complex(u), ctx);
            Real partial = kernel_partial_sum(u, v, 200, ctx);
            SeriesValue bd = kernel_bd(u, v, ctx);
            worst = std::max({worst, abs(closed.value.re - partial),
                              abs_val(closed.value - bd.value),
                              abs_val(closed.value - swapped.value)});
        }
        out.push_back(make_check("nevanlinna.kernel_three_paths", worst, pow2(-160)));
    }

    {
        // diagonal kernel: 3phi3 vs derivative path vs partial sums; positivity
        Real worst(0);
        bool positive = true;
        for (int i = 0; i < 12; ++i) {
            Real u = rng.uniform(-2.5, 2.5);
            SeriesValue kd = kernel_diag(u, ctx);
            SeriesValue dp = kernel_diag_derivative_path(u, ctx);
            Real partial = kernel_partial_sum(u, u, 220, ctx);
            worst = std::max({worst, abs_val(kd.value - dp.value), abs(kd.value.re - partial)});
            positive = positive && kd.value.re > 0;
        }
        out.push_back(make_check("nevanlinna.kernel_diag_paths", worst, pow2(-160),
                                 positive ? "positive" : "positivity violated"));
    }

    {
        // f_u two-path agreement away from the axes
        Real s1 = first_sine_zero(ctx);
        Real worst(0);
        for (int i = 0; i < 8; ++i) {
            Real u = Real(1) / 2 * s1;
            Real z = rng.nonzero(2.5);
            SeriesValue direct = f_u(z, u, ctx);
            SeriesValue closed = f_u_3phi3(z, u, ctx);
            worst = std::max(worst, abs_val(direct.value - closed.value));
        }
        out.push_back(make_check("nevanlinna.f_u_two_paths", worst, pow2(-160)));
    }

    {
        // ac density three paths at beta = 0, gamma = q^{1/4}; positivity grid
        ACMeasureSpec spec;
        spec.beta = Real(0);
        spec.gamma = ws.q14;
        Real worst(0);
        bool positive = true;
        for (int i = 0; i < 12; ++i) {
            Real x = rng.uniform(-4, 4);
            SeriesValue a = ac_density(x, spec, ctx);
            SeriesValue b = ac_density_E_path(x, ctx);
            SeriesValue c = ac_density_2phi2_path(x, ctx);
            worst = std::max({worst, abs(a.value.re - b.value.re), abs(a.value.re - c.value.re)});
            positive = positive && a.value.re > 0;
        }
        out.push_back(make_check("nevanlinna.ac_density_three_paths", worst, pow2(-160),
                                 positive ? "positive" : "positivity violated"));
    }
    return out;
}

CheckList verify_orthogonality_suite(const QContext& ctx, const std::optional<MeasureParam>& param,
                                     long n_max, long count, const Real& tol) {
    CheckList out;
    Workspace ws = ctx.base_workspace();

    std::vector<std::pair<std::string, DiscreteMeasure>> measures;
    if (param) {
        measures.emplace_back("parametrized", build_measure(*param, count, ctx));
    } else {
        measures.emplace_back("sine", sine_measure(count, ctx));
        measures.emplace_back("cosine", cosine_measure(count, ctx));
    }

    for (auto& [name, mu] : measures) {
        Real norm = abs(mu.total_mass() - 1);
        out.push_back(make_check("orthogonality." + name + ".normalization", norm,
                                 std::max(tol, mu.truncation_bound * 2)));
        auto res = verify_orthogonality(mu, n_max, ctx, tol);
        out.push_back(
            make_check("orthogonality." + name + ".gram_residual", matrix_max(res), tol));

        // rho(x) * K(x,x) = 1 at the support points
        Real worst(0);
        for (size_t i = 0; i < mu.support.size(); i += std::max<size_t>(1, mu.support.size() / 6)) {
            SeriesValue kd = kernel_diag(mu.support[i], ctx);
            worst = std::max(worst, abs(ws.up(mu.masses[i]) * kd.value.re - 1));
        }
        out.push_back(make_check("orthogonality." + name + ".mass_kernel_reciprocal", worst,
                                 pow2(-ctx.precision_bits() / 2)));
    }
    return out;
}

CheckList verify_moments_suite(const QContext& ctx, long k_max) {
    CheckList out;
    Workspace ws = ctx.base_workspace();
    JacobiOperator op{k_max / 2 + 2};
    std::vector<LaurentPolyQ> oracle = jacobi_moments_exact(op, k_max);

    // hand values: m_0 = 1, m_1 = 0, m_2 = 1, m_4 = 1 + q^{-1}
    bool hand_ok = oracle[0] == LaurentPolyQ::one() && oracle[1].is_zero() &&
                   (k_max < 2 || oracle[2] == LaurentPolyQ::one());
    if (k_max >= 4) {
        LaurentPolyQ m4 = LaurentPolyQ::one() + LaurentPolyQ::q_power(-4);
        hand_ok = hand_ok && oracle[4] == m4;
    }
    out.push_back(make_bool_check("moments.jacobi_oracle_hand_values", hand_ok));

    DiscreteMeasure mu = sine_measure(40, ctx);
    std::vector<Real> mm = moments(mu, k_max, ctx);
    Real worst(0);
    for (long k = 0; k <= k_max; ++k) {
        Real target = oracle[k].is_zero() ? ws.up(Real(0)) : oracle[k].eval(ws);
        Real scale = std::max(Real(1), abs(target));
        worst = std::max(worst, Real(abs(mm[k] - target) / scale));
    }
    out.push_back(make_check("moments.sine_measure_matches_oracle", worst, pow2(-40)));
    return out;
}

CheckList verify_aq(const QContext& ctx, long n_max, long count) {
    CheckList out;
    auto res = aq_orthogonality_check(n_max, count, ctx);
    // the omitted tail of the mass sum limits the attainable residual
    out.push_back(make_check("aq.orthogonality_residual", matrix_max(res), Real(1) / 100000000));
    Real st1 = aq_stieltjes_residual(Complex(Real(1) / 10), count, ctx);
    Real st2 = aq_stieltjes_residual(Complex(Real(0), Real(1) / 4), count, ctx);
    out.push_back(make_check("aq.stieltjes_transform", std::max(st1, st2), Real(1) / 100000000));
    return out;
}

}  // namespace qmoment
