#include "qmoment/qcore.hpp"

#include <cmath>

namespace qmoment {

SeriesValue q_pochhammer(const Complex& a, const QContext& ctx, long n) {
    if (n != kPochInfinity && n < 0) throw DomainError("q_pochhammer: n must be >= 0 or infinity");
    if (n == 0) return sv_exact(Complex(1));

    auto attempt = [&](const Workspace& ws) {
        Attempted<Complex> out;
        Complex av = ws.up(a);
        Complex prod(ws.up(Real(1)));
        Real qk = ws.up(Real(1));  // q^k
        long max_exp = 0;
        long k = 0;
        for (;; ++k) {
            if (n != kPochInfinity && k >= n) {
                out.converged = true;
                break;
            }
            if (k >= ws.max_terms) {
                out.converged = false;
                break;
            }
            Complex factor = Complex(ws.up(Real(1))) - av * qk;
            prod *= factor;
            qk *= ws.q;
            max_exp = std::max(max_exp, exp_of(prod));
            if (prod.is_zero()) {  // a = q^{-m} hit exactly; product stays 0
                out.converged = true;
                ++k;
                break;
            }
            if (n == kPochInfinity) {
                // |update - 1| = |a| q^{k+1}; stop when below tolerance with a
                // geometric bound on the remaining factors.
                Real delta = abs_val(av) * qk;
                if (delta <= ws.rel_tol) {
                    Real s = delta / (1 - ws.q);
                    out.tail = abs_val(prod) * 2 * s;
                    out.converged = true;
                    ++k;
                    break;
                }
            }
        }
        out.value = std::move(prod);
        out.terms = k;
        out.noise_exp = max_exp + ceil_log2(2 * (k + 1)) + 2 - ws.prec_bits;
        return out;
    };
    return run_series<Complex>(ctx, attempt, "q_pochhammer");
}

LaurentPolyQ q_pochhammer_exact(long quarters, long c, long n) {
    LaurentPolyQ prod = LaurentPolyQ::one();
    for (long k = 0; k < n; ++k)
        prod = prod * (LaurentPolyQ::one() - LaurentPolyQ::q_power(quarters + 4 * k, Int(c)));
    return prod;
}

LaurentPolyQ q_binomial_exact(long n, long k) {
    if (k < 0 || n < 0 || k > n) throw DomainError("q_binomial: require 0 <= k <= n");
    if (k == 0 || k == n) return LaurentPolyQ::one();
    LaurentPolyQ num = q_pochhammer_exact(4, 1, n);
    LaurentPolyQ den = q_pochhammer_exact(4, 1, k) * q_pochhammer_exact(4, 1, n - k);
    auto quot = LaurentPolyQ::divide_exact(num, den);
    if (!quot) throw QError("q_binomial: nonzero remainder in exact division");
    return *quot;
}

Real q_binomial(long n, long k, const Workspace& ws) { return q_binomial_exact(n, k).eval(ws); }

std::optional<long> HypergeometricSpec::terminating_terms(const QContext& ctx) const {
    std::optional<long> best;
    for (const auto& p : upper) {
        // exact route: coeff == 1 and q_quarters = -m * base_quarters
        if (p.coeff == Complex(Real(1)) && p.q_quarters <= 0 &&
            p.q_quarters % base_quarters == 0) {
            long m = -p.q_quarters / base_quarters;
            if (!best || m + 1 < *best) best = m + 1;
            continue;
        }
        // numeric route (CLI-supplied parameters): positive real coeff close
        // to base^{-m} within 2^{-bits/2}
        if (p.coeff.is_real() && p.coeff.re > 0) {
            Workspace ws = ctx.workspace(ctx.precision_bits() + kGuardBits);
            Real val = p.value(ws).re;
            Real base = ws.qpow4(base_quarters);
            double lv = static_cast<double>(log(val));
            double lb = static_cast<double>(log(base));
            double md = -lv / lb;
            long m = std::lround(md);
            if (m >= 0 && std::abs(md - static_cast<double>(m)) < 0.4 && m < ctx.max_terms()) {
                Real target = ws.qpow4(-m * base_quarters);
                if (abs(val - target) <= target * pow2(-ctx.precision_bits() / 2)) {
                    if (!best || m + 1 < *best) best = m + 1;
                }
            }
        }
    }
    return best;
}

SeriesValue eval_phi(const HypergeometricSpec& spec, const QContext& ctx) {
    const long r = static_cast<long>(spec.upper.size());
    const long s = static_cast<long>(spec.lower.size());
    const long e = 1 + s - r;
    if (spec.base_quarters <= 0) throw DomainError("eval_phi: base must be a positive power");

    std::optional<long> nterms = spec.terminating_terms(ctx);

    // Pole guard: a lower parameter equal to base^{-m}, m >= 0, is fatal
    // unless the series terminates strictly earlier.
    for (const auto& p : spec.lower) {
        if (p.coeff == Complex(Real(1)) && p.q_quarters <= 0 &&
            p.q_quarters % spec.base_quarters == 0) {
            long m = -p.q_quarters / spec.base_quarters;
            if (!nterms || *nterms > m + 1)
                throw PoleInLowerParameter("eval_phi: lower parameter q^{-" + std::to_string(m) +
                                           "}");
        }
    }

    if (!nterms && e < 0)
        throw NonConvergence("eval_phi: divergent series (r > s+1, non-terminating)", 0);

    auto attempt = [&](const Workspace& ws) {
        const Complex one(ws.up(Real(1)));
        const Real base = ws.qpow4(spec.base_quarters);
        std::vector<Complex> ups, los;
        ups.reserve(spec.upper.size());
        los.reserve(spec.lower.size());
        for (const auto& p : spec.upper) ups.push_back(p.value(ws));
        for (const auto& p : spec.lower) los.push_back(p.value(ws));
        const Complex z = spec.argument.value(ws);

        Real bpn = ws.up(Real(1));  // base^n
        auto ratio = [&, e](long n) -> Complex {
            (void)n;
            Complex num = one;
            for (const auto& a : ups) num *= (one - a * bpn);
            Complex den = one - Complex(bpn * base);
            for (const auto& b : los) {
                Complex f = one - b * bpn;
                if (f.is_zero()) throw PoleInLowerParameter("eval_phi: vanishing denominator");
                den *= f;
            }
            Complex rr = (num / den) * z;
            if (e != 0) {
                Complex conv(-bpn);
                Complex cp = one;
                for (long j = 0; j < (e > 0 ? e : -e); ++j) cp *= conv;
                if (e < 0) cp = one / cp;
                rr *= cp;
            }
            bpn *= base;
            return rr;
        };
        return sum_ratio_series<Complex>(one, ratio, ws, nterms ? *nterms : -1);
    };

    if (!nterms && e == 0) {
        // radius of convergence 1
        Workspace ws0 = ctx.base_workspace();
        if (abs_val(spec.argument.value(ws0)) >= 1)
            throw NonConvergence("eval_phi: |z| >= 1 with r = s+1", 0);
    }
    return run_series<Complex>(ctx, attempt, "eval_phi");
}

}  // namespace qmoment
