#pragma once

#include <algorithm>
#include <utility>

#include "qmoment/numeric.hpp"

namespace qmoment {

// Numeric value of a truncated series/product together with a bound on the
// truncation remainder, a bound on accumulated rounding noise, and the term
// count.  tail_bound is exactly 0 for terminating series.
struct SeriesValue {
    Complex value;
    Real tail_bound = Real(0);
    Real round_off = Real(0);
    long terms_used = 0;

    Real error() const { return tail_bound + round_off; }
    Real real_value() const { return value.re; }

    // Certified sign of the real part: +1/-1 when |value| provably dominates
    // the combined error, 0 when undecidable at the evaluated precision.
    int certified_sign() const {
        Real e = error();
        if (value.re > e) return 1;
        if (value.re < -e) return -1;
        return 0;
    }
};

// One summation attempt at a fixed working precision.
template <class T>
struct Attempted {
    T value{};
    Real tail = Real(0);
    long terms = 0;
    long noise_exp = kZeroExp;  // log2 bound on rounding noise at this precision
    bool converged = false;
};

// Sums term0 * prod ratio(0..n-1) with the three-consecutive-small-terms
// stopping rule; the tail is bounded geometrically once the observed term
// ratios have dropped below 1/2.  `exact_terms >= 0` forces a terminating
// series: exactly that many terms, tail exactly 0.
template <class T, class Ratio>
Attempted<T> sum_ratio_series(T term0, Ratio&& ratio, const Workspace& ws, long exact_terms = -1) {
    Attempted<T> out;
    T term = std::move(term0);
    T sum = term;
    long max_exp = exp_of(term);
    long terms = 1;
    int smalls = qmoment::is_zero(term) ? 1 : 0;
    Real rmag[3] = {Real(0), Real(0), Real(0)};
    int rcount = 0;
    const Real one = ws.up(Real(1));

    for (long n = 0;; ++n) {
        if (exact_terms >= 0 && terms >= exact_terms) {
            out.converged = true;
            break;
        }
        if (terms >= ws.max_terms) {
            out.converged = false;
            break;
        }
        T r = ratio(n);
        term *= r;
        ++terms;
        sum += term;
        max_exp = std::max(max_exp, exp_of(term));

        Real aterm = abs_val(term);
        bool zero_term = (aterm == 0);
        bool small = zero_term || aterm <= ws.rel_tol * abs_val(sum);
        smalls = small ? smalls + 1 : 0;
        rmag[rcount % 3] = abs_val(r);
        ++rcount;

        if (exact_terms < 0 && smalls >= 3) {
            if (zero_term) {
                out.converged = true;
                break;
            }
            // geometric majorant from the observed decay (the ratios of every
            // series here are eventually decreasing, so the recent maximum
            // dominates the remaining ones)
            Real rmax = std::max({rmag[0], rmag[1], rmag[2]});
            if (rmax < one) {
                out.tail = aterm * rmax / (1 - rmax);
                out.converged = true;
                break;
            }
        }
    }
    out.value = std::move(sum);
    out.terms = terms;
    out.noise_exp =
        (max_exp == kZeroExp) ? kZeroExp : max_exp + ceil_log2(terms + 1) + 2 - ws.prec_bits;
    return out;
}

enum class StopRule {
    value_accurate,  // boost until noise is below 2^-precision_bits relative
    sign_certified,  // stop as soon as |value| clearly dominates the error
};

inline constexpr long kGuardBits = 64;
inline constexpr long kMaxBoostBits = 1L << 18;

// Runs an evaluation attempt, boosting the working precision until the
// rounding noise is negligible against the value (cancellation inside q-series
// can exceed any fixed precision; the first attempt measures it, the second
// normally lands).
template <class T, class Attempt>
SeriesValue run_series(const QContext& ctx, Attempt&& attempt, const char* what,
                       StopRule rule = StopRule::value_accurate) {
    long p = ctx.precision_bits() + kGuardBits;
    for (int round = 0;; ++round) {
        Workspace ws = ctx.workspace(p);
        Attempted<T> out = attempt(ws);
        if (!out.converged) throw NonConvergence(what, out.terms);

        Real av = abs_val(out.value);
        long sig_exp = std::max(exp_of(av), exp_of(out.tail));
        bool ok;
        if (out.noise_exp == kZeroExp) {
            ok = true;
        } else if (sig_exp == kZeroExp) {
            ok = false;  // value indistinguishable from noise
        } else if (rule == StopRule::value_accurate) {
            ok = out.noise_exp <= sig_exp - ctx.precision_bits();
        } else {
            ok = out.noise_exp <= sig_exp - 8;
        }
        if (ok || round >= 8 || p >= kMaxBoostBits) {
            SeriesValue sv;
            sv.value = to_complex(out.value);
            sv.tail_bound = out.tail;
            sv.round_off = (out.noise_exp == kZeroExp) ? Real(0) : pow2(out.noise_exp);
            sv.terms_used = out.terms;
            return sv;
        }
        long want = (sig_exp == kZeroExp)
                        ? p + ctx.precision_bits() + kGuardBits
                        : out.noise_exp - sig_exp + p + ctx.precision_bits() + kGuardBits;
        p = std::min(std::max(want, p + kGuardBits), kMaxBoostBits);
    }
}

// --- error-propagating arithmetic on SeriesValue -----------------------------
//
// Combined values fold everything into tail_bound; the tail/round split is
// only meaningful for raw series evaluations.

inline SeriesValue sv_exact(Complex v) {
    SeriesValue sv;
    sv.value = std::move(v);
    return sv;
}

inline long value_prec(const Complex& v) {
    if (v.im == 0) return prec_of(v.re);
    if (v.re == 0) return prec_of(v.im);
    return std::min(prec_of(v.re), prec_of(v.im));
}

// A computed scalar carrying only its own rounding dust.
inline SeriesValue sv_value(Complex v) {
    SeriesValue sv;
    sv.value = std::move(v);
    long e = exp_of(sv.value);
    if (e != kZeroExp) sv.round_off = pow2(e - value_prec(sv.value) + 3);
    return sv;
}

inline SeriesValue operator+(const SeriesValue& a, const SeriesValue& b) {
    SeriesValue sv;
    sv.value = a.value + b.value;
    sv.tail_bound = a.error() + b.error();
    sv.terms_used = std::max(a.terms_used, b.terms_used);
    return sv;
}

inline SeriesValue operator-(const SeriesValue& a, const SeriesValue& b) {
    SeriesValue sv;
    sv.value = a.value - b.value;
    sv.tail_bound = a.error() + b.error();
    sv.terms_used = std::max(a.terms_used, b.terms_used);
    return sv;
}

inline SeriesValue operator-(const SeriesValue& a) {
    SeriesValue sv = a;
    sv.value = -sv.value;
    return sv;
}

inline SeriesValue operator*(const SeriesValue& a, const SeriesValue& b) {
    SeriesValue sv;
    sv.value = a.value * b.value;
    Real ea = a.error(), eb = b.error();
    sv.tail_bound = abs_val(a.value) * eb + abs_val(b.value) * ea + ea * eb;
    long e = exp_of(sv.value);
    if (e != kZeroExp) sv.tail_bound += pow2(e - value_prec(sv.value) + 3);
    sv.terms_used = std::max(a.terms_used, b.terms_used);
    return sv;
}

inline SeriesValue operator*(const Complex& c, const SeriesValue& a) {
    SeriesValue sv;
    sv.value = c * a.value;
    sv.tail_bound = abs_val(c) * a.error();
    sv.terms_used = a.terms_used;
    return sv;
}

inline SeriesValue operator*(const Real& c, const SeriesValue& a) { return Complex(c) * a; }

}  // namespace qmoment
