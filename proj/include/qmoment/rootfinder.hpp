#pragma once

#include <vector>

#include "qmoment/qfunctions.hpp"

namespace qmoment {

// Certified sign-change interval: |f| exceeds the combined tail + rounding
// bound at both endpoints, with opposite signs.
struct Bracket {
    Real lo, hi;
    int f_lo_sign = 0;
    int f_hi_sign = 0;
};

struct CertifiedZero {
    Real location;  // midpoint of the final bracket
    Bracket bracket;
};

// Ordered certified real zeros of a named entire function.  For the
// symmetric functions (S_q odd, C_q even, A_q positive-zero) only positive
// zeros are stored; f_u and B t - D tables hold signed zeros ordered
// ascending (plus 0 for t = 0, where D vanishes analytically).
struct ZeroTable {
    EntireFunctionId function;
    Rat q;
    std::vector<CertifiedZero> zeros;
    long requested_count = 0;
    Real search_bound;
    long precision_bits = 256;  // construction record, for later re-refinement

    std::vector<Real> locations() const;
};

// First `count` positive zeros (S_q, C_q, A_q) or the `count` smallest zeros
// by absolute value (f_u, B t - D).  Each zero is refined by bisection to
// width <= 2^{-precision_bits/2} * max(1, |zero|), signs certified through
// the evaluation error bounds.
ZeroTable find_zeros(const EntireFunctionId& f, long count, const QContext& ctx);

// Strict interlacing over the common covered range: between consecutive
// zeros of `a` lies exactly one zero of `b`.  Brackets of nearly-touching
// zeros (the trigonometric ladders approach each other doubly exponentially)
// are re-refined until they separate.  Throws InsufficientZeros when the
// overlap cannot decide, DomainError when the tables disagree on q.
bool interlace_check(const ZeroTable& a, const ZeroTable& b);

// Continue bisection of an existing certified bracket down to the given
// width (an origin bracket of an odd function is shrunk symmetrically).
void tighten_bracket(CertifiedZero& z, const EntireFunctionId& f, const QContext& ctx,
                     const Real& width_target);

// Positive zeros only, ascending (internal building block shared by the
// measure constructors; scans f(dir * x) for x > 0).
std::vector<CertifiedZero> scan_positive_zeros(const EntireFunctionId& f, int dir, long count,
                                               const QContext& ctx, Real* search_bound = nullptr);

}  // namespace qmoment
