#include "qmoment/rootfinder.hpp"

#include <algorithm>

namespace qmoment {

namespace {

struct SignedEval {
    int sign = 0;  // 0 = not certified
    Real magnitude;
    Real bound;
};

SignedEval certified_sign(const EntireFunctionId& f, int dir, const Real& x,
                          const QContext& ctx) {
    SeriesValue sv = eval_entire(f, dir < 0 ? Real(-x) : x, ctx, StopRule::sign_certified);
    SignedEval se;
    se.magnitude = abs(sv.value.re);
    se.bound = sv.error();
    se.sign = sv.certified_sign();
    return se;
}

// Bisection to the width contract.  lo/hi signs are already certified.
CertifiedZero refine(const EntireFunctionId& f, int dir, Real lo, Real hi, int slo, int shi,
                     const QContext& ctx) {
    const long bits = ctx.precision_bits();
    // enough working width that every midpoint of the dyadic subdivision is
    // exactly representable
    long exp_hint = std::max(exp_of(hi), 1L);
    long point_bits = bits / 2 + exp_hint + 96;
    lo = upsized(lo, point_bits);
    hi = upsized(hi, point_bits);
    Real target = pow2(-bits / 2) * std::max(Real(1), abs(hi));

    while (hi - lo > target) {
        Real width = hi - lo;
        bool placed = false;
        // midpoint first, then slightly off-center splits if the midpoint
        // sign cannot be certified (it may sit too close to the zero)
        for (int attempt = 0; attempt < 4 && !placed; ++attempt) {
            static const int num[4] = {16, 17, 15, 13};
            Real mid = lo + width * num[attempt] / 32;
            SignedEval se = certified_sign(f, dir, mid, ctx);
            if (se.sign == 0) continue;
            if (se.sign == slo) {
                lo = mid;
            } else {
                hi = mid;
            }
            placed = true;
        }
        if (!placed)
            throw NonSimpleZeroSuspected("bisection: no certified sign change near " +
                                         decimal_string(lo, 20) + " for " + f.name());
    }
    CertifiedZero z;
    z.bracket = Bracket{lo, hi, slo, shi};
    z.location = lo + (hi - lo) / 2;
    if (dir < 0) {
        z.location = -z.location;
        z.bracket = Bracket{Real(-hi), Real(-lo), shi, slo};
    }
    return z;
}

}  // namespace

std::vector<Real> ZeroTable::locations() const {
    std::vector<Real> xs;
    xs.reserve(zeros.size());
    for (const auto& z : zeros) xs.push_back(z.location);
    return xs;
}

void tighten_bracket(CertifiedZero& z, const EntireFunctionId& f, const QContext& ctx,
                     const Real& width_target) {
    Real lo = z.bracket.lo, hi = z.bracket.hi;
    int slo = z.bracket.f_lo_sign, shi = z.bracket.f_hi_sign;
    if (hi - lo <= width_target) return;

    if (z.location == 0) {
        // origin zero of an odd combination: shrink symmetrically, the
        // midpoint is the zero itself and cannot be sign-certified
        while (hi - lo > width_target) {
            Real nlo = lo / 2, nhi = hi / 2;
            SeriesValue flo = eval_entire(f, nlo, ctx, StopRule::sign_certified);
            SeriesValue fhi = eval_entire(f, nhi, ctx, StopRule::sign_certified);
            if (flo.certified_sign() != slo || fhi.certified_sign() != shi)
                throw NonSimpleZeroSuspected("tighten_bracket: origin bracket lost its signs");
            lo = nlo;
            hi = nhi;
        }
        z.bracket.lo = lo;
        z.bracket.hi = hi;
        return;
    }

    long need_bits = -exp_of(width_target) + std::max(exp_of(abs(lo)), exp_of(abs(hi))) + 64;
    lo = upsized(lo, need_bits);
    hi = upsized(hi, need_bits);
    while (hi - lo > width_target) {
        Real width = hi - lo;
        bool placed = false;
        for (int attempt = 0; attempt < 4 && !placed; ++attempt) {
            static const int num[4] = {16, 17, 15, 13};
            Real mid = lo + width * num[attempt] / 32;
            SeriesValue sv = eval_entire(f, mid, ctx, StopRule::sign_certified);
            int sm = sv.certified_sign();
            if (sm == 0) continue;
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
            placed = true;
        }
        if (!placed)
            throw NonSimpleZeroSuspected("tighten_bracket: no certified split near " +
                                         decimal_string(lo, 20));
    }
    z.bracket.lo = lo;
    z.bracket.hi = hi;
    z.location = lo + (hi - lo) / 2;
}

std::vector<CertifiedZero> scan_positive_zeros(const EntireFunctionId& f, int dir, long count,
                                               const QContext& ctx, Real* search_bound) {
    std::vector<CertifiedZero> found;
    if (count <= 0) return found;
    Workspace ws = ctx.base_workspace();

    const Real ratio = ws.qpow4(-1);  // geometric grid with ratio q^{-1/4}
    const long max_cells = 20000;

    // Anchor the first cell at the origin; functions vanishing there (S_q,
    // and B t - D at t = 0) get a near-zero anchor where the leading series
    // term dominates instead.
    Real prev = Real(0);
    SignedEval sprev = certified_sign(f, dir, prev, ctx);
    if (sprev.sign == 0) {
        prev = ldexp(Real(1), -80) / 10;
        sprev = certified_sign(f, dir, prev, ctx);
    }
    if (sprev.sign == 0)
        throw BracketFailure("zero scan: cannot certify the sign at the scan anchor");

    Real cur = make_real(Rat(1, 10), ws.prec_bits);

    auto push_bracket = [&](const Real& a, const Real& b, int sa, int sb) {
        found.push_back(refine(f, dir, a, b, sa, sb, ctx));
    };

    for (long cell = 0; cell < max_cells && static_cast<long>(found.size()) < count; ++cell) {
        SignedEval scur = certified_sign(f, dir, cur, ctx);
        if (scur.sign == 0) {
            // grid point suspiciously close to a zero: nudge it
            cur += (cur - prev) / 64;
            scur = certified_sign(f, dir, cur, ctx);
            if (scur.sign == 0)
                throw BracketFailure("zero scan: sign not certifiable at grid point " +
                                     decimal_string(cur, 20));
        }
        if (scur.sign != sprev.sign) {
            push_bracket(prev, cur, sprev.sign, scur.sign);
        } else {
            // Same signs: probe the midpoint, and oversample when the
            // magnitude dips toward the certification bound (a close pair of
            // zeros or a near-touch would hide there).
            Real mid = prev + (cur - prev) / 2;
            SignedEval smid = certified_sign(f, dir, mid, ctx);
            if (smid.sign != 0 && smid.sign != scur.sign) {
                push_bracket(prev, mid, sprev.sign, smid.sign);
                if (static_cast<long>(found.size()) < count)
                    push_bracket(mid, cur, smid.sign, scur.sign);
            } else {
                Real dip = std::min(std::min(sprev.magnitude, scur.magnitude), smid.magnitude);
                Real guard = std::max(std::max(sprev.bound, scur.bound), smid.bound);
                if (dip < 10 * guard) {
                    Real a = prev;
                    SignedEval sa = sprev;
                    for (int j = 1; j <= 8 && static_cast<long>(found.size()) < count; ++j) {
                        Real b = prev + (cur - prev) * j / 8;
                        SignedEval sb = certified_sign(f, dir, b, ctx);
                        if (sb.sign == 0)
                            throw BracketFailure("zero scan: dip without certifiable sign in [" +
                                                 decimal_string(a, 20) + ", " +
                                                 decimal_string(b, 20) + "]");
                        if (sb.sign != sa.sign) push_bracket(a, b, sa.sign, sb.sign);
                        a = b;
                        sa = sb;
                    }
                }
            }
        }
        prev = cur;
        sprev = scur;
        cur = cur * ratio;
    }
    if (static_cast<long>(found.size()) < count)
        throw BracketFailure("zero scan: grid budget exhausted before finding " +
                             std::to_string(count) + " zeros");
    if (search_bound) *search_bound = prev;
    return found;
}

ZeroTable find_zeros(const EntireFunctionId& f, long count, const QContext& ctx) {
    if (count < 1) throw DomainError("find_zeros: count must be >= 1");
    switch (f.tag) {
        case EntireFunctionId::Tag::Sq:
        case EntireFunctionId::Tag::Cq:
        case EntireFunctionId::Tag::Aq:
        case EntireFunctionId::Tag::Fu:
        case EntireFunctionId::Tag::BtMinusD:
            break;
        default:
            throw DomainError("find_zeros: unsupported function " + f.name());
    }

    ZeroTable table;
    table.function = f;
    table.q = ctx.q_exact();
    table.requested_count = count;
    table.precision_bits = ctx.precision_bits();

    const bool two_sided = (f.tag == EntireFunctionId::Tag::Fu ||
                            f.tag == EntireFunctionId::Tag::BtMinusD);
    if (!two_sided) {
        table.zeros = scan_positive_zeros(f, +1, count, ctx, &table.search_bound);
        return table;
    }

    std::vector<CertifiedZero> all;
    const bool has_origin =
        (f.tag == EntireFunctionId::Tag::BtMinusD && !f.t_infinite && f.t == 0);
    if (has_origin) {
        // D(0) = 0 analytically; certify the bracket around the origin from
        // the sign change of the odd function D, no bisection needed.
        Real w = pow2(-(ctx.precision_bits() / 2) - 1);
        SignedEval sl = certified_sign(f, +1, Real(-w), ctx);
        SignedEval sr = certified_sign(f, +1, w, ctx);
        if (sl.sign == 0 || sr.sign == 0 || sl.sign == sr.sign)
            throw BracketFailure("find_zeros: cannot certify the origin atom of D");
        CertifiedZero z;
        z.location = Real(0);
        z.bracket = Bracket{Real(-w), w, sl.sign, sr.sign};
        all.push_back(std::move(z));
    }
    long per_side = count / 2 + 3;
    Real bound_pos, bound_neg;
    auto pos = scan_positive_zeros(f, +1, per_side, ctx, &bound_pos);
    auto neg = scan_positive_zeros(f, -1, per_side, ctx, &bound_neg);
    all.insert(all.end(), pos.begin(), pos.end());
    all.insert(all.end(), neg.begin(), neg.end());
    std::sort(all.begin(), all.end(), [](const CertifiedZero& a, const CertifiedZero& b) {
        return abs(a.location) < abs(b.location);
    });
    if (static_cast<long>(all.size()) > count) all.resize(count);
    std::sort(all.begin(), all.end(), [](const CertifiedZero& a, const CertifiedZero& b) {
        return a.location < b.location;
    });
    table.zeros = std::move(all);
    table.search_bound = std::max(bound_pos, bound_neg);
    return table;
}

namespace {

bool brackets_disjoint(const CertifiedZero& x, const CertifiedZero& y) {
    return x.bracket.hi < y.bracket.lo || y.bracket.hi < x.bracket.lo;
}

}  // namespace

bool interlace_check(const ZeroTable& a_in, const ZeroTable& b_in) {
    if (a_in.q != b_in.q) throw DomainError("interlace_check: tables belong to different q");
    if (a_in.zeros.size() < 2 || b_in.zeros.size() < 2)
        throw InsufficientZeros("interlace_check: need at least two zeros in each table");

    ZeroTable a = a_in, b = b_in;  // brackets may need tightening
    QContext ctx(a.q, std::max(a.precision_bits, b.precision_bits));

    // Certified ordering requires disjoint brackets across the two tables.
    // The trigonometric ladders creep doubly exponentially close, so keep
    // splitting until every cross pair separates (the quadruple determinant
    // identity forbids actual coincidences).
    const bool same_fn = a.function.same_function(b.function);
    for (auto& za : a.zeros) {
        for (auto& zb : b.zeros) {
            // overlapping brackets of one and the same function mean the
            // same zero: strict interlacing fails outright
            if (same_fn && !brackets_disjoint(za, zb)) return false;
            for (int round = 0; !brackets_disjoint(za, zb); ++round) {
                if (round >= 60)
                    throw InsufficientZeros(
                        "interlace_check: could not certify separation near " +
                        decimal_string(za.location, 20));
                Real wa = za.bracket.hi - za.bracket.lo;
                Real wb = zb.bracket.hi - zb.bracket.lo;
                tighten_bracket(za, a.function, ctx, wa / 256);
                tighten_bracket(zb, b.function, ctx, wb / 256);
            }
        }
    }

    // Common covered range; outside it either table may simply not have been
    // scanned far enough.
    Real lo = std::max(a.zeros.front().location, b.zeros.front().location);
    Real hi = std::min(a.zeros.back().location, b.zeros.back().location);

    std::vector<Real> av, bv;
    for (const auto& z : a.zeros)
        if (z.location >= lo && z.location <= hi) av.push_back(z.location);
    for (const auto& z : b.zeros)
        if (z.location >= lo && z.location <= hi) bv.push_back(z.location);
    if (av.size() < 2 && bv.size() < 2)
        throw InsufficientZeros("interlace_check: covered ranges barely overlap");

    // every consecutive pair of a-zeros inside the window must enclose
    // exactly one b-zero, and vice versa
    for (size_t i = 0; i + 1 < av.size(); ++i) {
        long inside = 0;
        for (const auto& y : bv)
            if (y > av[i] && y < av[i + 1]) ++inside;
        if (inside != 1) return false;
    }
    for (size_t i = 0; i + 1 < bv.size(); ++i) {
        long inside = 0;
        for (const auto& y : av)
            if (y > bv[i] && y < bv[i + 1]) ++inside;
        if (inside != 1) return false;
    }
    return true;
}

}  // namespace qmoment
