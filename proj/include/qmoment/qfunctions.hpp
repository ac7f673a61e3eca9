#pragma once

#include <string>

#include "qmoment/qcore.hpp"

namespace qmoment {

// --- the paper's entire functions --------------------------------------------
//
// E(z)   = sum q^{n^2/4} z^n / (q;q)_n                  (= E_q^{(1/2)})
// S(z)   = sum (-1)^n q^{n(n+1)} z^{2n+1} / (q;q)_{2n+1}
// C(z)   = sum (-1)^n q^{n^2}   z^{2n}   / (q;q)_{2n}
// Sh(z)  = -i S(iz),  Ch(z) = C(iz)     (positive-term series, no complex detour)
// A(z)   = 0phi1(;0;q,-qz) = sum q^{n^2} (-z)^n / (q;q)_n

SeriesValue eval_E(const Complex& z, const QContext& ctx);
SeriesValue eval_Eq_alpha(const Real& alpha, const Complex& z, const QContext& ctx);

SeriesValue eval_Sq(const Real& z, const QContext& ctx);
SeriesValue eval_Sq(const Complex& z, const QContext& ctx);
SeriesValue eval_Cq(const Real& z, const QContext& ctx);
SeriesValue eval_Cq(const Complex& z, const QContext& ctx);
SeriesValue eval_Shq(const Real& z, const QContext& ctx);
SeriesValue eval_Shq(const Complex& z, const QContext& ctx);
SeriesValue eval_Chq(const Real& z, const QContext& ctx);
SeriesValue eval_Chq(const Complex& z, const QContext& ctx);
SeriesValue eval_Aq(const Complex& z, const QContext& ctx);

// Term-wise differentiated series (entire, same convergence regime).
SeriesValue eval_Sq_prime(const Real& z, const QContext& ctx);
SeriesValue eval_Cq_prime(const Real& z, const QContext& ctx);
SeriesValue eval_Aq_prime(const Complex& z, const QContext& ctx);

// Base-inversion evaluations, defined through the q <-> q^{-1} symmetry
// identities (every series stays in the 0 < q < 1 regime):
//   E_{1/q}(w)  =  E_q(-q^{1/2} w)
//   S_{1/q}(w)  = -q^{1/2} S_q(q^{1/2} w)
//   C_{1/q}(w)  =  C_q(q^{1/2} w)
SeriesValue eval_E_qinv(const Complex& w, const QContext& ctx);
SeriesValue eval_Sq_qinv(const Complex& w, const QContext& ctx);
SeriesValue eval_Cq_qinv(const Complex& w, const QContext& ctx);

// Closed 3phi3 right-hand side of the addition formula for
// E(u) E(-v); equals the direct product within combined bounds.  u, v != 0.
SeriesValue product_formula_rhs(const Complex& u, const Complex& v, const QContext& ctx);

// 3phi3 closed forms of C(u)C(v) + q^{1/2} S(u)S(v) and of
// S(u)C(v) - C(u)S(v).  u, v != 0.
SeriesValue trig_sum_formula(const Complex& u, const Complex& v, const QContext& ctx);
SeriesValue trig_diff_formula(const Complex& u, const Complex& v, const QContext& ctx);

// |E(ix)|^2 = C(x)^2 + q^{1/2} S(x)^2 as the 2phi2 with argument -x^2 q^{1/2}.
SeriesValue abs_E_sq(const Real& x, const QContext& ctx);

// Combination backing the N-extremal supports:
//   f_u(z) = C(q^{-1/2}z) C(u) + q^{1/2} S(q^{-1/2}z) S(u)
// and B(z)t - D(z) with B(z) = -C(q^{-1/2}z), D(z) = q^{1/2} S(q^{-1/2}z);
// t infinite means the function B alone.
SeriesValue fn_fu(const Real& z, const Real& u, const QContext& ctx);
SeriesValue fn_bt_minus_d(const Real& z, const Real& t, bool t_infinite, const QContext& ctx);

// --- named entire functions for the root finder and the CLI ------------------

struct EntireFunctionId {
    enum class Tag { Eq, EqAlpha, Sq, Cq, Shq, Chq, Aq, Fu, BtMinusD };
    Tag tag = Tag::Eq;
    Real alpha{0};
    Real u{0};
    Real t{0};
    bool t_infinite = false;

    static EntireFunctionId simple(Tag t);
    static EntireFunctionId eq_alpha(Real a);
    static EntireFunctionId fu(Real u);
    static EntireFunctionId bt_minus_d(Real t);
    static EntireFunctionId bt_infinity();

    bool same_function(const EntireFunctionId& o) const {
        return tag == o.tag && alpha == o.alpha && u == o.u && t == o.t &&
               t_infinite == o.t_infinite;
    }

    // Under z -> -z the function is even, odd, or neither (f_u, BtMinusD).
    enum class Symmetry { even, odd, none };
    Symmetry symmetry() const;

    std::string name() const;
};

SeriesValue eval_entire(const EntireFunctionId& f, const Real& x, const QContext& ctx,
                        StopRule rule = StopRule::value_accurate);

}  // namespace qmoment
