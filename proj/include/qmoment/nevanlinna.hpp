#pragma once

#include <array>
#include <vector>

#include "qmoment/qpolynomials.hpp"
#include "qmoment/rootfinder.hpp"

namespace qmoment {

// Nevanlinna quadruple in terms of the q-trigonometric functions:
//   A(z) = S(z)              C(z) = C(z)
//   B(z) = -C(q^{-1/2} z)    D(z) = q^{1/2} S(q^{-1/2} z)
// with A D - B C = 1 identically.
struct NevanlinnaQuad {
    SeriesValue A, B, C, D;
};

NevanlinnaQuad eval_ABCD(const Complex& z, const QContext& ctx);

// Degree-n Nevanlinna approximants built from the exact P/Q polynomials,
// e.g. A_{n+1}(z) = beta_n (Q_{n+1}(z) Q_n(0) - Q_{n+1}(0) Q_n(z)).
std::array<Real, 4> approx_ABCD(long n, const Real& z, const QContext& ctx);

// Derivatives of B and D by the term-wise differentiated series.
SeriesValue eval_B_prime(const Real& z, const QContext& ctx);
SeriesValue eval_D_prime(const Real& z, const QContext& ctx);

// Reproducing kernel K(u,v) = sum P_n(u) P_n(v).  The closed 3phi3 form is
// used when u v != 0; the partial-sum path serves the axes.
SeriesValue kernel(const Complex& u, const Complex& v, const QContext& ctx);
// (B(u)D(v) - D(u)B(v)) / (u - v); requires u != v.
SeriesValue kernel_bd(const Real& u, const Real& v, const QContext& ctx);
Real kernel_partial_sum(const Real& u, const Real& v, long terms, const QContext& ctx);

// K(u,u) = B'(u)D(u) - B(u)D'(u) = 1/(1-q) 3phi3[0,q,q; q^{3/2},-q^{3/2},-q; q, -u^2].
SeriesValue kernel_diag(const Real& u, const QContext& ctx);
SeriesValue kernel_diag_derivative_path(const Real& u, const QContext& ctx);

// First positive zero of S_q (upper end of the N-extremal parameter range).
Real first_sine_zero(const QContext& ctx);

// f_u with the domain contract u in [0, s_1(q)); the direct C/S combination
// is the primary path, the 3phi3 form is a cross-check (u, z != 0).
SeriesValue f_u(const Real& z, const Real& u, const QContext& ctx);
SeriesValue f_u_3phi3(const Real& z, const Real& u, const QContext& ctx);

struct MeasureParam {
    enum class Kind { U, T } kind = Kind::U;
    Real u{0};
    Real t{0};
    bool t_infinite = false;

    static MeasureParam from_u(Real u);
    static MeasureParam from_t(Real t);
    static MeasureParam t_infinity();
};

// Purely discrete N-extremal orthogonality measure, truncated to finitely
// many support points.  Masses are normalized so the measure integrates to 1
// and the orthogonality target is delta_{mn}; truncation_bound bounds the
// omitted total mass by geometric extrapolation of the trailing mass ratios.
struct DiscreteMeasure {
    Rat q;
    MeasureParam parameter;
    std::vector<Real> support;  // ascending
    std::vector<Real> masses;   // positive, same length
    Real truncation_bound;

    Real total_mass() const;
    Real max_abs_support() const;
};

// Measure with `count` certified support points per sign side (t = 0 adds
// the origin atom).  Masses are (1-q) / 3phi3[...](-lambda^2) = 1/K(l,l).
DiscreteMeasure build_measure(const MeasureParam& param, long count, const QContext& ctx);

// Special cases with masses written in terms of one trigonometric function
// and its own zeros only (t = 0 and t = infinity).
DiscreteMeasure sine_measure(long count, const QContext& ctx);
DiscreteMeasure cosine_measure(long count, const QContext& ctx);

struct ACMeasureSpec {
    Real beta{0};
    Real gamma{1};  // > 0
};

// Absolutely continuous measure density
//   (gamma/pi) ((beta B(x) - D(x))^2 + gamma^2 B(x)^2)^{-1}.
SeriesValue ac_density(const Real& x, const ACMeasureSpec& spec, const QContext& ctx);
// beta = 0, gamma = q^{1/4} cross-paths: |E(i q^{-1/2} x)|^{-2} / (q^{1/4} pi)
// and the reciprocal 2phi2 form.
SeriesValue ac_density_E_path(const Real& x, const QContext& ctx);
SeriesValue ac_density_2phi2_path(const Real& x, const QContext& ctx);

// |sum_x rho(x) P_n(x) P_m(x) - delta_{mn}| for n,m <= n_max.
std::vector<std::vector<Real>> verify_orthogonality(const DiscreteMeasure& mu, long n_max,
                                                    const QContext& ctx, const Real& tol);
std::vector<std::vector<Real>> verify_orthogonality(const ACMeasureSpec& spec, long n_max,
                                                    const QContext& ctx, const Real& tol);

std::vector<Real> moments(const DiscreteMeasure& mu, long k_max, const QContext& ctx);
std::vector<Real> moments(const ACMeasureSpec& spec, long k_max, const QContext& ctx);

// Moment oracle: m_k = (J^k)_{00} for the truncated Jacobi matrix with
// alpha_n = 0, beta_n = q^{-n/2}, exact in the quarter-exponent lattice.
struct JacobiOperator {
    long truncation_order;
};
std::vector<LaurentPolyQ> jacobi_moments_exact(const JacobiOperator& op, long k_max);
std::vector<Real> jacobi_moments(const JacobiOperator& op, long k_max, const QContext& ctx);

// Section-1 determinate-case orthogonality for T_n(x;q): residuals of
//   sum_j [A(q z_j) / (z_j A'(z_j))] T_n(+-y_j) T_m(+-y_j) + 2 q^{n(n-1)/2} d_{mn}
// with y_j = q^{-1/2} z_j^{-1/2} over the first `count` zeros z_j of A_q.
std::vector<std::vector<Real>> aq_orthogonality_check(long n_max, long count,
                                                      const QContext& ctx);
// Stieltjes transform of the same measure vs A(z^2)/A(q^{-1} z^2).
Real aq_stieltjes_residual(const Complex& z, long count, const QContext& ctx);

}  // namespace qmoment
