#pragma once

#include <utility>
#include <vector>

#include "qmoment/qfunctions.hpp"
#include "qmoment/xpoly.hpp"

namespace qmoment {

enum class FibBase { q, q_inverse };

// Carlitz q-Fibonacci polynomials by the explicit sum
//   phi_n(x;q)      = sum_{2k<n} [n-k-1, k]_q q^{k^2}       x^{n-2k-1}
//   phi_n(x;q^{-1}) = sum_{2k<n} [n-k-1, k]_q q^{k(k+1-n)}  x^{n-2k-1}
// with phi_0 = 0, phi_1 = 1.
XPolyExact fib_poly(long n, FibBase base);
// Same family built from phi_{n+1} = x phi_n + q^{+-(n-1)} phi_{n-1}.
XPolyExact fib_poly_recurrence(long n, FibBase base);

// T_n(x;q) = sum_{2k<=n} [n-k, k]_q (-1)^k q^{k(k-1)} x^{n-2k}, T_{-1} = 0,
// T_0 = 1; the (-i)^n q^{-n/2} prefactor of the definition cancels exactly.
XPolyExact T_poly(long n, FibBase base);
XPolyExact T_poly_recurrence(long n, FibBase base);  // T_{n+1} = x T_n - q^{+-(n-1)} T_{n-1}

// Orthogonal polynomials of the first and second kind (alpha_n = 0,
// beta_n = q^{-n/2}):
//   P_n(x;q) = sum_{2k<=n} (-1)^k [n-k, k]_q q^{n(n-1)/4 + k(k-n+1)} x^{n-2k}
//   Q_n(x;q) = P_{n-1}(q^{1/2} x; q),  Q_0 = 0.
XPolyExact P_poly(long n);  // n >= -1
XPolyExact Q_poly(long n);  // n >= 0

// phi_n(x;q) = q^{(n-1)^2/2} phi_n(q^{-(n-1)/2} x; q^{-1}) as exact canonical
// forms.
bool symmetry_check(long n);

// Tridiagonal-determinant function: F(empty) = 1, F(x_1..x_{k+1}) =
// F(x_1..x_k) - x_k x_{k+1} F(x_1..x_{k-1}).
Complex frakF(const std::vector<Complex>& entries);

// q-Euler-Cassini, exact in the quarter-exponent lattice; requires n <= m.
bool cassini_check(long m, long n);

struct ResidualReport {
    Real residual;
    Real bound;  // combined tail + rounding bound of the two evaluation paths
    bool within_bound() const { return residual <= bound; }
};

// phi_n(x;q^{-1}) = (1/2) q^{-(n-1)^2/4} (E(x)E(-q^{n/2}x) - (-1)^n E(-x)E(q^{n/2}x))
ResidualReport wronskian_repr_check(long n, const Complex& x, const QContext& ctx);

// {odd, even} hyperbolic representations of phi_{2n+1}, phi_{2n}.
std::pair<ResidualReport, ResidualReport> hyperbolic_repr_check(long n, const Real& x,
                                                                const QContext& ctx);

// {odd, even} terminating 3phi3 forms of phi_{2n+1}, phi_{2n}.
std::pair<ResidualReport, ResidualReport> terminating_3phi3_check(long n, const Real& x,
                                                                  const QContext& ctx);

enum class LimitKind { even_Sh, odd_Ch, P_even, P_odd };
// |q^{n(n-1)} phi_{2n}(x;q^{-1}) - Sh(x)| and friends; the residual is
// reported for any n, the limit value is the n -> infinity target.
Real limit_check(LimitKind kind, const Real& x, long n, const QContext& ctx);

enum class Prop35 { i, ii, iii, iv, v };
ResidualReport prop35_check(Prop35 relation, long n, const Real& x, const QContext& ctx);

// {analytic generating function vs 2phi2, P_n generating function vs the
// Chen-Ismail sum}; the second uses s as the variable t, |s| < q^{-1/4}.
std::pair<ResidualReport, ResidualReport> generating_function_check(const Real& x, const Real& s,
                                                                    long N, const QContext& ctx);

// Numeric P_n(x) for n = 0..n_max by the three-term recurrence
// P_{n+1} = q^{n/2} x P_n - q^{1/2} P_{n-1}.
std::vector<Real> p_values(const Real& x, long n_max, const Workspace& ws);
// Numeric T_n(x;q), T_{n+1} = x T_n - q^{n-1} T_{n-1}.
std::vector<Real> t_values(const Real& x, long n_max, const Workspace& ws);

}  // namespace qmoment
