#pragma once

#include <optional>
#include <vector>

#include "qmoment/laurent.hpp"
#include "qmoment/series.hpp"
#include "qmoment/xpoly.hpp"

namespace qmoment {

inline constexpr long kPochInfinity = -1;

// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); n = kPochInfinity for the
// convergent infinite product.
SeriesValue q_pochhammer(const Complex& a, const QContext& ctx, long n);

// Exact (c * q^{quarters/4}; q)_n as a Laurent polynomial.
LaurentPolyQ q_pochhammer_exact(long quarters, long c, long n);

// Gaussian binomial [n choose k]_q as an exact polynomial in q; the defining
// Pochhammer ratio is formed by exact polynomial division (zero remainder
// asserted).  DomainError when k > n.
LaurentPolyQ q_binomial_exact(long n, long k);
Real q_binomial(long n, long k, const Workspace& ws);

// Parameter of a basic hypergeometric series in the form coeff * q^{quarters/4}
// with q the context base.  Keeping the q-power symbolic makes terminating and
// pole detection exact and lets evaluations re-derive parameters at any
// boosted precision.
struct QParam {
    Complex coeff;
    long q_quarters = 0;

    QParam() : coeff(Real(0)) {}
    QParam(Complex c, long quarters = 0) : coeff(std::move(c)), q_quarters(quarters) {}

    static QParam zero() { return QParam(); }
    static QParam qpow(long quarters, Complex c = Complex(Real(1))) {
        return QParam(std::move(c), quarters);
    }

    Complex value(const Workspace& ws) const {
        if (coeff.is_zero()) return Complex(ws.up(Real(0)));
        return ws.up(coeff) * ws.qpow4(q_quarters);
    }
};

// r-phi-s specification following the Gasper-Rahman convention, including the
// [(-1)^n q^{n(n-1)/2}]^{1+s-r} factor.  The base is q^{base_quarters/4} of
// the governing context (4 = base q itself, 8 = q^2, 2 = q^{1/2}).
struct HypergeometricSpec {
    std::vector<QParam> upper;
    std::vector<QParam> lower;
    long base_quarters = 4;
    QParam argument;

    // Number of terms when some upper parameter is base^{-m} (m >= 0), i.e.
    // m+1; nullopt otherwise.
    std::optional<long> terminating_terms(const QContext& ctx) const;
};

SeriesValue eval_phi(const HypergeometricSpec& spec, const QContext& ctx);

}  // namespace qmoment
