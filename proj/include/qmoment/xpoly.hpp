#pragma once

#include <string>
#include <vector>

#include "qmoment/laurent.hpp"
#include "qmoment/series.hpp"

namespace qmoment {

// Exact polynomial in x whose coefficients are Laurent polynomials in
// q^{1/4}.  Canonical form: no zero leading coefficient; the zero polynomial
// has an empty coefficient list and degree() == -1.
class XPolyExact {
  public:
    XPolyExact() = default;  // zero

    static XPolyExact constant(LaurentPolyQ c);
    static XPolyExact x_power(long k, LaurentPolyQ c = LaurentPolyQ::one());

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const LaurentPolyQ& coeff(long k) const;  // zero Laurent poly outside range

    XPolyExact& operator+=(const XPolyExact& o);
    XPolyExact& operator-=(const XPolyExact& o);
    friend XPolyExact operator+(XPolyExact a, const XPolyExact& b) { return a += b; }
    friend XPolyExact operator-(XPolyExact a, const XPolyExact& b) { return a -= b; }
    friend XPolyExact operator*(const XPolyExact& a, const XPolyExact& b);
    XPolyExact operator-() const;

    XPolyExact& scale(const LaurentPolyQ& f);
    // x -> q^{quarters/4} x, exact on the quarter lattice
    XPolyExact subst_x_qpow(long quarters) const;
    // q -> q^{-1} in every coefficient
    XPolyExact base_inverted() const;

    bool operator==(const XPolyExact&) const = default;

    // Horner evaluation of the exact coefficients specialized at (x, q) in
    // working precision, with a rounding-noise bound.
    SeriesValue eval_sv(const Complex& x, const QContext& ctx) const;
    Real eval(const Real& x, const Workspace& ws) const;
    Complex eval(const Complex& x, const Workspace& ws) const;
    // Exact evaluation at rational (x, q); requires integer q-exponents.
    Rat eval_rational(const Rat& x, const Rat& q) const;

    bool even_odd_parity_matches(long n) const;  // coeff of x^k vanishes unless k = n (mod 2)

    std::string to_string() const;  // e.g. "x^2 - 1", "q^(1/2)*x^2 - q^(1/2)"

  private:
    std::vector<LaurentPolyQ> c_;
    void normalize();
};

}  // namespace qmoment
