#pragma once

#include <map>
#include <optional>
#include <string>

#include "qmoment/numeric.hpp"

namespace qmoment {

// Exact Laurent polynomial in q^{1/4}: a finite map from quarter-integer
// exponents (stored in units of 1/4) to arbitrary-precision integer
// coefficients.  Zero coefficients are never stored, so equality of canonical
// forms is plain map equality.  The quarter lattice is closed under every
// substitution the polynomial families need (prefactors q^{n(n+1)/4},
// arguments q^{+-1/2} x, base inversion q -> q^{-1}).
class LaurentPolyQ {
  public:
    LaurentPolyQ() = default;  // zero

    static LaurentPolyQ integer(Int n);
    static LaurentPolyQ one() { return integer(1); }
    // coeff * q^{quarters/4}
    static LaurentPolyQ q_power(long quarters, Int coeff = Int(1));

    bool is_zero() const { return c_.empty(); }
    long min_exp() const;  // quarter units; polynomial must be nonzero
    long max_exp() const;
    const std::map<long, Int>& terms() const { return c_; }
    const Int* coeff(long quarters) const;

    LaurentPolyQ& operator+=(const LaurentPolyQ& o);
    LaurentPolyQ& operator-=(const LaurentPolyQ& o);
    friend LaurentPolyQ operator+(LaurentPolyQ a, const LaurentPolyQ& b) { return a += b; }
    friend LaurentPolyQ operator-(LaurentPolyQ a, const LaurentPolyQ& b) { return a -= b; }
    friend LaurentPolyQ operator*(const LaurentPolyQ& a, const LaurentPolyQ& b);
    LaurentPolyQ operator-() const;
    LaurentPolyQ& operator*=(const Int& k);

    // multiply by q^{quarters/4}
    void shift(long quarters);
    // q -> q^{-1}
    LaurentPolyQ base_inverted() const;

    bool operator==(const LaurentPolyQ&) const = default;

    Real eval(const Workspace& ws) const;
    // Exact evaluation at rational q; requires all exponents to be integers
    // (multiples of 4 quarter units).
    Rat eval_rational(const Rat& q) const;

    // Exact division; nullopt when the quotient is not a Laurent polynomial.
    static std::optional<LaurentPolyQ> divide_exact(const LaurentPolyQ& num,
                                                    const LaurentPolyQ& den);

    // Rendering like "1 + q - 2*q^(3/4) + q^(-2)".
    std::string to_string() const;

  private:
    std::map<long, Int> c_;
    void put(long e, Int v);
};

}  // namespace qmoment
