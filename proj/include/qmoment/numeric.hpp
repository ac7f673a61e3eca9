#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <limits>
#include <string>
#include <string_view>

#include "qmoment/errors.hpp"

namespace qmoment {

namespace mp = boost::multiprecision;

// Arbitrary-precision real with run-time mantissa width.  Results of
// arithmetic inherit the largest operand precision, so every computation
// stays at the precision of the Workspace values that seed it.  Decimal
// constants must never enter through Real directly; parse them to Rat and
// convert at an explicit precision (the generic boost conversion from a
// rational goes through a lossy intermediate).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Rat = mp::mpq_rational;
using Int = mp::mpz_int;

inline constexpr long kZeroExp = std::numeric_limits<long>::min();

// Binary exponent of |x| (mpfr convention: 0.5 <= mantissa < 1), or
// kZeroExp for x == 0.
inline long exp_of(const Real& x) {
    if (mpfr_zero_p(x.backend().data())) return kZeroExp;
    return static_cast<long>(mpfr_get_exp(x.backend().data()));
}

inline long prec_of(const Real& x) { return static_cast<long>(mpfr_get_prec(x.backend().data())); }

inline unsigned digits10_for_bits(long bits) {
    if (bits < 16) bits = 16;
    return static_cast<unsigned>(bits * 0.3010299956639812 + 4.0);
}

// Exactly rounded conversion of a rational at the requested width.
inline Real make_real(const Rat& r, long bits) {
    Real x(0, digits10_for_bits(bits));
    mpfr_set_q(x.backend().data(), r.backend().data(), MPFR_RNDN);
    return x;
}

// Value-preserving precision floor: the stored bits are treated as exact.
inline Real upsized(const Real& x, long bits) {
    Real y = x;
    if (prec_of(y) < bits) y.precision(digits10_for_bits(bits));
    return y;
}

inline Real pow2(long e) {
    return ldexp(Real(1), static_cast<int>(e));
}

inline long ceil_log2(long n) {
    long e = 0;
    while ((1L << e) < n && e < 62) ++e;
    return e;
}

// ---------------------------------------------------------------------------
// Minimal complex type over Real.  std::complex is not specified for
// user-defined scalars, and MPC is not available; the handful of operations
// the series engine needs is implemented here.

struct Complex {
    Real re, im;

    // Both components are kept at one precision: a lower-precision component
    // would otherwise cap mixed expressions through boost's temporary reuse.
    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0, digits10_for_bits(prec_of(re))) {}  // NOLINT
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) { balance(); }
    Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    void balance() {
        long pr = prec_of(re), pi = prec_of(im);
        if (pr < pi)
            re.precision(digits10_for_bits(pi));
        else if (pi < pr)
            im.precision(digits10_for_bits(pr));
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    // Binary forms build fresh values, which inherit the *largest* operand
    // precision; compound assignment would instead round into the left-hand
    // side's existing width and silently truncate mixed-precision chains.
    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
};

inline Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
}
inline Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
}
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline Complex operator*(const Real& s, const Complex& a) { return Complex(s * a.re, s * a.im); }
inline Complex operator*(const Complex& a, const Real& s) { return s * a; }

inline Complex& Complex::operator+=(const Complex& o) { return *this = *this + o; }
inline Complex& Complex::operator-=(const Complex& o) { return *this = *this - o; }
inline Complex& Complex::operator*=(const Complex& o) { return *this = *this * o; }

inline Complex conj(const Complex& a) { return Complex(a.re, -a.im); }
inline Real norm_sq(const Complex& a) { return a.re * a.re + a.im * a.im; }

inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = norm_sq(b);
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
inline Complex operator/(Complex a, const Real& s) {
    a.re /= s;
    a.im /= s;
    return a;
}

inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

inline Real abs_val(const Real& x) { return abs(x); }
inline Real abs_val(const Complex& z) {
    if (z.im == 0) return abs(z.re);
    if (z.re == 0) return abs(z.im);
    return hypot(z.re, z.im);
}

inline long exp_of(const Complex& z) { return std::max(exp_of(z.re), exp_of(z.im)); }

inline bool is_zero(const Real& x) { return x == 0; }
inline bool is_zero(const Complex& z) { return z.is_zero(); }

inline Complex to_complex(const Real& x) { return Complex(x); }
inline Complex to_complex(const Complex& z) { return z; }

// ---------------------------------------------------------------------------

// Decimal or fraction literal ("0.3", "1e-10", "3/10") to an exact rational.
Rat parse_decimal_rational(std::string_view s);

// Deterministic scientific rendering with a fixed significant-digit count.
std::string decimal_string(const Real& x, int digits);

struct Workspace;

// Validated base q in (0,1) plus the precision and truncation configuration
// that governs every numeric evaluation.  q and the tolerance are kept as
// exact rationals so that evaluations can be re-run at any working precision
// without inheriting rounding from a previous rendition.
class QContext {
  public:
    QContext(Rat q, long precision_bits = 256, Rat series_rel_tol = default_rel_tol(),
             long max_terms = 10000);

    static Rat default_rel_tol();  // 2^-200

    const Rat& q_exact() const { return q_; }
    long precision_bits() const { return precision_bits_; }
    const Rat& rel_tol_exact() const { return rel_tol_; }
    long max_terms() const { return max_terms_; }
    double q_approx() const { return static_cast<double>(q_); }

    Workspace workspace(long bits) const;
    Workspace base_workspace() const;

    // x * q^{quarters/4} computed with enough guard bits that the result can
    // be treated as an exact argument downstream.
    Real scale_q_quarter(const Real& x, long quarters) const;
    Complex scale_q_quarter(const Complex& z, long quarters) const;

  private:
    Rat q_;
    long precision_bits_;
    Rat rel_tol_;
    long max_terms_;
};

// One rendition of the context at a concrete working precision.
struct Workspace {
    long bits = 0;       // requested width
    long prec_bits = 0;  // actual mpfr mantissa width
    Real q, q12, q14;    // q, q^{1/2}, q^{1/4}
    Real rel_tol;
    long max_terms = 0;

    Real qpow4(long quarters) const;  // q^{quarters/4}
    Real qpow(long k) const { return qpow4(4 * k); }
    Real make(const Rat& r) const { return make_real(r, prec_bits); }
    Real up(const Real& x) const { return upsized(x, prec_bits); }
    Complex up(const Complex& z) const { return Complex(up(z.re), up(z.im)); }
    Real pi() const;
};

}  // namespace qmoment
