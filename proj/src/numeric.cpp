#include "qmoment/numeric.hpp"

#include <cctype>
#include <sstream>

namespace qmoment {

Rat parse_decimal_rational(std::string_view s) {
    auto fail = [&] { throw DomainError("cannot parse number: '" + std::string(s) + "'"); };
    if (s.empty()) fail();

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rat num = parse_decimal_rational(s.substr(0, slash));
        Rat den = parse_decimal_rational(s.substr(slash + 1));
        if (den == 0) fail();
        return num / den;
    }

    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = (s[i] == '-');
        ++i;
    }
    Int mantissa = 0;
    long frac_digits = 0;
    bool any_digit = false, in_frac = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (in_frac) ++frac_digits;
            any_digit = true;
        } else if (c == '.') {
            if (in_frac) fail();
            in_frac = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            fail();
        }
    }
    if (!any_digit) fail();
    long exp10 = 0;
    if (i < s.size()) {  // exponent part
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = (s[i] == '-');
            ++i;
        }
        if (i >= s.size()) fail();
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
            exp10 = exp10 * 10 + (s[i] - '0');
            if (exp10 > 100000) fail();
        }
        if (eneg) exp10 = -exp10;
    }
    exp10 -= frac_digits;
    Rat r(mantissa);
    if (exp10 > 0) r *= Rat(pow(Int(10), static_cast<unsigned>(exp10)));
    if (exp10 < 0) r /= Rat(pow(Int(10), static_cast<unsigned>(-exp10)));
    return neg ? -r : r;
}

std::string decimal_string(const Real& x, int digits) {
    if (digits < 3) digits = 3;
    if (mpfr_zero_p(x.backend().data())) return "0";
    return x.str(digits, std::ios_base::scientific);
}

Rat QContext::default_rel_tol() { return Rat(1) / Rat(pow(Int(2), 200u)); }

QContext::QContext(Rat q, long precision_bits, Rat series_rel_tol, long max_terms)
    : q_(std::move(q)),
      precision_bits_(precision_bits),
      rel_tol_(std::move(series_rel_tol)),
      max_terms_(max_terms) {
    if (!(q_ > 0 && q_ < 1)) throw DomainError("QContext: q must lie strictly inside (0,1)");
    if (precision_bits_ < 53) throw DomainError("QContext: precision_bits must be >= 53");
    if (!(rel_tol_ > 0)) throw DomainError("QContext: series_rel_tol must be positive");
    if (max_terms_ < 8) throw DomainError("QContext: max_terms must be >= 8");
}

Workspace QContext::workspace(long bits) const {
    Workspace ws;
    ws.bits = bits;
    ws.q = make_real(q_, bits);
    ws.prec_bits = prec_of(ws.q);
    ws.q12 = sqrt(ws.q);
    ws.q14 = sqrt(ws.q12);
    ws.rel_tol = make_real(rel_tol_, bits);
    ws.max_terms = max_terms_;
    return ws;
}

Workspace QContext::base_workspace() const { return workspace(precision_bits_ + 64); }

Real QContext::scale_q_quarter(const Real& x, long quarters) const {
    if (quarters == 0) return x;
    Workspace hi = workspace(precision_bits_ + 192);
    return hi.qpow4(quarters) * hi.up(x);
}

Complex QContext::scale_q_quarter(const Complex& z, long quarters) const {
    if (quarters == 0) return z;
    Workspace hi = workspace(precision_bits_ + 192);
    Real f = hi.qpow4(quarters);
    return Complex(f * hi.up(z.re), f * hi.up(z.im));
}

Real Workspace::qpow4(long quarters) const {
    bool inv = quarters < 0;
    unsigned long k = static_cast<unsigned long>(inv ? -quarters : quarters);
    Real acc(up(Real(1)));
    Real base = q14;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (inv) return up(Real(1)) / acc;
    return acc;
}

Real Workspace::pi() const {
    Real p(0, digits10_for_bits(prec_bits));
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

}  // namespace qmoment
