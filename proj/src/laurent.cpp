#include "qmoment/laurent.hpp"

#include <sstream>

namespace qmoment {

LaurentPolyQ LaurentPolyQ::integer(Int n) {
    LaurentPolyQ p;
    if (n != 0) p.c_.emplace(0, std::move(n));
    return p;
}

LaurentPolyQ LaurentPolyQ::q_power(long quarters, Int coeff) {
    LaurentPolyQ p;
    if (coeff != 0) p.c_.emplace(quarters, std::move(coeff));
    return p;
}

long LaurentPolyQ::min_exp() const { return c_.begin()->first; }
long LaurentPolyQ::max_exp() const { return c_.rbegin()->first; }

const Int* LaurentPolyQ::coeff(long quarters) const {
    auto it = c_.find(quarters);
    return it == c_.end() ? nullptr : &it->second;
}

void LaurentPolyQ::put(long e, Int v) {
    if (v != 0) c_.emplace(e, std::move(v));
}

LaurentPolyQ& LaurentPolyQ::operator+=(const LaurentPolyQ& o) {
    for (const auto& [e, v] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, v);
        } else {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

LaurentPolyQ& LaurentPolyQ::operator-=(const LaurentPolyQ& o) {
    for (const auto& [e, v] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, -v);
        } else {
            it->second -= v;
            if (it->second == 0) c_.erase(it);
        }
    }
    return *this;
}

LaurentPolyQ operator*(const LaurentPolyQ& a, const LaurentPolyQ& b) {
    LaurentPolyQ out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ea, va] : a.c_) {
        for (const auto& [eb, vb] : b.c_) {
            long e = ea + eb;
            auto it = out.c_.find(e);
            if (it == out.c_.end()) {
                out.c_.emplace(e, va * vb);
            } else {
                it->second += va * vb;
                if (it->second == 0) out.c_.erase(it);
            }
        }
    }
    return out;
}

LaurentPolyQ LaurentPolyQ::operator-() const {
    LaurentPolyQ out;
    for (const auto& [e, v] : c_) out.c_.emplace(e, -v);
    return out;
}

LaurentPolyQ& LaurentPolyQ::operator*=(const Int& k) {
    if (k == 0) {
        c_.clear();
        return *this;
    }
    for (auto& [e, v] : c_) v *= k;
    return *this;
}

void LaurentPolyQ::shift(long quarters) {
    if (quarters == 0 || c_.empty()) return;
    std::map<long, Int> shifted;
    for (auto& [e, v] : c_) shifted.emplace(e + quarters, std::move(v));
    c_ = std::move(shifted);
}

LaurentPolyQ LaurentPolyQ::base_inverted() const {
    LaurentPolyQ out;
    for (const auto& [e, v] : c_) out.c_.emplace(-e, v);
    return out;
}

Real LaurentPolyQ::eval(const Workspace& ws) const {
    if (c_.empty()) return ws.up(Real(0));
    // Horner over the quarter-exponent ladder, lowest exponent first:
    // sum_i c_i q^{e_i/4} = q^{e_0/4} (c_0 + q^{(e_1-e_0)/4} (c_1 + ...)).
    Real acc = ws.up(Real(0));
    long prev = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (it != c_.rbegin()) acc *= ws.qpow4(prev - it->first);
        acc += ws.make(Rat(it->second));
        prev = it->first;
    }
    return acc * ws.qpow4(min_exp());
}

Rat LaurentPolyQ::eval_rational(const Rat& q) const {
    Rat acc(0);
    for (const auto& [e, v] : c_) {
        if (e % 4 != 0) throw DomainError("eval_rational: fractional q-exponent");
        long k = e / 4;
        Rat p = k >= 0 ? Rat(pow(Int(numerator(q)), static_cast<unsigned>(k)),
                             pow(Int(denominator(q)), static_cast<unsigned>(k)))
                       : Rat(pow(Int(denominator(q)), static_cast<unsigned>(-k)),
                             pow(Int(numerator(q)), static_cast<unsigned>(-k)));
        acc += Rat(v) * p;
    }
    return acc;
}

std::optional<LaurentPolyQ> LaurentPolyQ::divide_exact(const LaurentPolyQ& num,
                                                       const LaurentPolyQ& den) {
    if (den.is_zero()) return std::nullopt;
    if (num.is_zero()) return LaurentPolyQ();
    // Long division from the lowest exponent; exact iff the remainder empties
    // before the quotient degree range is exhausted.
    const long max_quot_exp = num.max_exp() - den.min_exp();
    LaurentPolyQ rem = num, quot;
    const long den_lo = den.min_exp();
    const Int& den_lc = den.c_.begin()->second;
    while (!rem.is_zero()) {
        long e = rem.min_exp() - den_lo;
        if (e > max_quot_exp) return std::nullopt;
        const Int& rc = rem.c_.begin()->second;
        if (rc % den_lc != 0) return std::nullopt;
        LaurentPolyQ t = q_power(e, rc / den_lc);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

std::string LaurentPolyQ::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c_) {
        Int a = v;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        bool unit = (a == 1) && e != 0;
        if (!unit) os << a.str();
        if (e != 0) {
            if (!unit) os << "*";
            os << "q";
            if (e != 4) {
                os << "^";
                if (e % 4 == 0) {
                    os << "(" << e / 4 << ")";
                } else if (e % 2 == 0) {
                    os << "(" << e / 2 << "/2)";
                } else {
                    os << "(" << e << "/4)";
                }
            }
        }
        first = false;
    }
    return os.str();
}

}  // namespace qmoment
