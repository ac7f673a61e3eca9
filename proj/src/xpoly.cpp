#include "qmoment/xpoly.hpp"

#include <sstream>

namespace qmoment {

namespace {
const LaurentPolyQ kZeroCoeff{};
}

XPolyExact XPolyExact::constant(LaurentPolyQ c) {
    XPolyExact p;
    if (!c.is_zero()) p.c_.push_back(std::move(c));
    return p;
}

XPolyExact XPolyExact::x_power(long k, LaurentPolyQ c) {
    XPolyExact p;
    if (c.is_zero()) return p;
    p.c_.resize(k + 1);
    p.c_[k] = std::move(c);
    return p;
}

const LaurentPolyQ& XPolyExact::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return kZeroCoeff;
    return c_[k];
}

void XPolyExact::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPolyExact& XPolyExact::operator+=(const XPolyExact& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
}

XPolyExact& XPolyExact::operator-=(const XPolyExact& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
}

XPolyExact operator*(const XPolyExact& a, const XPolyExact& b) {
    XPolyExact out;
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.resize(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.normalize();
    return out;
}

XPolyExact XPolyExact::operator-() const {
    XPolyExact out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

XPolyExact& XPolyExact::scale(const LaurentPolyQ& f) {
    if (f.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c = c * f;
    return *this;
}

XPolyExact XPolyExact::subst_x_qpow(long quarters) const {
    XPolyExact out = *this;
    for (size_t k = 0; k < out.c_.size(); ++k) out.c_[k].shift(quarters * static_cast<long>(k));
    return out;
}

XPolyExact XPolyExact::base_inverted() const {
    XPolyExact out;
    out.c_.reserve(c_.size());
    for (const auto& c : c_) out.c_.push_back(c.base_inverted());
    return out;
}

Real XPolyExact::eval(const Real& x, const Workspace& ws) const {
    Real acc = ws.up(Real(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ws.up(x) + it->eval(ws);
    return acc;
}

Complex XPolyExact::eval(const Complex& x, const Workspace& ws) const {
    Complex acc(ws.up(Real(0)));
    Complex xx = ws.up(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xx + Complex(it->eval(ws));
    return acc;
}

SeriesValue XPolyExact::eval_sv(const Complex& x, const QContext& ctx) const {
    if (is_zero()) return sv_exact(Complex(0));
    auto attempt = [&](const Workspace& ws) {
        Attempted<Complex> out;
        Complex acc(ws.up(Real(0)));
        Complex xx = ws.up(x);
        long max_exp = kZeroExp;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * xx + Complex(it->eval(ws));
            max_exp = std::max(max_exp, exp_of(acc));
        }
        out.value = std::move(acc);
        out.terms = static_cast<long>(c_.size());
        out.converged = true;
        out.noise_exp = (max_exp == kZeroExp)
                            ? kZeroExp
                            : max_exp + ceil_log2(3 * (out.terms + 1)) + 2 - ws.prec_bits;
        return out;
    };
    return run_series<Complex>(ctx, attempt, "XPolyExact::eval_sv");
}

Rat XPolyExact::eval_rational(const Rat& x, const Rat& q) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->eval_rational(q);
    return acc;
}

bool XPolyExact::even_odd_parity_matches(long n) const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero() && ((static_cast<long>(k) - n) % 2) != 0) return false;
    return true;
}

std::string XPolyExact::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        const LaurentPolyQ& c = c_[k];
        if (c.is_zero()) continue;
        std::string cs = c.to_string();
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (negated) os << "-";
        } else {
            os << (negated ? " - " : " + ");
        }
        bool unit = (cs == "1") && k > 0;
        bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (!unit) {
            if (composite && k > 0)
                os << "(" << cs << ")";
            else
                os << cs;
        }
        if (k > 0) {
            if (!unit) os << "*";
            os << "x";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

}  // namespace qmoment
