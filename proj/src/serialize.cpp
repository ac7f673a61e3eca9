#include "qmoment/serialize.hpp"

#include <sstream>

namespace qmoment {

int output_digits(long precision_bits) {
    long d = static_cast<long>(precision_bits * 0.3) - 5;
    return static_cast<int>(d < 8 ? 8 : d);
}

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Json to_json(const LaurentPolyQ& p) {
    Json coeffs = Json::array();
    for (const auto& [e, c] : p.terms()) coeffs.push_back(Json::array({e, c.str()}));
    return Json{{"var", "q^(1/4)"}, {"coeffs", coeffs}};
}

Json to_json(const XPolyExact& p) {
    Json coeffs = Json::array();
    for (long k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        coeffs.push_back(Json::array({k, to_json(p.coeff(k))}));
    }
    return Json{{"var", "x"}, {"coeffs", coeffs}};
}

Json to_json(const Complex& z, int digits) {
    if (z.is_real()) return decimal_string(z.re, digits);
    return Json{{"re", decimal_string(z.re, digits)}, {"im", decimal_string(z.im, digits)}};
}

Json to_json(const SeriesValue& sv, int digits) {
    return Json{{"value", to_json(sv.value, digits)},
                {"tail_bound", decimal_string(sv.tail_bound, 4)},
                {"round_off", decimal_string(sv.round_off, 4)},
                {"terms_used", sv.terms_used}};
}

Json to_json(const ZeroTable& t, int digits) {
    Json zeros = Json::array();
    for (const auto& z : t.zeros)
        zeros.push_back(Json{{"x", decimal_string(z.location, digits)},
                             {"lo", decimal_string(z.bracket.lo, digits)},
                             {"hi", decimal_string(z.bracket.hi, digits)}});
    return Json{{"function", t.function.name()},
                {"q", rat_string(t.q)},
                {"zeros", zeros},
                {"requested_count", t.requested_count},
                {"search_bound", decimal_string(t.search_bound, 6)}};
}

namespace {

Json param_json(const MeasureParam& p, int digits) {
    if (p.kind == MeasureParam::Kind::U) return Json{{"u", decimal_string(p.u, digits)}};
    if (p.t_infinite) return Json{{"t", "inf"}};
    return Json{{"t", decimal_string(p.t, digits)}};
}

}  // namespace

Json to_json(const DiscreteMeasure& mu, int digits) {
    Json support = Json::array(), masses = Json::array();
    for (const auto& x : mu.support) support.push_back(decimal_string(x, digits));
    for (const auto& m : mu.masses) masses.push_back(decimal_string(m, digits));
    return Json{{"q", rat_string(mu.q)},
                {"param", param_json(mu.parameter, digits)},
                {"support", support},
                {"masses", masses},
                {"truncation_bound", decimal_string(mu.truncation_bound, 4)}};
}

std::string to_csv(const ZeroTable& t, int digits) {
    std::ostringstream os;
    os << "x,lo,hi\n";
    for (const auto& z : t.zeros)
        os << decimal_string(z.location, digits) << "," << decimal_string(z.bracket.lo, digits)
           << "," << decimal_string(z.bracket.hi, digits) << "\n";
    return os.str();
}

std::string to_csv(const DiscreteMeasure& mu, int digits) {
    std::ostringstream os;
    os << "x,mass\n";
    for (size_t i = 0; i < mu.support.size(); ++i)
        os << decimal_string(mu.support[i], digits) << "," << decimal_string(mu.masses[i], digits)
           << "\n";
    return os.str();
}

}  // namespace qmoment
