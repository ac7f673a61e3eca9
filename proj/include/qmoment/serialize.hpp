#pragma once

#include <string>

#include "qmoment/nevanlinna.hpp"
#include "qmoment/rootfinder.hpp"
#include "qmoment/xpoly.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace qmoment {

using Json = nlohmann::ordered_json;

// Significant decimal digits derived from the working precision:
// floor(bits * 0.3) - 5 guard digits, clamped to at least 8.
int output_digits(long precision_bits);

std::string rat_string(const Rat& r);

Json to_json(const LaurentPolyQ& p);                 // {"var":"q^(1/4)","coeffs":[[e,c],...]}
Json to_json(const XPolyExact& p);                   // {"var":"x","coeffs":[[k,{...}],...]}
Json to_json(const SeriesValue& sv, int digits);
Json to_json(const Complex& z, int digits);
Json to_json(const ZeroTable& t, int digits);
Json to_json(const DiscreteMeasure& mu, int digits);

std::string to_csv(const ZeroTable& t, int digits);       // x,lo,hi
std::string to_csv(const DiscreteMeasure& mu, int digits);  // x,mass

}  // namespace qmoment
