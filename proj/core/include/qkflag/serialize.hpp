#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "qkflag/qlocalized.hpp"

namespace qkflag {

using json = nlohmann::ordered_json;

// [{"exponents": {"T1": -1, ...}, "num": "3", "den": "2"}, ...] in canonical order
json to_json(const LaurentPoly& p);
// {"numerator": [...], "denominator": {"Q1": 2}}
json to_json(const QLocalized& p);

LaurentPoly laurent_from_json(const RegistryPtr& reg, const json& j);
QLocalized qlocalized_from_json(const RegistryPtr& reg, const json& j);

std::string to_latex(const LaurentPoly& p);
std::string to_latex(const QLocalized& p);

// Parses expressions such as "P1 + (1-Q1)*P2*P1^-1 - T1*T2" or "eX1_1/(1-Q1)".
// Division must be exact in the localized ring.
QLocalized parse_expression(const RegistryPtr& reg, std::string_view text);

}  // namespace qkflag
