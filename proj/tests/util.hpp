#pragma once

#include <random>
#include <string_view>

#include "qkflag/qlocalized.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/shape.hpp"

namespace qkflag::test {

inline QLocalized E(const RegistryPtr& reg, std::string_view s) { return parse_expression(reg, s); }

inline LaurentPoly P(const RegistryPtr& reg, std::string_view s) { return parse_expression(reg, s).as_poly(); }

inline bool equal_up_to_sign(const QLocalized& a, const QLocalized& b) { return a == b || a == -b; }

// random Laurent polynomial in the given variables, exponents in [lo, hi], small integer coefficients
inline LaurentPoly random_poly(std::mt19937_64& rng, const RegistryPtr& reg, const std::vector<std::size_t>& vars,
                               int terms, int lo, int hi) {
  LaurentPoly f(reg);
  std::uniform_int_distribution<int> ex(lo, hi), co(-3, 3);
  for (int t = 0; t < terms; ++t) {
    Exponents e(reg->size(), 0);
    for (auto v : vars) e[v] = reg->laurent(v) ? ex(rng) : std::max(0, ex(rng));
    f.add_term(e, co(rng));
  }
  return f;
}

}  // namespace qkflag::test
