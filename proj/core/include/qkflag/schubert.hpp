#pragma once

#include <map>
#include <vector>

#include "qkflag/laurent.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/shape.hpp"
#include "qkflag/weyl.hpp"

namespace qkflag {

struct SchubertPoly {
  FlagShape shape;
  LaurentPoly poly;
};

// rho_i f = (T_i f - T_{i+1} s_i(f)) / (T_i - T_{i+1}), s_i acting on T only
LaurentPoly rho(int i, const LaurentPoly& f);
SchubertPoly rho(int i, const SchubertPoly& f);
// rho_{i_1} o ... o rho_{i_l}: the last letter acts first
LaurentPoly apply_word(const std::vector<int>& word, const LaurentPoly& f);

// closed form of rho_i on a T-monomial
LaurentPoly delta_on_exp(int i, const LaurentPoly& monomial);

SchubertPoly point_class(const FlagShape& s);
SchubertPoly schubert_representative(const FlagShape& s, const std::vector<int>& word);

std::vector<int> word_for_class_via_ww0(const WeylElement& w);
std::vector<int> word_for_class_via_w(const WeylElement& w);
SchubertPoly representative_for(const FlagShape& s, const WeylElement& w);

struct SchubertClass {
  WeylElement w;
  std::vector<int> word;
  SchubertPoly rep;
};
// all classes of W^r, ordered by (length, one-line)
std::vector<SchubertClass> schubert_basis(const FlagShape& s);

// Restriction to the torus-fixed point v: e_m(X^(i)) -> e_m(T_{v(1)}, ..., T_{v(r_i)}),
// e_m(Y^(j)) -> e_m(T_{v(r_j + 1)}, ..., T_{v(r_{j+1})}).
LaurentPoly localize(const LaurentPoly& f, const FlagShape& s, const WeylElement& v);

// Classical (Q = 0) expansion in the Schubert basis by a triangular solve over fixed points.
std::map<WeylElement, LaurentPoly> classical_expand(const LaurentPoly& f, const FlagShape& s,
                                                    const std::vector<SchubertClass>& basis);

bool is_q_free(const LaurentPoly& f);

json to_json(const SchubertClass& c);
std::string class_label(const SchubertClass& c, const FlagShape& s);

}  // namespace qkflag
