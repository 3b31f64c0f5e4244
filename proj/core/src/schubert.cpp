#include "qkflag/schubert.hpp"

#include "qkflag/errors.hpp"
#include "qkflag/qlocalized.hpp"

namespace qkflag {

namespace {

std::size_t t_index(const RegistryPtr& reg, int i) { return reg->index(Sort::T, i); }

void check_rho_index(const RegistryPtr& reg, int i) {
  int n = static_cast<int>(reg->of_sort(Sort::T).size());
  if (i < 1 || i >= n) throw IndexOutOfRange("rho_" + std::to_string(i) + " needs 1 <= i < " + std::to_string(n));
}

}  // namespace

LaurentPoly rho(int i, const LaurentPoly& f) {
  const auto& reg = f.registry();
  if (f.is_zero()) return f;
  check_rho_index(reg, i);
  std::size_t a = t_index(reg, i);
  std::size_t b = t_index(reg, i + 1);
  LaurentPoly ta = LaurentPoly::variable(reg, a);
  LaurentPoly tb = LaurentPoly::variable(reg, b);
  LaurentPoly num = ta * f - tb * f.swap_variables(a, b);
  return num.exact_divide(ta - tb);
}

SchubertPoly rho(int i, const SchubertPoly& f) { return {f.shape, rho(i, f.poly)}; }

LaurentPoly apply_word(const std::vector<int>& word, const LaurentPoly& f) {
  LaurentPoly r = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = rho(*it, r);
  return r;
}

LaurentPoly delta_on_exp(int i, const LaurentPoly& monomial) {
  if (!monomial.is_monomial()) throw std::invalid_argument("delta_on_exp expects a monomial");
  const auto& reg = monomial.registry();
  check_rho_index(reg, i);
  std::size_t a = t_index(reg, i);
  std::size_t b = t_index(reg, i + 1);
  const auto& [e, c] = *monomial.terms().begin();
  int N = 1 + e[a] - e[b];
  LaurentPoly out(reg);
  // r = T_{i+1}/T_i
  Exponents step(reg->size(), 0);
  auto r_pow = [&](int s) {
    Exponents ne = e;
    ne[a] = add_exp(ne[a], -s);
    ne[b] = add_exp(ne[b], s);
    return ne;
  };
  if (N >= 1) {
    for (int s = 0; s < N; ++s) out.add_term(r_pow(s), c);
  } else if (N < 0) {
    for (int s = N; s <= -1; ++s) out.add_term(r_pow(s), -c);
  }
  return out;
}

SchubertPoly point_class(const FlagShape& s) {
  auto reg = shape_registry(s);
  LaurentPoly f = LaurentPoly::constant(reg, 1);
  for (int i = 1; i <= s.k(); ++i) {
    for (int j = s.r(i); j <= s.r(i + 1) - 1; ++j) {
      std::size_t t = t_index(reg, s.n - j);
      LaurentPoly factor = LaurentPoly::constant(reg, 1);
      for (int m = 1; m <= s.r(i); ++m) {
        LaurentPoly term = LaurentPoly::variable(reg, t, -m) * LaurentPoly::variable(reg, reg->index(Sort::EX, i, m));
        if (m % 2) term = -term;
        factor += term;
      }
      f = f * factor;
    }
  }
  return {s, f};
}

SchubertPoly schubert_representative(const FlagShape& s, const std::vector<int>& word) {
  for (int i : word)
    if (i < 1 || i >= s.n) throw IndexOutOfRange("word letter " + std::to_string(i));
  return {s, apply_word(word, point_class(s).poly)};
}

std::vector<int> word_for_class_via_ww0(const WeylElement& w) {
  return (w * WeylElement::longest(w.n())).reduced_word();
}

std::vector<int> word_for_class_via_w(const WeylElement& w) { return w.reduced_word(); }

SchubertPoly representative_for(const FlagShape& s, const WeylElement& w) {
  return schubert_representative(s, word_for_class_via_ww0(w));
}

std::vector<SchubertClass> schubert_basis(const FlagShape& s) {
  std::vector<SchubertClass> out;
  for (const auto& w : minimal_coset_reps(s)) {
    auto word = word_for_class_via_ww0(w);
    out.push_back({w, word, schubert_representative(s, word)});
  }
  return out;
}

LaurentPoly localize(const LaurentPoly& f, const FlagShape& s, const WeylElement& v) {
  auto reg = f.registry();
  Bindings b;
  auto tv = [&](int pos) { return LaurentPoly::variable(reg, t_index(reg, v(pos))); };
  for (int i = 1; i <= s.k(); ++i) {
    std::vector<LaurentPoly> roots;
    for (int p = 1; p <= s.r(i); ++p) roots.push_back(tv(p));
    for (int m = 1; m <= s.r(i); ++m)
      if (auto idx = reg->find(Sort::EX, i, m)) b[*idx] = QLocalized(elem_sym(roots, m));
  }
  for (int j = 0; j <= s.k(); ++j) {
    std::vector<LaurentPoly> roots;
    for (int p = s.r(j) + 1; p <= s.r(j + 1); ++p) roots.push_back(tv(p));
    for (int m = 1; m <= s.d(j); ++m)
      if (auto idx = reg->find(Sort::EY, j, m)) b[*idx] = QLocalized(elem_sym(roots, m));
  }
  return substitute(f, b).as_poly();
}

std::map<WeylElement, LaurentPoly> classical_expand(const LaurentPoly& f, const FlagShape& s,
                                                    const std::vector<SchubertClass>& basis) {
  std::map<WeylElement, LaurentPoly> coeff;
  std::vector<const SchubertClass*> order;
  for (const auto& c : basis) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->w.length() < b->w.length(); });
  for (const auto* v : order) {
    LaurentPoly val = localize(f, s, v->w);
    for (const auto* w : order) {
      if (w->w.length() >= v->w.length()) break;
      auto it = coeff.find(w->w);
      if (it == coeff.end() || it->second.is_zero()) continue;
      val -= it->second * localize(w->rep.poly, s, v->w);
    }
    LaurentPoly diag = localize(v->rep.poly, s, v->w);
    if (diag.is_zero()) throw SingularSystem("class " + v->w.to_string() + " vanishes at its own fixed point");
    coeff[v->w] = val.exact_divide(diag);
  }
  return coeff;
}

bool is_q_free(const LaurentPoly& f) {
  for (auto q : f.registry()->of_sort(Sort::Q))
    if (f.involves(q)) return false;
  return true;
}

std::string class_label(const SchubertClass& c, const FlagShape& s) {
  if (s.is_grassmannian()) return partition_to_string(partition_of(c.w, s));
  return c.w.to_string();
}

json to_json(const SchubertClass& c) {
  return json{{"shape", c.rep.shape.to_string()},
              {"weyl_element", c.w.one_line()},
              {"word", c.word},
              {"representative", to_json(c.rep.poly)}};
}

}  // namespace qkflag
