#include "qkflag/presentations.hpp"

#include <algorithm>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Toda: return "toda";
    case Flavor::Whitney: return "whitney";
    case Flavor::TodaP: return "toda-p";
  }
  return "?";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "toda") return Flavor::Toda;
  if (s == "whitney") return Flavor::Whitney;
  if (s == "toda-p" || s == "todap") return Flavor::TodaP;
  throw ParseError("unknown flavor '" + std::string(s) + "'");
}

std::vector<QLocalized> Presentation::values() const {
  std::vector<QLocalized> out;
  for (const auto& r : relations) out.push_back(r.value);
  return out;
}

std::vector<LaurentPoly> Presentation::cleared() const {
  std::vector<LaurentPoly> out;
  for (const auto& r : relations) out.push_back(r.cleared);
  return out;
}

namespace {

LaurentPoly var(const RegistryPtr& reg, std::size_t i, int p = 1) { return LaurentPoly::variable(reg, i, p); }
LaurentPoly one(const RegistryPtr& reg) { return LaurentPoly::constant(reg, 1); }

std::vector<LaurentPoly> gens(const RegistryPtr& reg, Sort s, int j, int count) {
  std::vector<LaurentPoly> g;
  for (int l = 1; l <= count; ++l) g.push_back(var(reg, reg->index(s, j, l)));
  return g;
}

LaurentPoly lambda_T(const RegistryPtr& reg, int n) {
  std::size_t y = reg->index(Sort::y);
  LaurentPoly r = one(reg);
  for (int i = 1; i <= n; ++i) r = r * (one(reg) + var(reg, y) * var(reg, reg->index(Sort::T, i)));
  return r;
}

LaurentPoly lambda_gens(const RegistryPtr& reg, Sort s, int j, int count) {
  return lambda_from_generators(reg, reg->index(Sort::y), gens(reg, s, j, count));
}

void push_y_relations(Presentation& p, const QLocalized& f, int block, int maxdeg) {
  auto c = y_coefficients(f, p.reg->index(Sort::y));
  for (int l = 1; l <= maxdeg; ++l) {
    QLocalized v = l < static_cast<int>(c.size()) ? c[l] : QLocalized(LaurentPoly(p.reg));
    if (v.is_zero()) v = QLocalized(LaurentPoly(p.reg));
    p.relations.push_back(Relation{v, v.cleared(), l, block});
  }
  for (std::size_t l = maxdeg + 1; l < c.size(); ++l)
    if (!c[l].is_zero()) throw std::logic_error("relation has unexpected y-degree");
}

void sort_relations(Presentation& p) {
  std::stable_sort(p.relations.begin(), p.relations.end(), [](const Relation& a, const Relation& b) {
    return a.y_exponent != b.y_exponent ? a.y_exponent < b.y_exponent : a.block < b.block;
  });
}

}  // namespace

std::vector<QLocalized> tridiag_partial_dets(const TridiagMatrix& m) {
  if (m.diag.empty()) throw IndexOutOfRange("empty matrix");
  if (m.super.size() + 1 != m.diag.size()) throw IndexOutOfRange("superdiagonal length");
  const auto& reg = m.diag.front().registry();
  std::vector<QLocalized> u;
  u.emplace_back(one(reg));
  u.push_back(m.diag[0]);
  for (std::size_t j = 1; j < m.diag.size(); ++j) u.push_back(m.diag[j] * u[j] - m.super[j - 1] * u[j - 1]);
  return u;
}

QLocalized tridiag_det(const TridiagMatrix& m) { return tridiag_partial_dets(m).back(); }

TridiagMatrix toda_matrix(const FlagShape& s) {
  auto reg = shape_registry(s);
  std::size_t y = reg->index(Sort::y);
  TridiagMatrix m;
  for (int j = 0; j <= s.k(); ++j) {
    QLocalized a(lambda_gens(reg, Sort::EY, j, s.d(j)));
    if (j >= 1) {
      std::size_t qj = reg->index(Sort::Q, j);
      LaurentPoly top = var(reg, reg->index(Sort::EY, j, s.d(j)));
      QLocalized b(var(reg, y, s.d(j)) * var(reg, qj) * top, {{qj, 1}});
      m.super.push_back(b);
      a += b;
    }
    m.diag.push_back(a);
  }
  return m;
}

Presentation toda_presentation(const FlagShape& s) {
  Presentation p;
  p.shape = s;
  p.flavor = Flavor::Toda;
  p.reg = shape_registry(s);
  for (int j = 0; j <= s.k(); ++j)
    for (int l = 1; l <= s.d(j); ++l) p.generators.push_back(p.reg->index(Sort::EY, j, l));
  QLocalized f = QLocalized(lambda_T(p.reg, s.n)) - tridiag_det(toda_matrix(s));
  push_y_relations(p, f, 0, s.n);
  sort_relations(p);
  return p;
}

TridiagMatrix todap_matrix(int n) {
  auto s = FlagShape::full(n);
  auto reg = shape_registry(s);
  std::size_t y = reg->index(Sort::y);
  auto ratio = [&](int j) {
    LaurentPoly r = var(reg, reg->index(Sort::P, j + 1));
    if (j >= 1) r = r * var(reg, reg->index(Sort::P, j), -1);
    return r;
  };
  TridiagMatrix m;
  for (int j = 0; j < n; ++j) {
    m.diag.emplace_back(one(reg) + var(reg, y) * ratio(j));
    if (j >= 1) m.super.emplace_back(var(reg, y) * ratio(j) * var(reg, reg->index(Sort::Q, j)));
  }
  return m;
}

Presentation toda_presentation_fln_P(int n) {
  if (n < 2) throw InvalidShape("TodaP flavor needs n >= 2");
  Presentation p;
  p.shape = FlagShape::full(n);
  p.flavor = Flavor::TodaP;
  p.reg = shape_registry(p.shape);
  for (int i = 1; i <= n; ++i) p.generators.push_back(p.reg->index(Sort::P, i));
  QLocalized f = QLocalized(lambda_T(p.reg, n)) - tridiag_det(todap_matrix(n));
  push_y_relations(p, f, 0, n);
  return p;
}

std::vector<QLocalized> toda_polynomials(int n) {
  auto reg = shape_registry(FlagShape::full(n));
  std::vector<QLocalized> out(n, QLocalized(LaurentPoly(reg)));
  // enumerate chains 0 = i_0 < i_1 < ... < i_k <= n as subsets of {1..n}
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    LaurentPoly term = one(reg);
    int k = 0;
    int prev = 0;
    for (int i = 1; i <= n; ++i) {
      if (!(mask & (1u << (i - 1)))) continue;
      ++k;
      term = term * var(reg, reg->index(Sort::P, i));
      if (i >= 2) term = term * var(reg, reg->index(Sort::P, i - 1), -1);
      if (i - prev != 1) term = term * one_minus(reg, reg->index(Sort::Q, i - 1));
      prev = i;
    }
    out[k - 1] += QLocalized(term);
  }
  return out;
}

Presentation whitney_presentation(const FlagShape& s) {
  Presentation p;
  p.shape = s;
  p.flavor = Flavor::Whitney;
  p.reg = shape_registry(s);
  const auto& reg = p.reg;
  for (int j = 1; j <= s.k(); ++j)
    for (int l = 1; l <= s.r(j); ++l) p.generators.push_back(reg->index(Sort::EX, j, l));
  for (int j = 1; j <= s.k(); ++j)
    for (int l = 1; l <= s.d(j); ++l) p.generators.push_back(reg->index(Sort::EY, j, l));
  std::size_t y = reg->index(Sort::y);
  auto lambda_X = [&](int j) {
    if (j == 0) return one(reg);
    if (j == s.k() + 1) return lambda_T(reg, s.n);
    return lambda_gens(reg, Sort::EX, j, s.r(j));
  };
  for (int j = 1; j <= s.k(); ++j) {
    std::size_t qj = reg->index(Sort::Q, j);
    LaurentPoly top = var(reg, reg->index(Sort::EY, j, s.d(j)));
    QLocalized f(lambda_X(j) * lambda_gens(reg, Sort::EY, j, s.d(j)) - lambda_X(j + 1));
    f += QLocalized(var(reg, y, s.d(j)) * var(reg, qj) * top * (lambda_X(j) - lambda_X(j - 1)), {{qj, 1}});
    push_y_relations(p, f, j, s.r(j + 1));
  }
  sort_relations(p);
  return p;
}

EliminationResult eliminate_whitney_to_toda(const FlagShape& s) {
  EliminationResult res;
  Presentation w = whitney_presentation(s);
  const auto& reg = w.reg;
  Bindings b;
  for (int l = 1; l <= s.r(1); ++l)
    b[reg->index(Sort::EX, 1, l)] = QLocalized(var(reg, reg->index(Sort::EY, 0, l)));
  res.log.push_back("rename e_l(X^(1)) -> e_l(Y^(0)) for l = 1.." + std::to_string(s.r(1)));

  auto block_relations = [&](int j) {
    std::vector<const Relation*> out;
    for (const auto& r : w.relations)
      if (r.block == j) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](auto* a, auto* c) { return a->y_exponent < c->y_exponent; });
    return out;
  };
  auto partial = tridiag_partial_dets(toda_matrix(s));
  std::size_t y = reg->index(Sort::y);

  for (int j = 1; j < s.k(); ++j) {
    for (const Relation* r : block_relations(j)) {
      std::size_t target = reg->index(Sort::EX, j + 1, r->y_exponent);
      QLocalized sub = substitute(r->value, b);
      QLocalized sol = sub + QLocalized(var(reg, target));
      for (std::size_t i = 0; i < reg->size(); ++i)
        if (reg->var(i).sort == Sort::EX && sol.num().involves(i))
          throw EliminationFailure("relation " + std::to_string(r->y_exponent) + " of block " + std::to_string(j) +
                                   " is not solved by " + reg->var(target).name);
      res.log.push_back(reg->var(target).name + " := " + sol.to_string());
      b[target] = sol;
    }
    QLocalized lam(one(reg));
    for (int l = 1; l <= s.r(j + 1); ++l)
      lam += b.at(reg->index(Sort::EX, j + 1, l)) * QLocalized(var(reg, y, l));
    if (lam != partial[j + 1])
      throw EliminationFailure("lambda_y(X^(" + std::to_string(j + 1) + ")) differs from the partial determinant");
    res.log.push_back("lambda_y(X^(" + std::to_string(j + 1) + ")) = U_" + std::to_string(j + 1) +
                      " (leading principal minor of size " + std::to_string(j + 1) + ")");
  }

  Presentation toda = toda_presentation(s);
  Presentation out;
  out.shape = s;
  out.flavor = Flavor::Toda;
  out.reg = reg;
  out.generators = toda.generators;
  for (const Relation* r : block_relations(s.k())) {
    QLocalized v = -substitute(r->value, b);
    out.relations.push_back(Relation{v, v.cleared(), r->y_exponent, 0});
  }
  sort_relations(out);
  if (out.relations.size() != toda.relations.size())
    throw EliminationFailure("residual relation count differs");
  for (std::size_t i = 0; i < out.relations.size(); ++i) {
    if (out.relations[i].value != toda.relations[i].value)
      throw EliminationFailure("residual relation for y^" + std::to_string(out.relations[i].y_exponent) +
                               " differs: " + out.relations[i].value.to_string() + " vs " +
                               toda.relations[i].value.to_string());
  }
  res.log.push_back("residual of block " + std::to_string(s.k()) + " equals the Toda relations for y^1..y^" +
                    std::to_string(s.n));
  res.toda = std::move(out);
  return res;
}

QLocalized wedge_expansion_rhs(int n, int k, int p) {
  if (n < 2 || k < 0 || p < 0 || p > k || k > n)
    throw IndexOutOfRange("need 0 <= p <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " p=" + std::to_string(p));
  auto reg = shape_registry(FlagShape::full(n));
  QLocalized sum{LaurentPoly(reg)};
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (__builtin_popcount(mask) != p) continue;
    LaurentPoly term = one(reg);
    QLocalized::Denominator den;
    for (int j = 1; j <= k; ++j) {
      if (!(mask & (1u << (j - 1)))) continue;
      term = term * var(reg, reg->index(Sort::EY, j - 1, 1));
      if (j + 1 <= k && (mask & (1u << j))) den[reg->index(Sort::Q, j)] += 1;
    }
    sum += QLocalized(term, den);
  }
  return sum;
}

QLocalized toda_to_p(const QLocalized& f, int n) {
  auto reg = f.registry();
  Bindings b;
  b[reg->index(Sort::EY, 0, 1)] = QLocalized(var(reg, reg->index(Sort::P, 1)));
  for (int j = 1; j < n; ++j) {
    b[reg->index(Sort::EY, j, 1)] = QLocalized(one_minus(reg, reg->index(Sort::Q, j)) *
                                               var(reg, reg->index(Sort::P, j + 1)) *
                                               var(reg, reg->index(Sort::P, j), -1));
  }
  return substitute(f, b);
}

QLocalized p_to_toda(const QLocalized& f, int n) {
  auto reg = shape_registry(FlagShape::full(n));
  QLocalized g = f.registry() == reg ? f : f.rebase(reg);
  std::vector<std::size_t> pv;
  for (int i = 1; i <= n; ++i) pv.push_back(reg->index(Sort::P, i));
  std::map<QLocalized::Denominator, LaurentPoly> acc;
  for (const auto& [e, c] : g.num().terms()) {
    Exponents ne = e;
    QLocalized::Denominator den = g.den();
    // P^a = prod_i (P_i/P_{i-1})^{c_i}, c_i = sum_{j >= i} a_j
    int tail = 0;
    for (int i = n; i >= 1; --i) {
      tail = add_exp(tail, e[pv[i - 1]]);
      ne[pv[i - 1]] = 0;
      if (tail < 0) throw NonInvertibleBinding("P-monomial needs a negative power of Y^(" + std::to_string(i - 1) + ")");
      std::size_t yv = reg->index(Sort::EY, i - 1, 1);
      ne[yv] = add_exp(ne[yv], tail);
      if (i >= 2 && tail > 0) den[reg->index(Sort::Q, i - 1)] += tail;
    }
    auto [it, fresh] = acc.try_emplace(den, reg);
    it->second.add_term(ne, c);
  }
  QLocalized out{LaurentPoly(reg)};
  for (const auto& [den, num] : acc) out += QLocalized(num, den);
  return out;
}

QLocalized toda_to_whitney_generators(const QLocalized& f, const FlagShape& s) {
  auto reg = f.registry();
  Bindings b;
  for (int l = 1; l <= s.r(1); ++l)
    b[reg->index(Sort::EY, 0, l)] = QLocalized(var(reg, reg->index(Sort::EX, 1, l)));
  return substitute(f, b);
}

std::vector<QLocalized> specialize_q0(const Presentation& p) {
  Bindings b;
  for (auto q : p.reg->of_sort(Sort::Q)) b[q] = QLocalized(LaurentPoly(p.reg));
  std::vector<QLocalized> out;
  for (const auto& r : p.relations) out.push_back(substitute(r.value, b));
  return out;
}

std::vector<QLocalized> classical_relations(const FlagShape& s, Flavor f) {
  auto reg = shape_registry(s);
  std::size_t y = reg->index(Sort::y);
  Presentation holder;
  holder.reg = reg;
  if (f == Flavor::Toda) {
    LaurentPoly prod = one(reg);
    for (int j = 0; j <= s.k(); ++j) prod = prod * lambda_gens(reg, Sort::EY, j, s.d(j));
    push_y_relations(holder, QLocalized(lambda_T(reg, s.n) - prod), 0, s.n);
  } else if (f == Flavor::TodaP) {
    if (!s.is_full()) throw InvalidShape("TodaP flavor needs a full flag");
    LaurentPoly prod = one(reg);
    for (int j = 0; j < s.n; ++j) {
      LaurentPoly r = var(reg, reg->index(Sort::P, j + 1));
      if (j >= 1) r = r * var(reg, reg->index(Sort::P, j), -1);
      prod = prod * (one(reg) + var(reg, y) * r);
    }
    push_y_relations(holder, QLocalized(lambda_T(reg, s.n) - prod), 0, s.n);
  } else {
    for (int j = 1; j <= s.k(); ++j) {
      LaurentPoly lx = lambda_gens(reg, Sort::EX, j, s.r(j));
      LaurentPoly next = j == s.k() ? lambda_T(reg, s.n) : lambda_gens(reg, Sort::EX, j + 1, s.r(j + 1));
      push_y_relations(holder, QLocalized(lx * lambda_gens(reg, Sort::EY, j, s.d(j)) - next), j, s.r(j + 1));
    }
    sort_relations(holder);
  }
  return holder.values();
}

QLocalized sl_specialize(const QLocalized& f) {
  auto reg = f.registry();
  auto ts = reg->of_sort(Sort::T);
  if (ts.size() < 2) return f;
  LaurentPoly img = one(reg);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) img = img * var(reg, ts[i], -1);
  return substitute(f, Bindings{{ts.back(), QLocalized(img)}});
}

json to_json(const Presentation& p) {
  json gens = json::array();
  for (auto g : p.generators) gens.push_back(p.reg->var(g).name);
  json rels = json::array();
  for (const auto& r : p.relations) {
    rels.push_back(json{{"y_exponent", r.y_exponent},
                        {"block", r.block},
                        {"value", to_json(r.value)},
                        {"cleared", to_json(r.cleared)}});
  }
  return json{{"shape", p.shape.to_string()},
              {"flavor", flavor_name(p.flavor)},
              {"generators", gens},
              {"relations", rels}};
}

std::string to_latex(const Presentation& p) {
  std::ostringstream os;
  os << "% " << flavor_name(p.flavor) << " presentation of Fl(" << p.shape.to_string() << ")\n";
  os << "\\begin{aligned}\n";
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    os << "  [y^{" << r.y_exponent << "}";
    if (p.flavor == Flavor::Whitney) os << ", j=" << r.block;
    os << "]\\quad & " << to_latex(r.value) << " = 0";
    if (i + 1 < p.relations.size()) os << " \\\\";
    os << "\n";
  }
  os << "\\end{aligned}\n";
  return os.str();
}

}  // namespace qkflag
