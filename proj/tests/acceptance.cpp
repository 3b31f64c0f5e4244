// One line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "qkflag/fixtures.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/quotient.hpp"
#include "qkflag/schubert.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/todaham.hpp"
#include "qkflag/weyl.hpp"

using namespace qkflag;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

QLocalized E(const RegistryPtr& reg, const char* s) { return parse_expression(reg, s); }

bool same_up_to_sign(const QLocalized& a, const QLocalized& b) { return a == b || a == -b; }

QLocalized laplace(const std::vector<std::vector<QLocalized>>& m) {
  if (m.size() == 1) return m[0][0];
  QLocalized acc = m[0][0] - m[0][0];
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<QLocalized>> minor;
    for (std::size_t r = 1; r < m.size(); ++r) {
      std::vector<QLocalized> row;
      for (std::size_t cc = 0; cc < m.size(); ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    QLocalized t = m[0][c] * laplace(minor);
    acc = c % 2 ? acc - t : acc + t;
  }
  return acc;
}

LaurentPoly random_poly(std::mt19937_64& rng, const RegistryPtr& reg, const std::vector<std::size_t>& vars) {
  std::uniform_int_distribution<int> ex(-1, 2), co(-3, 3);
  LaurentPoly f(reg);
  for (int t = 0; t < 3; ++t) {
    Exponents e(reg->size(), 0);
    for (auto v : vars) e[v] = reg->laurent(v) ? ex(rng) : std::max(0, ex(rng));
    f.add_term(e, co(rng));
  }
  return f;
}

std::vector<LaurentPoly> t_monomials(const RegistryPtr& reg, int n, int r) {
  std::vector<LaurentPoly> out;
  auto ts = reg->of_sort(Sort::T);
  std::vector<int> e(n, -r);
  for (;;) {
    Exponents x(reg->size(), 0);
    for (int i = 0; i < n; ++i) x[ts[i]] = e[i];
    out.push_back(LaurentPoly::monomial(reg, x));
    int i = 0;
    while (i < n && e[i] == r) e[i++] = -r;
    if (i == n) return out;
    ++e[i];
  }
}

QuotientRing fresh_ring(Presentation p) {
  QuotientOptions opt;
  opt.use_cache = false;
  return QuotientRing(std::move(p), opt);
}

Outcome c1() {
  Outcome o;
  auto s = FlagShape::parse("1;2");
  auto reg = shape_registry(s);
  auto p = toda_presentation(s);
  o.require(p.relations.size() == 2, "relation count");
  if (!o.ok) return o;
  QLocalized r1 = toda_to_p(p.relations[0].value, 2), r2 = toda_to_p(p.relations[1].value, 2);
  o.require(same_up_to_sign(r1, E(reg, "P1 + (1-Q1)*P2/P1 - T1 - T2")), "y^1 relation (GL form)");
  o.require(same_up_to_sign(r2, E(reg, "P2 - T1*T2")), "y^2 relation (GL form)");
  // SL normalisation: T1 T2 = 1 forces P2 = 1
  Bindings p2{{reg->index("P2"), E(reg, "1")}};
  o.require(same_up_to_sign(substitute(sl_specialize(r1), p2), E(reg, "P1 + (1-Q1)/P1 - T1 - T1^-1")),
            "y^1 relation (SL form)");
  o.require(substitute(sl_specialize(r2), p2).is_zero(), "y^2 relation (SL form)");
  return o;
}

Outcome c2() {
  Outcome o;
  auto s = FlagShape::full(3);
  auto reg = shape_registry(s);
  auto p = toda_presentation(s);
  const char* printed[] = {
      "P1 + (1-Q1)*P2/P1 + (1-Q2)*P3/P2 - (T1 + T2 + T3)",
      "P2 + (1-Q1)*P3/P1 + (1-Q2)*P1*P3/P2 - (T1*T2 + T1*T3 + T2*T3)",
      "P3 - T1*T2*T3",
  };
  o.require(p.relations.size() == 3, "relation count");
  for (int l = 0; o.ok && l < 3; ++l)
    o.require(same_up_to_sign(toda_to_p(p.relations[l].value, 3), E(reg, printed[l])),
              "y^" + std::to_string(l + 1) + " relation");
  return o;
}

Outcome c3() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    auto reg = shape_registry(FlagShape::full(n));
    auto t = toda_polynomials(n);
    QLocalized sum = E(reg, "1");
    for (int k = 1; k <= n; ++k) sum += t[k - 1] * QLocalized(LaurentPoly::variable(reg, "y", k));
    o.require(sum == tridiag_det(todap_matrix(n)), "determinant identity at n=" + std::to_string(n));
  }
  auto reg = shape_registry(FlagShape::full(3));
  std::vector<std::size_t> vars{reg->index("T1"), reg->index("T2"), reg->index("Q1"), reg->index("y")};
  std::mt19937_64 rng(2024);
  QLocalized zero{LaurentPoly(reg)}, one = E(reg, "1");
  for (int trial = 0; trial < 100 && o.ok; ++trial) {
    TridiagMatrix m;
    for (int i = 0; i < 6; ++i) m.diag.emplace_back(random_poly(rng, reg, vars));
    for (int i = 1; i < 6; ++i)
      m.super.push_back(QLocalized(random_poly(rng, reg, vars)) *
                        QLocalized::inv_one_minus(reg, reg->index("Q1"), i % 2));
    std::vector<std::vector<QLocalized>> d(6, std::vector<QLocalized>(6, zero));
    for (int i = 0; i < 6; ++i) {
      d[i][i] = m.diag[i];
      if (i < 5) {
        d[i][i + 1] = m.super[i];
        d[i + 1][i] = one;
      }
    }
    o.require(tridiag_det(m) == laplace(d), "random 6x6 instance " + std::to_string(trial));
  }
  return o;
}

Outcome c4() {
  Outcome o;
  int count = 0;
  for (int n = 2; n <= 5; ++n)
    for (const auto& s : all_shapes(n)) {
      ++count;
      auto e = eliminate_whitney_to_toda(s).toda;
      auto t = toda_presentation(s);
      bool same = e.relations.size() == t.relations.size();
      for (std::size_t i = 0; same && i < t.relations.size(); ++i) same = e.relations[i].value == t.relations[i].value;
      o.require(same, s.to_string());
    }
  o.require(count == 26, "expected 26 shapes with n <= 5");
  o.note = o.ok ? std::to_string(count) + " shapes" : o.note;
  return o;
}

Outcome c5() {
  Outcome o;
  auto s = FlagShape::grassmannian(2, 4);
  auto reg = shape_registry(s);
  QuotientRing R = fresh_ring(toda_presentation(s));
  SchubertPoly a{s, E(reg, "1 - eX1_1/T2 + eX1_2/T2^2").as_poly()};
  SchubertPoly b{s, E(reg, "1 - eX1_1/T1 + eX1_2/T1^2").as_poly()};
  auto basis = schubert_basis(s);
  const auto& top = basis.back();
  o.require(partition_of(top.w, s) == std::vector<int>{2, 2}, "top class is (2,2)");
  QLocalized prod = quantum_product(a, b, R);
  o.require(prod == R.normal_form(R.from_whitney_generators(QLocalized(top.rep.poly))), "normal forms differ");
  for (const auto& [w, coef] : schubert_expand(prod, basis, R))
    o.require(coef == E(reg, w == top.w ? "1" : "0"), "coefficient at " + w.to_string());
  return o;
}

Outcome c6() {
  Outcome o;
  auto s = FlagShape::grassmannian(2, 4);
  auto reg = shape_registry(s);
  QuotientRing R = fresh_ring(toda_presentation(s));
  auto basis = schubert_basis(s);
  auto cls = [&](const char* p) {
    auto w = element_of_partition(parse_partition(p), s);
    for (const auto& c : basis)
      if (c.w == w) return c;
    throw std::logic_error("missing class");
  };
  struct Case {
    const char *a, *b;
    std::vector<std::pair<const char*, const char*>> coeffs;
  };
  std::vector<Case> cases{
      {"(1)", "(1)", {{"(1)", "1 - T3/T2"}, {"(2)", "T3/T2"}, {"(1,1)", "T3/T2"}, {"(2,1)", "-T3/T2"}}},
      {"(1)", "(1,1)", {{"(1,1)", "1 - T3/T1"}, {"(2,1)", "T3/T1"}}},
  };
  // the printed products are transcribed into the golden fixtures; compare against those
  auto suite = FixtureSuite::load(default_fixture_dir());
  int checked = 0;
  for (const char* id : {"gr24-product-1-1", "gr24-product-1-11", "gr24-product-11-11"}) {
    for (const auto& f : suite.fixtures()) {
      if (f.id != id) continue;
      auto r = suite.run(f);
      o.require(r.ok, std::string(id) + ": " + r.detail);
      ++checked;
    }
  }
  o.require(checked == 3, "fixtures missing");
  // and the first two directly, against a freshly built basis
  for (const auto& c : cases) {
    auto ex = schubert_expand(quantum_product(cls(c.a).rep, cls(c.b).rep, R), basis, R);
    std::size_t nonzero = 0;
    for (const auto& [w, coef] : ex) nonzero += !coef.is_zero();
    o.require(nonzero == c.coeffs.size(), std::string(c.a) + "*" + c.b + " term count");
    for (const auto& [p, text] : c.coeffs) {
      auto it = ex.find(element_of_partition(parse_partition(p), s));
      o.require(it != ex.end() && it->second == E(reg, text), std::string(c.a) + "*" + c.b + " at " + p);
    }
  }
  return o;
}

Outcome c7() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    auto reg = shape_registry(FlagShape::full(n));
    for (const auto& m : t_monomials(reg, n, n == 4 ? 1 : 2))
      for (int i = 1; i < n; ++i) {
        auto r = rho(i, m);
        o.require(rho(i, r) == r, "idempotence");
        if (i + 1 < n) o.require(rho(i, rho(i + 1, r)) == rho(i + 1, rho(i, rho(i + 1, m))), "braid");
        for (int j = i + 2; j < n; ++j) o.require(rho(j, r) == rho(i, rho(j, m)), "far commutation");
      }
  }
  {
    auto reg = shape_registry(FlagShape::full(4));
    auto vars = reg->of_sort(Sort::T);
    vars.push_back(reg->index("eX2_2"));
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
      auto f = random_poly(rng, reg, vars);
      for (int i = 1; i < 4; ++i) {
        o.require(rho(i, rho(i, f)) == rho(i, f), "random idempotence");
        if (i < 3) o.require(rho(i, rho(i + 1, rho(i, f))) == rho(i + 1, rho(i, rho(i + 1, f))), "random braid");
      }
      o.require(rho(1, rho(3, f)) == rho(3, rho(1, f)), "random far commutation");
    }
  }
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : all_shapes(n))
      for (const auto& w : all_elements(n)) {
        auto words = all_reduced_words(w);
        auto first = schubert_representative(s, words[0]).poly;
        for (const auto& word : words)
          o.require(schubert_representative(s, word).poly == first, "reduced words of " + w.to_string());
      }
  // Gr(2,4) chain, last step corrected to delta_2
  auto s = FlagShape::grassmannian(2, 4);
  auto reg = shape_registry(s);
  const char* printed[] = {
      "(1 - eX1_1/T1 + eX1_2/T1^2)*(1 - eX1_2/(T2*T3))",
      "1 - (1/(T1*T2) + 1/(T2*T3) + 1/(T1*T3))*eX1_2 + eX1_1*eX1_2/(T1*T2*T3)",
      "1 - eX1_1/T1 + eX1_2/T1^2",
      "1 - eX1_2/(T1*T2)",
      "1",
  };
  // delta_2, delta_1 from O^(2,2); delta_3 from O^(2,1); then delta_1, delta_2
  LaurentPoly pt = point_class(s).poly;
  LaurentPoly o21 = rho(2, pt), o2 = rho(1, o21), o11 = rho(3, o21), o1 = rho(1, o11), o0 = rho(2, o1);
  LaurentPoly got[] = {o21, o2, o11, o1, o0};
  for (int i = 0; i < 5; ++i) o.require(got[i] == E(reg, printed[i]).as_poly(), std::string("chain step ") + printed[i]);
  o.require(rho(1, o1) == o1, "the printed last delta_1 should fix O^(1)");
  return o;
}

Outcome c8() {
  Outcome o;
  int count = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : all_shapes(n))
      for (const auto& c : schubert_basis(s)) {
        ++count;
        o.require(is_q_free(c.rep.poly), s.to_string() + " " + c.w.to_string());
      }
  if (o.ok) o.note = std::to_string(count) + " representatives";
  return o;
}

Outcome c9() {
  Outcome o;
  for (int n = 2; n <= 4; ++n)
    for (auto c : {ShiftCoordinates::X, ShiftCoordinates::Q})
      for (const auto& h : commutator_checks(n, c))
        o.require(h.ok, "[H" + std::to_string(h.k) + ",H" + std::to_string(h.l) + "] at n=" + std::to_string(n));
  for (int n = 2; n <= 5; ++n) {
    auto t = toda_polynomials(n);
    for (int k = 1; k <= n; ++k) {
      std::string at = " n=" + std::to_string(n) + " k=" + std::to_string(k);
      o.require(symbol_at_q1(hamiltonian_hat_Q(n, k)) == t[k - 1], "symbol" + at);
      o.require(eigenvalue_mod_Q(n, k) == p_ratio_elementary(n, k), "eigenvalue" + at);
    }
  }
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k)
      o.require(symbol_reduces_to_wedge(n, k), "symbol mod the Toda ideal n=" + std::to_string(n) + " k=" + std::to_string(k));
  return o;
}

Outcome c10() {
  Outcome o;
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k <= n; ++k)
      for (int p = 0; p <= k; ++p)
        o.require(verify_wedge_identity(n, k, p),
                  "n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + std::to_string(p));
  return o;
}

Outcome c11() {
  Outcome o;
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        o.require(verify_mns_rewrite(n, i, j),
                  "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
  return o;
}

Outcome c12() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& s : all_shapes(n)) {
      o.require(specialize_q0(toda_presentation(s)) == classical_relations(s, Flavor::Toda), "toda " + s.to_string());
      o.require(specialize_q0(whitney_presentation(s)) == classical_relations(s, Flavor::Whitney),
                "whitney " + s.to_string());
      std::size_t expected = minimal_coset_reps(s).size();
      o.require(toda_ring(s).rank() == expected, "toda rank " + s.to_string());
      if (n <= 3) o.require(fresh_ring(whitney_presentation(s)).rank() == expected, "whitney rank " + s.to_string());
    }
    o.require(specialize_q0(toda_presentation_fln_P(n)) == classical_relations(FlagShape::full(n), Flavor::TodaP),
              "toda-p n=" + std::to_string(n));
  }
  o.require(whitney_full_flag_ring(4).rank() == 24, "whitney rank 1,2,3;4");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "P1 Toda relations", 1, c1},
      {2, "Fl(3) Toda relations", 1, c2},
      {3, "determinant identity and cofactor check", 30, c3},
      {4, "Whitney to Toda elimination, n <= 5", 120, c4},
      {5, "Gr(2,4) point class", 0, c5},
      {6, "Gr(2,4) multiplication table", 120, c6},
      {7, "Demazure operators and the Gr(2,4) chain", 0, c7},
      {8, "Q-free representatives, n <= 4", 0, c8},
      {9, "Toda Hamiltonians", 300, c9},
      {10, "wedge expansion identity, n <= 4", 0, c10},
      {11, "MNS rewrite, n <= 4", 0, c11},
      {12, "classical limit and ranks, n <= 4", 0, c12},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit == 0 || secs < c.limit;
    bool pass = o.ok && in_time;
    failures += !pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.name << "  ("
         << std::fixed << std::setprecision(2) << secs << " s";
    if (c.limit > 0) line << ", limit " << c.limit << " s";
    line << ")";
    if (!o.ok || !o.note.empty()) line << "  " << o.note;
    if (!in_time) line << "  runtime limit exceeded";
    std::cout << line.str() << std::endl;
  }
  std::cout << (all.size() - failures) << "/" << all.size() << " criteria passed" << std::endl;
  return failures;
}
