#include "qkflag/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "qkflag/errors.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/quotient.hpp"
#include "qkflag/schubert.hpp"
#include "qkflag/todaham.hpp"
#include "qkflag/weyl.hpp"

#ifndef QKFLAG_FIXTURE_DIR
#define QKFLAG_FIXTURE_DIR "fixtures"
#endif

namespace qkflag {

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string mismatch(const std::string& what, const QLocalized& expected, const QLocalized& got) {
  std::ostringstream os;
  os << what << ": expected " << expected << ", got " << got << ", got - expected = " << (got - expected);
  return os.str();
}

// every expected relation equals a distinct computed one up to sign
std::string compare_up_to_sign(const std::vector<QLocalized>& expected, std::vector<QLocalized> got) {
  if (expected.size() != got.size())
    return "expected " + std::to_string(expected.size()) + " relations, got " + std::to_string(got.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    auto it = std::find_if(got.begin(), got.end(), [&](const QLocalized& g) { return g == expected[i] || g == -expected[i]; });
    if (it == got.end()) {
      std::ostringstream os;
      os << "relation " << i << " not found: " << expected[i];
      return os.str();
    }
    got.erase(it);
  }
  return "";
}

std::vector<QLocalized> expected_relations(const RegistryPtr& reg, const Fixture& f) {
  std::vector<QLocalized> out;
  for (const auto& r : f.expected.at("relations")) out.push_back(qlocalized_from_json(reg, r));
  return out;
}

WeylElement class_element(const std::string& key, const FlagShape& s) {
  if (!key.empty() && key.front() == '[') return WeylElement::parse(key);
  return element_of_partition(parse_partition(key), s);
}

std::string class_key(const WeylElement& w, const FlagShape& s) {
  if (s.is_grassmannian()) return partition_to_string(partition_of(w, s));
  return w.to_string();
}

const SchubertClass& find_class(const std::vector<SchubertClass>& basis, const WeylElement& w) {
  for (const auto& c : basis)
    if (c.w == w) return c;
  throw IndexOutOfRange("no Schubert class " + w.to_string());
}

SchubertPoly factor(const json& j, const FlagShape& s, const std::vector<SchubertClass>& basis) {
  if (j.is_string()) return find_class(basis, class_element(j.get<std::string>(), s)).rep;
  return {s, laurent_from_json(shape_registry(s), j.at("polynomial"))};
}

std::string run_toda_relations(const Fixture& f, const FlagShape& s) {
  auto reg = shape_registry(s);
  auto p = toda_presentation(s);
  bool sl = f.params.value("sl", false);
  std::vector<QLocalized> got;
  for (const auto& r : p.relations) {
    QLocalized v = s.is_full() ? toda_to_p(r.value, s.n) : r.value;
    if (sl) {
      v = sl_specialize(v);
      v = substitute(v, {{reg->index(Sort::P, s.n), QLocalized(LaurentPoly::constant(reg, 1))}});
    }
    if (!v.is_zero()) got.push_back(v);
  }
  return compare_up_to_sign(expected_relations(reg, f), got);
}

std::string run_whitney_relations(const Fixture& f, const FlagShape& s) {
  auto p = whitney_presentation(s);
  return compare_up_to_sign(expected_relations(p.reg, f), p.values());
}

std::string run_representative(const Fixture& f, const FlagShape& s) {
  auto reg = shape_registry(s);
  auto basis = schubert_basis(s);
  const auto& c = find_class(basis, class_element(f.params.at("partition").get<std::string>(), s));
  LaurentPoly want = laurent_from_json(reg, f.expected.at("polynomial"));
  if (c.rep.poly != want) return mismatch("representative", want, c.rep.poly);
  if (f.params.contains("word")) {
    // delta operators applied in the listed order, starting from the point class
    auto word = f.params["word"].get<std::vector<int>>();
    std::reverse(word.begin(), word.end());
    LaurentPoly chained = schubert_representative(s, word).poly;
    if (chained != want) return mismatch("divided difference chain", want, chained);
  }
  return "";
}

std::string run_product_expansion(const Fixture& f, const FlagShape& s) {
  auto reg = shape_registry(s);
  auto basis = schubert_basis(s);
  const auto& R = toda_ring(s);
  SchubertPoly a = factor(f.params.at("a"), s, basis);
  SchubertPoly b = factor(f.params.at("b"), s, basis);
  std::size_t yv = reg->index(Sort::y);
  std::map<WeylElement, QLocalized> got;
  auto parts = y_coefficients(QLocalized(a.poly), yv);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].is_zero()) continue;
    SchubertPoly ak{s, parts[k].as_poly()};
    Exponents e(reg->size(), 0);
    e[yv] = static_cast<int>(k);
    QLocalized yk(LaurentPoly::monomial(reg, e));
    for (auto& [w, c] : schubert_expand(quantum_product(ak, b, R), basis, R)) {
      auto [it, fresh] = got.try_emplace(w, LaurentPoly(reg));
      it->second += c * yk;
    }
  }
  std::map<WeylElement, QLocalized> want;
  for (const auto& [key, val] : f.expected.at("coefficients").items())
    want.emplace(class_element(key, s), QLocalized(laurent_from_json(reg, val)));
  for (const auto& c : basis) {
    QLocalized zero{LaurentPoly(reg)};
    QLocalized w = want.count(c.w) ? want.at(c.w) : zero;
    QLocalized g = got.count(c.w) ? got.at(c.w) : zero;
    if (w != g) return mismatch("coefficient of O^" + class_key(c.w, s), w, g);
  }
  return "";
}

std::string run_symbol(const Fixture& f, const FlagShape&) {
  int n = f.params.at("n").get<int>();
  int k = f.params.at("k").get<int>();
  QLocalized got = symbol_at_q1(hamiltonian_hat_Q(n, k));
  QLocalized want = qlocalized_from_json(shape_registry(FlagShape::full(n)), f.expected.at("symbol"));
  return got == want ? "" : mismatch("symbol", want, got);
}

template <class F>
CheckResult timed(const std::string& suite, const std::string& id, const std::string& anchor, F&& body) {
  CheckResult r;
  r.suite = suite;
  r.id = id;
  r.anchor = anchor;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.detail = body();
    r.ok = r.detail.empty();
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

FixtureSuite FixtureSuite::load(const std::string& dir) {
  FixtureSuite suite;
  suite.dir_ = dir;
  json manifest = read_json(dir + "/MANIFEST.json");
  for (const auto& a : manifest.at("anchors")) suite.anchors_.push_back(a.at("slug").get<std::string>());
  for (const auto& file : manifest.at("files")) {
    json data = read_json(dir + "/" + file.get<std::string>());
    for (const auto& j : data.at("fixtures")) {
      Fixture f;
      f.id = j.at("id").get<std::string>();
      f.shape = j.at("shape").get<std::string>();
      f.kind = j.at("kind").get<std::string>();
      f.anchor = j.at("anchor").get<std::string>();
      if (j.contains("display")) f.display = j["display"].get<std::vector<std::string>>();
      f.params = j.value("params", json::object());
      f.expected = j.at("expected");
      suite.fixtures_.push_back(std::move(f));
    }
  }
  std::sort(suite.fixtures_.begin(), suite.fixtures_.end(), [](const Fixture& a, const Fixture& b) { return a.id < b.id; });
  return suite;
}

std::vector<std::string> FixtureSuite::unanchored() const {
  std::vector<std::string> out;
  for (const auto& f : fixtures_)
    if (std::find(anchors_.begin(), anchors_.end(), f.anchor) == anchors_.end()) out.push_back(f.id);
  return out;
}

CheckResult FixtureSuite::run(const Fixture& f) const {
  return timed("golden", f.id, f.anchor, [&]() -> std::string {
    if (std::find(anchors_.begin(), anchors_.end(), f.anchor) == anchors_.end())
      return "anchor " + f.anchor + " is not in the manifest";
    FlagShape s = FlagShape::parse(f.shape);
    if (f.kind == "toda_relations") return run_toda_relations(f, s);
    if (f.kind == "whitney_relations") return run_whitney_relations(f, s);
    if (f.kind == "representative") return run_representative(f, s);
    if (f.kind == "product_expansion") return run_product_expansion(f, s);
    if (f.kind == "symbol") return run_symbol(f, s);
    return "unknown fixture kind " + f.kind;
  });
}

std::vector<CheckResult> FixtureSuite::run_all(const std::string& filter) const {
  std::vector<CheckResult> out;
  for (const auto& f : fixtures_)
    if (filter.empty() || f.id.find(filter) != std::string::npos) out.push_back(run(f));
  return out;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("QKFLAG_FIXTURE_DIR"); env && *env) return env;
  return QKFLAG_FIXTURE_DIR;
}

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // a few terms over `vars`, Laurent variables in [-2, 2], others in [0, 2]
  LaurentPoly poly(const RegistryPtr& reg, const std::vector<std::size_t>& vars, int max_terms = 4) {
    LaurentPoly p(reg);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exponents e(reg->size(), 0);
      for (auto v : vars) e[v] = reg->laurent(v) ? uniform(-2, 2) : uniform(0, 2);
      int c = uniform(-3, 3);
      if (c == 0) c = 1;
      p.add_term(e, c);
    }
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<std::size_t> vars_of(const RegistryPtr& reg, std::initializer_list<Sort> sorts) {
  std::vector<std::size_t> out;
  for (auto s : sorts)
    for (auto i : reg->of_sort(s)) out.push_back(i);
  return out;
}

// Laplace expansion along the first row
QLocalized cofactor_det(const std::vector<std::vector<QLocalized>>& m, const RegistryPtr& reg) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  QLocalized sum{LaurentPoly(reg)};
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<QLocalized>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QLocalized> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    QLocalized t = m[0][c] * cofactor_det(minor, reg);
    sum += c % 2 ? -t : t;
  }
  return sum;
}

std::string count_failures(int bad, int total) {
  return bad ? std::to_string(bad) + " of " + std::to_string(total) + " cases failed" : "";
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Gen g(seed);
  auto add = [&](const std::string& id, const std::function<std::string()>& body) {
    out.push_back(timed("properties", id, "", body));
  };
  auto s3 = FlagShape::full(3);
  auto reg3 = shape_registry(s3);
  auto s4 = FlagShape::full(4);
  auto reg4 = shape_registry(s4);
  auto ring_vars = vars_of(reg3, {Sort::EX, Sort::T, Sort::Q});

  add("laurent-ring-axioms", [&] {
    int bad = 0;
    for (int t = 0; t < 60; ++t) {
      auto a = g.poly(reg3, ring_vars), b = g.poly(reg3, ring_vars), c = g.poly(reg3, ring_vars);
      if (a * b != b * a || (a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c || (a - a) != LaurentPoly(reg3))
        ++bad;
      else if ((a * b).exact_divide(b) != a)
        ++bad;
    }
    return count_failures(bad, 60);
  });

  add("localized-arithmetic", [&] {
    int bad = 0;
    std::size_t q1 = reg3->index(Sort::Q, 1);
    for (int t = 0; t < 40; ++t) {
      QLocalized a(g.poly(reg3, ring_vars)), b(g.poly(reg3, ring_vars));
      QLocalized u = QLocalized::inv_one_minus(reg3, q1, g.uniform(1, 2));
      if ((a * u + b * u) != (a + b) * u || (a * u).exact_divide(u) != a) ++bad;
    }
    return count_failures(bad, 40);
  });

  add("serialize-roundtrip", [&] {
    int bad = 0;
    for (int t = 0; t < 40; ++t) {
      auto a = g.poly(reg3, ring_vars);
      if (laurent_from_json(reg3, to_json(a)) != a || parse_expression(reg3, a.to_string()) != QLocalized(a)) ++bad;
    }
    return count_failures(bad, 40);
  });

  auto schubert_vars = vars_of(reg4, {Sort::EX, Sort::T});
  add("rho-idempotent", [&] {
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      auto f = g.poly(reg4, schubert_vars);
      int i = g.uniform(1, 3);
      if (rho(i, rho(i, f)) != rho(i, f)) ++bad;
    }
    return count_failures(bad, 200);
  });

  add("rho-braid", [&] {
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      auto f = g.poly(reg4, schubert_vars, 3);
      int i = g.uniform(1, 2);
      if (rho(i, rho(i + 1, rho(i, f))) != rho(i + 1, rho(i, rho(i + 1, f)))) ++bad;
      if (rho(1, rho(3, f)) != rho(3, rho(1, f))) ++bad;
    }
    return count_failures(bad, 400);
  });

  add("rho-closed-form", [&] {
    int bad = 0;
    auto tv = reg4->of_sort(Sort::T);
    for (int t = 0; t < 200; ++t) {
      Exponents e(reg4->size(), 0);
      for (auto v : tv) e[v] = g.uniform(-3, 3);
      auto m = LaurentPoly::monomial(reg4, e);
      int i = g.uniform(1, 3);
      if (delta_on_exp(i, m) != rho(i, m)) ++bad;
    }
    return count_failures(bad, 200);
  });

  add("reduced-word-independence", [&] {
    int bad = 0;
    auto elems = all_elements(4);
    for (int t = 0; t < 30; ++t) {
      const auto& w = elems[g.uniform(0, static_cast<int>(elems.size()) - 1)];
      auto f = g.poly(reg4, schubert_vars, 2);
      auto words = all_reduced_words(w);
      auto ref = apply_word(words.front(), f);
      for (const auto& word : words)
        if (apply_word(word, f) != ref) ++bad;
    }
    return count_failures(bad, 30);
  });

  add("tridiag-cofactor", [&] {
    int bad = 0;
    auto s5 = FlagShape::full(5);
    auto reg = shape_registry(s5);
    auto vars = vars_of(reg, {Sort::T, Sort::Q});
    for (int t = 0; t < 100; ++t) {
      TridiagMatrix m;
      std::vector<std::vector<QLocalized>> dense(6, std::vector<QLocalized>(6, QLocalized(LaurentPoly(reg))));
      for (int r = 0; r < 6; ++r) {
        m.diag.emplace_back(g.poly(reg, vars, 2));
        dense[r][r] = m.diag.back();
        if (r >= 1) {
          m.super.emplace_back(g.poly(reg, vars, 2));
          dense[r - 1][r] = m.super.back();
          dense[r][r - 1] = QLocalized(LaurentPoly::constant(reg, 1));
        }
      }
      if (tridiag_det(m) != cofactor_det(dense, reg)) ++bad;
    }
    return count_failures(bad, 100);
  });

  add("toda-action-equality", [&] {
    int bad = 0;
    for (int t = 0; t < 60; ++t) {
      int n = g.uniform(2, 4);
      int k = g.uniform(1, n);
      auto reg = chain_q_registry(n);
      Exponents e(reg->size(), 0);
      e[reg->index(Sort::q)] = g.uniform(-3, 3);
      for (int i = 1; i < n; ++i) e[reg->index(Sort::Q, i)] = g.uniform(0, 3);
      auto f = LaurentPoly::monomial(reg, e);
      if (toda_hamiltonian_x(n, k).apply(q_to_x(f, n)) != transported_action(hamiltonian_hat_Q(n, k), f)) ++bad;
    }
    return count_failures(bad, 60);
  });

  add("operator-algebra", [&] {
    int bad = 0;
    for (int t = 0; t < 20; ++t) {
      auto rand_op = [&] {
        DiffOperator a(3, ShiftCoordinates::X);
        auto reg = a.registry();
        auto vars = vars_of(reg, {Sort::q, Sort::x});
        for (int j = 0; j < 3; ++j) a.add_term({g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)}, g.poly(reg, vars, 2));
        return a;
      };
      auto a = rand_op(), b = rand_op(), c = rand_op();
      if (!op_commutator(a, a).is_zero() || (a * b) * c != a * (b * c) || a.invert_q().invert_q() != a) ++bad;
    }
    return count_failures(bad, 20);
  });

  return out;
}

std::vector<CheckResult> run_toda_ham_suite(int max_n) {
  std::vector<CheckResult> out;
  for (int n = 2; n <= max_n; ++n) {
    for (auto c : {ShiftCoordinates::X, ShiftCoordinates::Q}) {
      std::string tag = c == ShiftCoordinates::X ? "x" : "Q";
      out.push_back(timed("toda-ham", "commute-" + tag + "-n" + std::to_string(n), "", [&]() -> std::string {
        for (const auto& h : commutator_checks(n, c))
          if (!h.ok)
            return "[H_" + std::to_string(h.k) + ", H_" + std::to_string(h.l) + "] has " +
                   std::to_string(h.residual_terms) + " terms";
        return "";
      }));
    }
    auto T = toda_polynomials(n);
    for (int k = 1; k <= n; ++k) {
      std::string id = "-n" + std::to_string(n) + "-k" + std::to_string(k);
      out.push_back(timed("toda-ham", "symbol" + id, "toda-symbols", [&]() -> std::string {
        QLocalized s = symbol_at_q1(hamiltonian_hat_Q(n, k));
        return s == T[k - 1] ? "" : mismatch("symbol", T[k - 1], s);
      }));
      out.push_back(timed("toda-ham", "eigenvalue" + id, "", [&]() -> std::string {
        LaurentPoly e = eigenvalue_mod_Q(n, k);
        LaurentPoly want = p_ratio_elementary(n, k);
        return e == want ? "" : mismatch("eigenvalue mod Q", want, e);
      }));
    }
  }
  return out;
}

std::vector<std::string> suite_names() { return {"golden", "paper", "properties", "toda-ham", "all"}; }

bool is_suite_name(const std::string& name) {
  auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed, const std::string& fixture_dir) {
  if (!is_suite_name(name)) throw ParseError("unknown suite " + name);
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  if (name == "golden" || name == "paper" || name == "all")
    append(FixtureSuite::load(fixture_dir.empty() ? default_fixture_dir() : fixture_dir).run_all());
  if (name == "properties" || name == "all") append(run_property_suite(seed));
  if (name == "toda-ham" || name == "all") append(run_toda_ham_suite(4));
  return out;
}

}  // namespace qkflag
