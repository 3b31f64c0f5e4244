#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qkflag/errors.hpp"
#include "qkflag/fixtures.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/quotient.hpp"
#include "qkflag/schubert.hpp"
#include "qkflag/todaham.hpp"
#include "qkflag/weyl.hpp"

namespace qkflag::cli {

namespace {

Presentation make_presentation(const FlagShape& s, Flavor f) {
  switch (f) {
    case Flavor::Toda:
      return toda_presentation(s);
    case Flavor::Whitney:
      return whitney_presentation(s);
    case Flavor::TodaP:
      if (!s.is_full()) throw InvalidShape("the toda-p flavor needs a full flag shape");
      return toda_presentation_fln_P(s.n);
  }
  throw ParseError("unknown flavor");
}

QLocalized maybe_sl(const Globals& g, const QLocalized& f) { return g.sl ? sl_specialize(f) : f; }

void emit(const Globals& g, const json& j, const std::string& latex, std::ostream& out) {
  if (g.format == Format::Json)
    out << j.dump(2) << "\n";
  else
    out << latex << "\n";
}

const SchubertClass& class_of(const std::vector<SchubertClass>& basis, const WeylElement& w) {
  for (const auto& c : basis)
    if (c.w == w) return c;
  throw ParseError(w.to_string() + " is not a minimal coset representative");
}

// delta_i sends O^w to O^{s_i w} when s_i w < w and fixes it otherwise
WeylElement after_deltas(const std::vector<SchubertClass>& basis, const std::vector<int>& chain) {
  WeylElement w = basis.back().w;
  for (int i : chain)
    if (w.is_left_descent(i)) w = w.left_mul_simple(i);
  return w;
}

struct NamedClass {
  WeylElement w;
  SchubertPoly rep;
  std::vector<int> chain;  // delta operators in application order, from the point class
};

NamedClass named_class(const FlagShape& s, const std::vector<SchubertClass>& basis, const std::string& text) {
  std::string t = text;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty() || t.front() == '(' || t == "∅") {
    if (!s.is_grassmannian()) throw ParseError("partitions name classes of Grassmannians only");
    const auto& c = class_of(basis, element_of_partition(parse_partition(t.empty() ? "()" : t), s));
    return {c.w, c.rep, {c.word.rbegin(), c.word.rend()}};
  }
  if (t.front() == '[') {
    const auto& c = class_of(basis, WeylElement::parse(t));
    return {c.w, c.rep, {c.word.rbegin(), c.word.rend()}};
  }
  std::vector<int> chain = parse_word(t == "-" ? "" : t);
  for (int i : chain)
    if (i < 1 || i >= s.n) throw IndexOutOfRange("delta index " + std::to_string(i) + " outside 1.." + std::to_string(s.n - 1));
  std::vector<int> word(chain.rbegin(), chain.rend());
  return {after_deltas(basis, chain), schubert_representative(s, word), chain};
}

std::string label(const WeylElement& w, const FlagShape& s) {
  return s.is_grassmannian() ? partition_to_string(partition_of(w, s)) : w.to_string();
}

}  // namespace

int cmd_present(const Globals& g, const std::string& shape, const std::string& flavor, std::ostream& out) {
  FlagShape s = FlagShape::parse(shape);
  Presentation p = make_presentation(s, parse_flavor(flavor));
  json j = to_json(p);
  std::string latex;
  if (g.sl) {
    json rels = json::array();
    std::ostringstream os;
    for (const auto& r : p.relations) {
      QLocalized v = sl_specialize(r.value);
      if (v.is_zero()) continue;
      rels.push_back(to_json(v));
      os << to_latex(v) << " = 0 \\\\\n";
    }
    j["relations"] = rels;
    j["sl"] = true;
    latex = os.str();
  } else {
    latex = to_latex(p);
  }
  emit(g, j, latex, out);
  return Ok;
}

int cmd_schubert(const Globals& g, const std::string& shape, const std::optional<std::string>& word,
                 const std::optional<std::string>& element, std::ostream& out) {
  FlagShape s = FlagShape::parse(shape);
  auto basis = schubert_basis(s);
  if (word && element) throw ParseError("give either --word or --element");
  std::string el = element.value_or("");
  if (element && !el.empty() && el.front() != '(' && el.front() != '[' && el != "∅") el = "[" + el + "]";
  NamedClass c = element ? named_class(s, basis, el) : named_class(s, basis, word ? (word->empty() ? "-" : *word) : "-");
  LaurentPoly rep = g.sl ? sl_specialize(QLocalized(c.rep.poly)).as_poly() : c.rep.poly;
  json j{{"shape", s.to_string()},
         {"class", label(c.w, s)},
         {"weyl_element", c.w.one_line()},
         {"delta_chain", c.chain},
         {"representative", to_json(rep)}};
  emit(g, j, "\\mathcal{O}^{" + label(c.w, s) + "} = " + to_latex(rep), out);
  return Ok;
}

namespace {

json expansion_json(const Globals& g, const std::vector<SchubertClass>& basis, const FlagShape& s,
                    const std::map<WeylElement, QLocalized>& expansion, std::ostream& tex) {
  json coeffs = json::object();
  bool first = true;
  for (const auto& c : basis) {
    auto it = expansion.find(c.w);
    if (it == expansion.end()) continue;
    QLocalized coef = maybe_sl(g, it->second);
    if (coef.is_zero()) continue;
    coeffs[label(c.w, s)] = to_json(coef);
    tex << (first ? "" : " + ") << "\\left(" << to_latex(coef) << "\\right)\\mathcal{O}^{" << label(c.w, s) << "}";
    first = false;
  }
  if (first) tex << "0";
  return coeffs;
}

QuotientRing make_ring(const Globals& g, const FlagShape& s, const std::string& flavor) {
  QuotientOptions opt;
  opt.q_degree_cap = g.q_cap;
  return QuotientRing(make_presentation(s, parse_flavor(flavor)), opt);
}

}  // namespace

int cmd_multiply(const Globals& g, const std::string& shape, const std::string& a, const std::string& b,
                 const std::string& flavor, std::ostream& out) {
  FlagShape s = FlagShape::parse(shape);
  auto basis = schubert_basis(s);
  NamedClass ca = named_class(s, basis, a);
  NamedClass cb = named_class(s, basis, b);
  QuotientRing R = make_ring(g, s, flavor);
  QLocalized prod = quantum_product(ca.rep, cb.rep, R);
  std::ostringstream tex;
  tex << "\\mathcal{O}^{" << label(ca.w, s) << "} \\star \\mathcal{O}^{" << label(cb.w, s) << "} = ";
  json coeffs = expansion_json(g, basis, s, schubert_expand(prod, basis, R), tex);
  json j{{"shape", s.to_string()},
         {"flavor", flavor_name(R.presentation().flavor)},
         {"a", label(ca.w, s)},
         {"b", label(cb.w, s)},
         {"q_degree_cap", R.q_degree_cap()},
         {"product", to_json(maybe_sl(g, prod))},
         {"schubert_coefficients", coeffs}};
  emit(g, j, tex.str(), out);
  return Ok;
}

int cmd_expand(const Globals& g, const std::string& shape, const std::string& poly, const std::string& flavor,
               std::ostream& out) {
  FlagShape s = FlagShape::parse(shape);
  auto basis = schubert_basis(s);
  QuotientRing R = make_ring(g, s, flavor);
  QLocalized f = R.from_whitney_generators(parse_expression(shape_registry(s), poly));
  std::ostringstream tex;
  tex << to_latex(f) << " = ";
  QLocalized nf = R.normal_form(f);
  json coeffs = expansion_json(g, basis, s, schubert_expand(nf, basis, R), tex);
  json j{{"shape", s.to_string()},
         {"flavor", flavor_name(R.presentation().flavor)},
         {"q_degree_cap", R.q_degree_cap()},
         {"product", to_json(maybe_sl(g, nf))},
         {"schubert_coefficients", coeffs}};
  emit(g, j, tex.str(), out);
  return Ok;
}

int cmd_toda_ham(const Globals& g, int n, int k, const std::string& what, std::ostream& out) {
  static const std::vector<std::string> kinds{"operators", "symbols", "commutators", "eigenvalues", "all"};
  if (std::find(kinds.begin(), kinds.end(), what) == kinds.end()) throw ParseError("unknown --what " + what);
  if (n < 1) throw IndexOutOfRange("need n >= 1");
  if (k < 0 || k > n) throw IndexOutOfRange("need 0 <= k <= n");
  auto want = [&](const char* w) { return what == "all" || what == w; };
  std::vector<int> ks;
  for (int i = 1; i <= n; ++i)
    if (k == 0 || i == k) ks.push_back(i);
  json j{{"n", n}};
  std::ostringstream tex;
  if (want("operators") || want("symbols") || want("eigenvalues")) {
    json list = json::array();
    for (int i : ks) {
      json h{{"k", i}};
      if (want("operators")) {
        auto hx = toda_hamiltonian_x(n, i);
        auto hq = hamiltonian_hat_Q(n, i);
        h["x_form"] = hx.to_json();
        h["Q_form"] = hq.to_json();
        tex << "H_{" << i << "} = " << hx.to_latex() << " \\\\\n";
        tex << "\\widehat{H}_{" << i << "} = " << hq.to_latex() << " \\\\\n";
      }
      if (want("symbols")) {
        QLocalized sym = maybe_sl(g, symbol_at_q1(hamiltonian_hat_Q(n, i)));
        h["symbol"] = to_json(sym);
        tex << "\\sigma(\\widehat{H}_{" << i << "}) = " << to_latex(sym) << " \\\\\n";
      }
      if (want("eigenvalues")) {
        LaurentPoly e = eigenvalue_mod_Q(n, i);
        h["eigenvalue_mod_Q"] = to_json(e);
        tex << "\\lambda_{" << i << "} \\equiv " << to_latex(e) << " \\\\\n";
      }
      list.push_back(std::move(h));
    }
    j["hamiltonians"] = std::move(list);
  }
  if (want("commutators")) {
    json list = json::array();
    for (auto c : {ShiftCoordinates::X, ShiftCoordinates::Q}) {
      const char* tag = c == ShiftCoordinates::X ? "x" : "Q";
      for (const auto& h : commutator_checks(n, c)) {
        if (k != 0 && h.k != k && h.l != k) continue;
        list.push_back({{"coordinates", tag}, {"k", h.k}, {"l", h.l}, {"residual_terms", h.residual_terms}});
        tex << "[H_{" << h.k << "}, H_{" << h.l << "}]_{" << tag << "} \\text{ has " << h.residual_terms
            << " terms} \\\\\n";
      }
    }
    j["commutators"] = std::move(list);
  }
  emit(g, j, tex.str(), out);
  return Ok;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::string& filter, const std::string& fixtures,
               std::ostream& out) {
  if (!is_suite_name(suite)) throw ParseError("unknown suite " + suite + " (golden, properties, toda-ham, all)");
  auto results = run_suite(suite, g.seed, fixtures);
  if (!filter.empty())
    results.erase(std::remove_if(results.begin(), results.end(),
                                 [&](const CheckResult& r) { return r.id.find(filter) == std::string::npos; }),
                  results.end());
  std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    return a.suite != b.suite ? a.suite < b.suite : a.id < b.id;
  });
  std::size_t failed = 0;
  const CheckResult* first_failure = nullptr;
  for (const auto& r : results)
    if (!r.ok && !failed++) first_failure = &r;
  if (g.format == Format::Json) {
    json rows = json::array();
    for (const auto& r : results)
      rows.push_back({{"suite", r.suite}, {"id", r.id}, {"anchor", r.anchor}, {"ok", r.ok}, {"detail", r.detail}});
    out << json{{"seed", g.seed}, {"passed", results.size() - failed}, {"failed", failed}, {"results", rows}}.dump(2)
        << "\n";
  } else {
    for (const auto& r : results) {
      out << (r.ok ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << r.suite << std::setw(28) << r.id;
      if (!r.anchor.empty()) out << " [" << r.anchor << "]";
      out << "\n";
      if (!r.ok) out << "      " << r.detail << "\n";
    }
    out << results.size() - failed << " passed, " << failed << " failed (seed " << g.seed << ")\n";
    if (first_failure)
      out << "first mismatch: " << first_failure->id << " [" << first_failure->anchor << "]\n  "
          << first_failure->detail << "\n";
  }
  return failed ? Failed : Ok;
}

}  // namespace qkflag::cli
