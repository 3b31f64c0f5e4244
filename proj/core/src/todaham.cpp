#include "qkflag/todaham.hpp"

#include <sstream>
#include <stdexcept>

#include "qkflag/errors.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/quotient.hpp"
#include "qkflag/shape.hpp"

namespace qkflag {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw IndexOutOfRange("need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

LaurentPoly one_minus_q(const RegistryPtr& reg, std::size_t q, int m) {
  LaurentPoly r = LaurentPoly::constant(reg, 1);
  LaurentPoly f = one_minus(reg, q);
  for (int i = 0; i < m; ++i) r = r * f;
  return r;
}

// all subsets of {1..n} of size k, increasing
std::vector<std::vector<int>> chains(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> c;
    for (int i = 1; i <= n; ++i)
      if (mask & (1u << (i - 1))) c.push_back(i);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

DiffOperator::DiffOperator(int n, ShiftCoordinates c) : n_(n), coords_(c) {
  if (n < 1) throw IndexOutOfRange("operator needs n >= 1");
  reg_ = c == ShiftCoordinates::X ? chain_x_registry(n) : chain_q_registry(n);
  qvar_ = reg_->index(Sort::q);
  slot_vars_.assign(n, npos);
  for (int i = 1; i <= n; ++i) {
    if (c == ShiftCoordinates::X)
      slot_vars_[i - 1] = reg_->index(Sort::x, i);
    else if (i < n)
      slot_vars_[i - 1] = reg_->index(Sort::Q, i);
  }
}

DiffOperator DiffOperator::identity(int n, ShiftCoordinates c) {
  DiffOperator d(n, c);
  d.add_term(Shift(n, 0), LaurentPoly::constant(d.reg_, 1));
  return d;
}

DiffOperator DiffOperator::shift(int n, ShiftCoordinates c, const Shift& a) {
  DiffOperator d(n, c);
  d.add_term(a, LaurentPoly::constant(d.reg_, 1));
  return d;
}

DiffOperator DiffOperator::multiplication(int n, ShiftCoordinates c, const LaurentPoly& f) {
  DiffOperator d(n, c);
  d.add_term(Shift(n, 0), f);
  return d;
}

std::size_t DiffOperator::shift_variable(int i) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("shift slot " + std::to_string(i));
  return slot_vars_[i - 1];
}

void DiffOperator::add_term(const Shift& a, const LaurentPoly& coef) {
  if (static_cast<int>(a.size()) != n_) throw IndexOutOfRange("shift vector has wrong length");
  if (coef.is_zero()) return;
  LaurentPoly c = coef.registry() == reg_ ? coef : coef.rebase(reg_);
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, std::move(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffOperator DiffOperator::with_pole(int m) const {
  if (m < 0) throw IndexOutOfRange("negative pole order");
  DiffOperator d(*this);
  d.pole_ += m;
  d.normalize_pole();
  return d;
}

void DiffOperator::normalize_pole() {
  if (terms_.empty()) {
    pole_ = 0;
    return;
  }
  while (pole_ > 0) {
    for (const auto& [a, c] : terms_)
      if (!divisible_by_one_minus(c, qvar_)) return;
    for (auto& [a, c] : terms_) c = divide_by_one_minus(c, qvar_);
    --pole_;
  }
}

LaurentPoly DiffOperator::conjugate(const Shift& a, const LaurentPoly& f) const {
  LaurentPoly g = f.registry() == reg_ ? f : f.rebase(reg_);
  return g.map_terms([&](Exponents& e, mpq_class&) {
    int s = 0;
    for (int i = 0; i < n_; ++i)
      if (slot_vars_[i] != npos && a[i] != 0) s = add_exp(s, mul_exp(a[i], e[slot_vars_[i]]));
    e[qvar_] = add_exp(e[qvar_], s);
  });
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (o.n_ != n_ || o.coords_ != coords_) throw RegistryMismatch("operators on different coordinates");
  int m = std::max(pole_, o.pole_);
  if (m > pole_) {
    LaurentPoly f = one_minus_q(reg_, qvar_, m - pole_);
    for (auto& [a, c] : terms_) c = c * f;
    pole_ = m;
  }
  LaurentPoly g = one_minus_q(reg_, qvar_, m - o.pole_);
  for (const auto& [a, c] : o.terms_) add_term(a, c * g);
  normalize_pole();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += mpq_class(-1) * o; }

DiffOperator operator*(const mpq_class& c, DiffOperator a) {
  if (c == 0) return DiffOperator(a.n_, a.coords_);
  for (auto& [s, t] : a.terms_) t *= c;
  return a;
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.n_ != b.n_ || a.coords_ != b.coords_) throw RegistryMismatch("operators on different coordinates");
  DiffOperator r(a.n_, a.coords_);
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      DiffOperator::Shift s(a.n_);
      for (int i = 0; i < a.n_; ++i) s[i] = add_exp(sa[i], sb[i]);
      r.add_term(s, ca * a.conjugate(sa, cb));
    }
  }
  r.pole_ = a.pole_ + b.pole_;
  r.normalize_pole();
  return r;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  return a.n_ == b.n_ && a.coords_ == b.coords_ && a.pole_ == b.pole_ && a.terms_ == b.terms_;
}

LaurentPoly DiffOperator::apply(const LaurentPoly& f) const {
  LaurentPoly r(reg_);
  for (const auto& [a, c] : terms_) r += c * conjugate(a, f);
  for (int i = 0; i < pole_; ++i) {
    if (!divisible_by_one_minus(r, qvar_)) throw PoleAtQ1("result keeps a factor 1/(1-q)");
    r = divide_by_one_minus(r, qvar_);
  }
  return r;
}

DiffOperator DiffOperator::invert_q() const {
  DiffOperator d(n_, coords_);
  LaurentPoly fix = LaurentPoly::constant(reg_, 1);
  if (pole_ > 0) {
    Exponents e(reg_->size(), 0);
    e[qvar_] = pole_;
    fix = LaurentPoly::monomial(reg_, e, pole_ % 2 ? -1 : 1);
  }
  for (const auto& [a, c] : terms_) {
    Shift s(n_);
    for (int i = 0; i < n_; ++i) s[i] = -a[i];
    LaurentPoly ci = c.map_terms([&](Exponents& e, mpq_class&) { e[qvar_] = -e[qvar_]; });
    d.add_term(s, ci * fix);
  }
  d.pole_ = pole_;
  d.normalize_pole();
  return d;
}

json DiffOperator::to_json() const {
  json j;
  j["n"] = n_;
  j["coordinates"] = coords_ == ShiftCoordinates::X ? "x" : "Q";
  j["pole_order"] = pole_;
  json terms = json::array();
  for (const auto& [a, c] : terms_) terms.push_back({{"shift", a}, {"coefficient", qkflag::to_json(c)}});
  j["terms"] = std::move(terms);
  return j;
}

std::string DiffOperator::to_latex() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "\\left(" << qkflag::to_latex(c) << "\\right)";
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      if (coords_ == ShiftCoordinates::X) {
        os << " T_{" << i + 1 << "}";
        if (a[i] != 1) os << "^{" << a[i] << "}";
      } else {
        std::string m = a[i] == 1 ? "" : a[i] == -1 ? "-" : std::to_string(a[i]);
        os << " q^{" << m << "Q_{" << i + 1 << "}\\partial_{Q_{" << i + 1 << "}}}";
      }
    }
  }
  std::string body = os.str();
  if (pole_ == 0) return body;
  return "\\frac{1}{(1-q)^{" + std::to_string(pole_) + "}}\\left(" + body + "\\right)";
}

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) { return a * b; }

DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }

DiffOperator toda_hamiltonian_x(int n, int k) {
  check_nk(n, k);
  DiffOperator h(n, ShiftCoordinates::X);
  const auto& reg = h.registry();
  for (const auto& c : chains(n, k)) {
    LaurentPoly coef = LaurentPoly::constant(reg, 1);
    DiffOperator::Shift s(n, 0);
    int prev = 0;
    for (int i : c) {
      s[i - 1] = 1;
      if (i - prev != 1) {
        Exponents e(reg->size(), 0);
        e[reg->index(Sort::x, i)] = 1;
        e[reg->index(Sort::x, i - 1)] = -1;
        coef = coef * (LaurentPoly::constant(reg, 1) - LaurentPoly::monomial(reg, e));
      }
      prev = i;
    }
    h.add_term(s, coef);
  }
  return h;
}

namespace {

DiffOperator::Shift chain_shift(int n, const std::vector<int>& c) {
  DiffOperator::Shift s(n, 0);
  for (int i : c) {
    s[i - 1] += 1;
    if (i >= 2) s[i - 2] -= 1;
  }
  return s;
}

}  // namespace

DiffOperator hamiltonian_hat_Q(int n, int k) {
  check_nk(n, k);
  DiffOperator h(n, ShiftCoordinates::Q);
  const auto& reg = h.registry();
  std::size_t q = reg->index(Sort::q);
  for (const auto& c : chains(n, k)) {
    LaurentPoly coef = LaurentPoly::constant(reg, 1);
    int prev = 0;
    for (int i : c) {
      if (i - prev != 1) {
        Exponents e(reg->size(), 0);
        e[reg->index(Sort::Q, i - 1)] = 1;
        e[q] = -1;
        coef = coef * (LaurentPoly::constant(reg, 1) - LaurentPoly::monomial(reg, e));
      }
      prev = i;
    }
    h.add_term(chain_shift(n, c), coef);
  }
  return h;
}

DiffOperator hamiltonian_hat_Q_shifts_left(int n, int k) {
  check_nk(n, k);
  DiffOperator h(n, ShiftCoordinates::Q);
  const auto& reg = h.registry();
  for (const auto& c : chains(n, k)) {
    LaurentPoly coef = LaurentPoly::constant(reg, 1);
    int prev = 0;
    for (int i : c) {
      if (i - prev != 1) coef = coef * one_minus(reg, reg->index(Sort::Q, i - 1));
      prev = i;
    }
    h += DiffOperator::shift(n, ShiftCoordinates::Q, chain_shift(n, c)) *
         DiffOperator::multiplication(n, ShiftCoordinates::Q, coef);
  }
  return h;
}

LaurentPoly q_to_x(const LaurentPoly& f, int n) {
  auto src = chain_q_registry(n);
  auto dst = chain_x_registry(n);
  LaurentPoly g = f.registry() == src ? f : f.rebase(src);
  std::size_t sq = src->index(Sort::q);
  std::size_t dq = dst->index(Sort::q);
  LaurentPoly r(dst);
  for (const auto& [e, c] : g.terms()) {
    for (int i = 1; i <= n; ++i)
      if (e[src->index(Sort::P, i)] != 0) throw RegistryMismatch("q_to_x: P variables have no x-coordinate image");
    Exponents ne(dst->size(), 0);
    ne[dq] = e[sq];
    for (int i = 1; i < n; ++i) {
      int m = e[src->index(Sort::Q, i)];
      ne[dq] = add_exp(ne[dq], -m);
      ne[dst->index(Sort::x, i + 1)] = add_exp(ne[dst->index(Sort::x, i + 1)], m);
      ne[dst->index(Sort::x, i)] = add_exp(ne[dst->index(Sort::x, i)], -m);
    }
    r.add_term(ne, c);
  }
  return r;
}

LaurentPoly transported_action(const DiffOperator& hatH, const LaurentPoly& f) {
  if (hatH.coordinates() != ShiftCoordinates::Q) throw RegistryMismatch("transported_action needs a Q-coordinate operator");
  return q_to_x(hatH.invert_q().apply(f), hatH.n());
}

QLocalized symbol_at_q1(const DiffOperator& H) {
  if (H.coordinates() != ShiftCoordinates::Q) throw RegistryMismatch("symbols are taken in Q coordinates");
  if (H.pole_order() > 0) throw PoleAtQ1("operator keeps a factor 1/(1-q)^" + std::to_string(H.pole_order()));
  int n = H.n();
  const auto& reg = H.registry();
  auto dst = shape_registry(FlagShape::full(n));
  LaurentPoly out(dst);
  for (const auto& [a, c] : H.terms()) {
    Exponents pe(reg->size(), 0);
    for (int i = 1; i <= n; ++i) pe[reg->index(Sort::P, i)] = a[i - 1];
    out += c.evaluate(H.q_index(), 1).mul_monomial(pe).rebase(dst);
  }
  return QLocalized(out);
}

JLeadingTerm JLeadingTerm::standard(int n) {
  auto reg = chain_q_registry(n);
  return {n, one_minus(reg, reg->index(Sort::q))};
}

JLeadingTerm apply(const DiffOperator& H, const JLeadingTerm& J) {
  if (H.coordinates() != ShiftCoordinates::Q || H.n() != J.n)
    throw RegistryMismatch("J transforms under Q-coordinate operators of the same rank");
  const auto& reg = H.registry();
  LaurentPoly s(reg);
  for (const auto& [a, c] : H.terms()) {
    Exponents pe(reg->size(), 0);
    for (int i = 1; i <= H.n(); ++i) pe[reg->index(Sort::P, i)] = a[i - 1];
    s += c * H.conjugate(a, J.scalar).mul_monomial(pe);
  }
  for (int i = 0; i < H.pole_order(); ++i) {
    if (!divisible_by_one_minus(s, H.q_index())) throw PoleAtQ1("J scalar keeps a factor 1/(1-q)");
    s = divide_by_one_minus(s, H.q_index());
  }
  return {J.n, s};
}

LaurentPoly eigenvalue_mod_Q(int n, int k) {
  check_nk(n, k);
  auto J = JLeadingTerm::standard(n);
  auto HJ = apply(hamiltonian_hat_Q(n, k), J);
  const auto& reg = HJ.scalar.registry();
  LaurentPoly s = HJ.scalar;
  for (int i = 1; i < n; ++i) s = s.evaluate(reg->index(Sort::Q, i), 0);
  std::size_t q = reg->index(Sort::q);
  if (!divisible_by_one_minus(s, q)) throw InexactDivision("leading term is not an eigenvector mod Q");
  s = divide_by_one_minus(s, q);
  if (s.involves(q)) throw InexactDivision("eigenvalue mod Q depends on q");
  return s.rebase(shape_registry(FlagShape::full(n)));
}

LaurentPoly p_ratio_elementary(int n, int k) {
  check_nk(n, k);
  auto reg = shape_registry(FlagShape::full(n));
  std::vector<LaurentPoly> ratios;
  for (int i = 1; i <= n; ++i) {
    LaurentPoly r = LaurentPoly::variable(reg, reg->index(Sort::P, i));
    if (i >= 2) r = r * LaurentPoly::variable(reg, reg->index(Sort::P, i - 1), -1);
    ratios.push_back(r);
  }
  return elem_sym(ratios, k);
}

std::vector<HamiltonianCheck> commutator_checks(int n, ShiftCoordinates c) {
  std::vector<DiffOperator> H;
  for (int k = 1; k <= n; ++k) H.push_back(c == ShiftCoordinates::X ? toda_hamiltonian_x(n, k) : hamiltonian_hat_Q(n, k));
  std::vector<HamiltonianCheck> out;
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      auto r = op_commutator(H[k - 1], H[l - 1]);
      out.push_back({n, k, l, r.is_zero(), r.size()});
    }
  }
  return out;
}

namespace {

LaurentPoly wedge_T(int n, int k) {
  auto reg = shape_registry(FlagShape::full(n));
  std::vector<LaurentPoly> t;
  for (int i = 1; i <= n; ++i) t.push_back(LaurentPoly::variable(reg, reg->index(Sort::T, i)));
  return elem_sym(t, k);
}

}  // namespace

bool eigenvalue_matches_wedge_classically(int n, int k) {
  check_nk(n, k);
  if (n < 2) return eigenvalue_mod_Q(n, k) == wedge_T(n, k);
  Presentation p = toda_presentation_fln_P(n);
  auto q0 = specialize_q0(p);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    p.relations[i].value = q0[i];
    p.relations[i].cleared = q0[i].cleared();
  }
  QuotientOptions opt;
  opt.use_cache = false;
  QuotientRing R(p, opt);
  return R.reduces_to_zero(QLocalized(eigenvalue_mod_Q(n, k) - wedge_T(n, k)));
}

bool symbol_reduces_to_wedge(int n, int k) {
  check_nk(n, k);
  if (n < 2) return symbol_at_q1(hamiltonian_hat_Q(n, k)) == QLocalized(wedge_T(n, k));
  auto s = FlagShape::full(n);
  QLocalized g = p_to_toda(symbol_at_q1(hamiltonian_hat_Q(n, k)), n);
  return toda_ring(s).reduces_to_zero(g - QLocalized(wedge_T(n, k)));
}

}  // namespace qkflag
