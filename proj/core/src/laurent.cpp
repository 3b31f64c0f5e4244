#include "qkflag/laurent.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

namespace {

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_exp(a[i], b[i]);
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(RegistryPtr reg, const mpq_class& c) {
  LaurentPoly p(reg);
  if (c != 0) p.terms_.emplace(Exponents(reg->size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(RegistryPtr reg, std::size_t i, int power) {
  if (i >= reg->size()) throw IndexOutOfRange("variable index " + std::to_string(i));
  Exponents e(reg->size(), 0);
  e[i] = power;
  return monomial(std::move(reg), std::move(e));
}

LaurentPoly LaurentPoly::variable(RegistryPtr reg, std::string_view name, int power) {
  auto i = reg->index(name);
  return variable(std::move(reg), i, power);
}

LaurentPoly LaurentPoly::monomial(RegistryPtr reg, Exponents e, const mpq_class& c) {
  LaurentPoly p(reg);
  if (e.size() != reg->size()) throw RegistryMismatch("exponent vector length");
  p.check_signs(e);
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

void LaurentPoly::check_signs(const Exponents& e) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !reg_->laurent(i))
      throw SignViolation("negative exponent on " + reg_->var(i).name);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

mpq_class LaurentPoly::constant_term() const {
  if (!reg_) return 0;
  return coefficient(Exponents(reg_->size(), 0));
}

mpq_class LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& e, const mpq_class& c) {
  if (c == 0) return;
  if (e.size() != reg_->size()) throw RegistryMismatch("exponent vector length");
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) {
    check_signs(e);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (!reg_) reg_ = o.reg_;
  require_compatible(reg_, o.reg_);
  for (const auto& [e, c] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (!reg_) reg_ = o.reg_;
  require_compatible(reg_, o.reg_);
  for (const auto& [e, c] : o.terms_) {
    auto [it, fresh] = terms_.try_emplace(e, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return LaurentPoly(a.reg_ ? a.reg_ : b.reg_);
  require_compatible(a.reg_, b.reg_);
  LaurentPoly r(a.reg_);
  const std::size_t n = a.reg_->size();
  Exponents e(n);
  mpq_class c;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = add_exp(ea[i], eb[i]);
      c = ca * cb;
      auto [it, fresh] = r.terms_.try_emplace(e, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.empty() && b.terms_.empty()) return true;
  if (!compatible(a.reg_, b.reg_)) return false;
  return a.terms_ == b.terms_;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result = constant(reg_, 1);
  LaurentPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::mul_monomial(const Exponents& e, const mpq_class& c) const {
  LaurentPoly r(reg_);
  if (c == 0) return r;
  for (const auto& [ea, ca] : terms_) {
    auto ne = add_exps(ea, e);
    r.check_signs(ne);
    r.terms_.emplace_hint(r.terms_.end(), std::move(ne), ca * c);
  }
  return r;
}

Exponents LaurentPoly::min_exponents() const {
  Exponents m(reg_ ? reg_->size() : 0, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      m = e;
      first = false;
      continue;
    }
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

LaurentPoly LaurentPoly::exact_divide(const LaurentPoly& d) const {
  if (d.is_zero()) throw InexactDivision("division by zero");
  if (is_zero()) return LaurentPoly(reg_ ? reg_ : d.reg_);
  require_compatible(reg_, d.reg_);
  const std::size_t n = reg_->size();

  auto neg = [](const Exponents& e) {
    Exponents r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = -e[i];
    return r;
  };
  auto result_signs_ok = [&](const Exponents& e) {
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] < 0 && !reg_->laurent(i)) return false;
    return true;
  };

  if (d.terms_.size() == 1) {
    const auto& [de, dc] = *d.terms_.begin();
    LaurentPoly q(reg_);
    auto shift = neg(de);
    for (const auto& [e, c] : terms_) {
      auto ne = add_exps(e, shift);
      if (!result_signs_ok(ne)) throw InexactDivision("quotient leaves the ring");
      q.terms_.emplace_hint(q.terms_.end(), std::move(ne), c / dc);
    }
    return q;
  }

  // reduce to polynomial division: d' = d / x^md has no monomial factor
  Exponents md = d.min_exponents();
  Exponents mf = min_exponents();
  LaurentPoly dp = d.mul_monomial_unchecked(neg(md));
  LaurentPoly r = mul_monomial_unchecked(neg(mf));
  LaurentPoly q(reg_);
  const auto& [lde, ldc] = *dp.terms_.rbegin();
  Exponents te(n);
  while (!r.terms_.empty()) {
    const auto& [lre, lrc] = *r.terms_.rbegin();
    for (std::size_t i = 0; i < n; ++i) {
      te[i] = lre[i] - lde[i];
      if (te[i] < 0) throw InexactDivision("nonzero remainder");
    }
    mpq_class tc = lrc / ldc;
    q.terms_.emplace(te, tc);
    for (const auto& [e, c] : dp.terms_) {
      Exponents pe = add_exps(e, te);
      mpq_class pc = c * tc;
      auto [it, fresh] = r.terms_.try_emplace(std::move(pe), -pc);
      if (!fresh) {
        it->second -= pc;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  Exponents shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = add_exp(mf[i], -md[i]);
  LaurentPoly out(reg_);
  for (const auto& [e, c] : q.terms_) {
    auto ne = add_exps(e, shift);
    if (!result_signs_ok(ne)) throw InexactDivision("quotient leaves the ring");
    out.terms_.emplace_hint(out.terms_.end(), std::move(ne), c);
  }
  return out;
}

LaurentPoly LaurentPoly::mul_monomial_unchecked(const Exponents& e) const {
  LaurentPoly r(reg_);
  for (const auto& [ea, ca] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exps(ea, e), ca);
  return r;
}

bool LaurentPoly::involves(std::size_t i) const {
  for (const auto& [e, c] : terms_)
    if (e[i] != 0) return true;
  return false;
}

int LaurentPoly::degree(std::size_t i) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    d = first ? e[i] : std::max(d, e[i]);
    first = false;
  }
  return d;
}

int LaurentPoly::min_degree(std::size_t i) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    d = first ? e[i] : std::min(d, e[i]);
    first = false;
  }
  return d;
}

int LaurentPoly::total_degree(const std::vector<std::size_t>& vars) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto v : vars) s = add_exp(s, e[v]);
    d = first ? s : std::max(d, s);
    first = false;
  }
  return d;
}

LaurentPoly LaurentPoly::coefficient_of(std::size_t i, int k) const {
  LaurentPoly r(reg_);
  for (const auto& [e, c] : terms_) {
    if (e[i] != k) continue;
    Exponents ne = e;
    ne[i] = 0;
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

std::map<int, LaurentPoly> LaurentPoly::collect(std::size_t i) const {
  std::map<int, LaurentPoly> out;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[i] = 0;
    auto [it, fresh] = out.try_emplace(e[i], reg_);
    it->second.terms_.emplace(std::move(ne), c);
  }
  return out;
}

LaurentPoly LaurentPoly::evaluate(std::size_t i, const mpq_class& v) const {
  LaurentPoly r(reg_);
  for (const auto& [e, c] : terms_) {
    mpq_class f = 1;
    int k = e[i];
    if (k != 0 && v == 0) {
      if (k < 0) throw InexactDivision("evaluating a negative power at zero");
      continue;
    }
    mpq_class base = k < 0 ? mpq_class(1 / v) : v;
    for (int s = 0; s < std::abs(k); ++s) f *= base;
    Exponents ne = e;
    ne[i] = 0;
    r.add_term(ne, c * f);
  }
  return r;
}

LaurentPoly LaurentPoly::swap_variables(std::size_t a, std::size_t b) const {
  LaurentPoly r(reg_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    std::swap(ne[a], ne[b]);
    r.terms_.emplace(std::move(ne), c);
  }
  if (!reg_->laurent(a) || !reg_->laurent(b))
    for (const auto& t : r.terms_) r.check_signs(t.first);
  return r;
}

LaurentPoly LaurentPoly::map_terms(const std::function<void(Exponents&, mpq_class&)>& f) const {
  LaurentPoly r(reg_);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    mpq_class nc = c;
    f(ne, nc);
    r.add_term(ne, nc);
  }
  return r;
}

LaurentPoly LaurentPoly::rebase(const RegistryPtr& target) const {
  if (compatible(reg_, target)) {
    LaurentPoly r(*this);
    r.reg_ = target;
    return r;
  }
  LaurentPoly r(target);
  if (terms_.empty()) return r;
  std::vector<std::size_t> map(reg_->size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < reg_->size(); ++i) {
    if (auto j = target->find(reg_->var(i).name)) map[i] = *j;
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == static_cast<std::size_t>(-1))
        throw RegistryMismatch("variable " + reg_->var(i).name + " missing in target registry");
      ne[map[i]] = e[i];
    }
    r.add_term(ne, c);
  }
  return r;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = abs(c);
    bool unit = true;
    for (int x : e) unit = unit && x == 0;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool printed = false;
    if (a != 1 || unit) {
      os << a.get_str();
      printed = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << reg_->var(i).name;
      if (e[i] != 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

LaurentPoly elem_sym(const std::vector<LaurentPoly>& vars, int l) {
  if (l < 0 || l > static_cast<int>(vars.size()))
    throw IndexOutOfRange("elementary symmetric degree " + std::to_string(l));
  if (vars.empty()) return LaurentPoly();
  RegistryPtr reg = vars.front().registry();
  std::vector<LaurentPoly> e(l + 1, LaurentPoly(reg));
  e[0] = LaurentPoly::constant(reg, 1);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (int m = std::min<int>(l, i + 1); m >= 1; --m) e[m] += e[m - 1] * vars[i];
  return e[l];
}

LaurentPoly lambda_from_generators(const RegistryPtr& reg, std::size_t yvar,
                                   const std::vector<LaurentPoly>& gens) {
  LaurentPoly r = LaurentPoly::constant(reg, 1);
  for (std::size_t l = 0; l < gens.size(); ++l)
    r += gens[l] * LaurentPoly::variable(reg, yvar, static_cast<int>(l + 1));
  return r;
}

LaurentPoly one_minus(const RegistryPtr& reg, std::size_t var, int power) {
  LaurentPoly base = LaurentPoly::constant(reg, 1) - LaurentPoly::variable(reg, var);
  return base.pow(static_cast<unsigned>(power));
}

bool divisible_by_one_minus(const LaurentPoly& f, std::size_t var) {
  // f is divisible by (1 - v) iff f|_{v=1} = 0
  std::map<Exponents, mpq_class> sums;
  for (const auto& [e, c] : f.terms()) {
    Exponents ne = e;
    ne[var] = 0;
    sums[ne] += c;
  }
  for (const auto& [e, c] : sums)
    if (c != 0) return false;
  return true;
}

LaurentPoly divide_by_one_minus(const LaurentPoly& f, std::size_t var) {
  // f = (1 - v) s  with  s_d = sum_{e <= d} f_e, grouped by the other exponents
  std::map<Exponents, std::map<int, mpq_class>> groups;
  for (const auto& [e, c] : f.terms()) {
    Exponents ne = e;
    ne[var] = 0;
    groups[ne][e[var]] = c;
  }
  LaurentPoly s(f.registry());
  for (auto& [base, series] : groups) {
    mpq_class acc = 0;
    int lo = series.begin()->first;
    int hi = series.rbegin()->first;
    for (int d = lo; d < hi; ++d) {
      auto it = series.find(d);
      if (it != series.end()) acc += it->second;
      if (acc != 0) {
        Exponents ne = base;
        ne[var] = d;
        s.add_term(ne, acc);
      }
    }
    acc += series.rbegin()->second;
    if (acc != 0) throw InexactDivision("not divisible by (1 - " + f.registry()->var(var).name + ")");
  }
  return s;
}

}  // namespace qkflag
