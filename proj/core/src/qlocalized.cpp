#include "qkflag/qlocalized.hpp"

#include <ostream>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

namespace {

LaurentPoly times_one_minus(LaurentPoly f, const RegistryPtr& reg, std::size_t var, int m) {
  if (m <= 0 || f.is_zero()) return f;
  return f * one_minus(reg, var, m);
}

QLocalized::Denominator max_den(const QLocalized::Denominator& a, const QLocalized::Denominator& b) {
  QLocalized::Denominator r = a;
  for (const auto& [j, m] : b) {
    auto& slot = r[j];
    slot = std::max(slot, m);
  }
  return r;
}

LaurentPoly lift_to(const LaurentPoly& num, const QLocalized::Denominator& from,
                    const QLocalized::Denominator& to, const RegistryPtr& reg) {
  LaurentPoly r = num;
  for (const auto& [j, m] : to) {
    auto it = from.find(j);
    int have = it == from.end() ? 0 : it->second;
    r = times_one_minus(std::move(r), reg, j, m - have);
  }
  return r;
}

}  // namespace

QLocalized::QLocalized(LaurentPoly num) : num_(std::move(num)) {}

QLocalized::QLocalized(LaurentPoly num, Denominator den) : num_(std::move(num)), den_(std::move(den)) {
  for (const auto& [j, m] : den_) {
    if (m < 0) throw std::invalid_argument("negative denominator exponent");
    if (num_.registry() && num_.registry()->var(j).sort != Sort::Q)
      throw std::invalid_argument("denominator factor on a non-Q variable");
  }
  reduce();
}

QLocalized QLocalized::inv_one_minus(const RegistryPtr& reg, std::size_t qvar, int m) {
  return QLocalized(LaurentPoly::constant(reg, 1), Denominator{{qvar, m}});
}

int QLocalized::den_exponent(std::size_t qvar) const {
  auto it = den_.find(qvar);
  return it == den_.end() ? 0 : it->second;
}

void QLocalized::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0 && divisible_by_one_minus(num_, it->first)) {
      num_ = divide_by_one_minus(num_, it->first);
      --it->second;
    }
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
}

LaurentPoly QLocalized::as_poly() const {
  if (!den_.empty()) throw InexactDivision("value has a (1-Q) denominator: " + to_string());
  return num_;
}

QLocalized operator+(const QLocalized& a, const QLocalized& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  require_compatible(a.registry(), b.registry());
  if (a.den_ == b.den_) return QLocalized(a.num_ + b.num_, a.den_);
  auto d = max_den(a.den_, b.den_);
  const auto& reg = a.registry();
  return QLocalized(lift_to(a.num_, a.den_, d, reg) + lift_to(b.num_, b.den_, d, reg), d);
}

QLocalized operator-(const QLocalized& a, const QLocalized& b) { return a + (-b); }

QLocalized operator*(const QLocalized& a, const QLocalized& b) {
  if (a.is_zero() || b.is_zero()) {
    require_compatible(a.registry() ? a.registry() : b.registry(),
                       b.registry() ? b.registry() : a.registry());
    return QLocalized(LaurentPoly(a.registry() ? a.registry() : b.registry()));
  }
  auto d = a.den_;
  for (const auto& [j, m] : b.den_) d[j] += m;
  return QLocalized(a.num_ * b.num_, d);
}

QLocalized QLocalized::operator-() const {
  QLocalized r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const QLocalized& a, const QLocalized& b) {
  return a.den_ == b.den_ && a.num_ == b.num_;
}

QLocalized QLocalized::pow(unsigned k) const {
  QLocalized result(LaurentPoly::constant(registry(), 1));
  QLocalized base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

LaurentPoly strip_one_minus_factors(const LaurentPoly& f, QLocalized::Denominator& exps) {
  LaurentPoly r = f;
  if (r.is_zero()) return r;
  const auto& reg = r.registry();
  for (std::size_t j = 0; j < reg->size(); ++j) {
    if (reg->var(j).sort != Sort::Q || !r.involves(j)) continue;
    while (r.involves(j) && divisible_by_one_minus(r, j)) {
      r = divide_by_one_minus(r, j);
      ++exps[j];
    }
  }
  return r;
}

QLocalized QLocalized::exact_divide(const QLocalized& d) const {
  if (d.is_zero()) throw InexactDivision("division by zero");
  require_compatible(registry(), d.registry());
  Denominator stripped;
  LaurentPoly core = strip_one_minus_factors(d.num_, stripped);
  LaurentPoly q = num_.exact_divide(core);
  // result = q * (1-Q)^{d.den} / ((1-Q)^{den} (1-Q)^{stripped})
  Denominator out;
  std::map<std::size_t, int> net;
  for (const auto& [j, m] : den_) net[j] += m;
  for (const auto& [j, m] : stripped) net[j] += m;
  for (const auto& [j, m] : d.den_) net[j] -= m;
  for (const auto& [j, m] : net) {
    if (m > 0)
      out[j] = m;
    else if (m < 0)
      q = times_one_minus(std::move(q), registry(), j, -m);
  }
  return QLocalized(std::move(q), out);
}

std::optional<QLocalized> QLocalized::inverse() const {
  if (is_zero()) return std::nullopt;
  Denominator stripped;
  LaurentPoly core = strip_one_minus_factors(num_, stripped);
  if (!core.is_monomial()) return std::nullopt;
  const auto& [e, c] = *core.terms().begin();
  const auto& reg = registry();
  Exponents ne(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0 && !reg->laurent(i)) return std::nullopt;
    ne[i] = -e[i];
  }
  LaurentPoly inv = LaurentPoly::monomial(reg, ne, 1 / c);
  for (const auto& [j, m] : den_) inv = times_one_minus(std::move(inv), reg, j, m);
  return QLocalized(std::move(inv), stripped);
}

QLocalized QLocalized::rebase(const RegistryPtr& target) const {
  Denominator d;
  const auto& src = registry();
  for (const auto& [j, m] : den_) d[target->index(src->var(j).name)] = m;
  return QLocalized(num_.rebase(target), d);
}

std::string QLocalized::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")";
  for (const auto& [j, m] : den_) {
    os << "/(1-" << registry()->var(j).name << ")";
    if (m != 1) os << "^" << m;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QLocalized& p) { return os << p.to_string(); }

std::vector<QLocalized> y_coefficients(const QLocalized& f, std::size_t yvar) {
  std::vector<QLocalized> out;
  if (f.is_zero()) return out;
  if (f.num().min_degree(yvar) < 0) throw SignViolation("negative y power");
  auto parts = f.num().collect(yvar);
  int d = parts.rbegin()->first;
  out.reserve(d + 1);
  for (int k = 0; k <= d; ++k) {
    auto it = parts.find(k);
    if (it == parts.end())
      out.emplace_back(LaurentPoly(f.registry()));
    else
      out.emplace_back(it->second, f.den());
  }
  return out;
}

std::vector<QLocalized> y_coefficients(const QLocalized& f) {
  auto ys = f.registry()->of_sort(Sort::y);
  if (ys.size() != 1) throw RegistryMismatch("registry needs exactly one y variable");
  return y_coefficients(f, ys.front());
}

QLocalized reassemble_y(const std::vector<QLocalized>& coeffs, std::size_t yvar) {
  QLocalized r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    const auto& reg = coeffs[k].registry();
    r += coeffs[k] * QLocalized(LaurentPoly::variable(reg, yvar, static_cast<int>(k)));
  }
  return r;
}

QLocalized substitute(const LaurentPoly& f, const Bindings& b, const RegistryPtr& target_in) {
  const RegistryPtr& src = f.registry();
  RegistryPtr target = target_in ? target_in : src;
  if (f.is_zero()) return QLocalized(LaurentPoly(target));
  for (const auto& [v, img] : b) {
    if (v >= src->size()) throw IndexOutOfRange("binding target index");
    if (!img.is_zero()) require_compatible(img.registry(), target);
  }
  const std::size_t n = src->size();
  std::vector<std::size_t> carry(n, static_cast<std::size_t>(-1));

  std::map<std::pair<std::size_t, int>, QLocalized> powers;
  auto power_of = [&](std::size_t v, int e) -> const QLocalized& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    const QLocalized& img = b.at(v);
    QLocalized base = img;
    if (e < 0) {
      auto inv = img.inverse();
      if (!inv) throw NonInvertibleBinding("negative power of " + src->var(v).name + " bound to " + img.to_string());
      base = *inv;
    }
    QLocalized p = img.is_zero() ? QLocalized(LaurentPoly(target)) : base.pow(static_cast<unsigned>(std::abs(e)));
    return powers.emplace(key, std::move(p)).first->second;
  };

  std::map<QLocalized::Denominator, LaurentPoly> acc;
  for (const auto& [e, c] : f.terms()) {
    Exponents me(target->size(), 0);
    std::vector<std::pair<std::size_t, int>> bound;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (b.count(i)) {
        bound.emplace_back(i, e[i]);
        continue;
      }
      if (carry[i] == static_cast<std::size_t>(-1)) carry[i] = target->index(src->var(i).name);
      me[carry[i]] = e[i];
    }
    LaurentPoly num = LaurentPoly::monomial(target, me, c);
    QLocalized::Denominator den;
    for (const auto& [v, k] : bound) {
      const QLocalized& p = power_of(v, k);
      if (p.is_zero()) {
        num = LaurentPoly(target);
        break;
      }
      num = num * p.num();
      for (const auto& [j, m] : p.den()) den[j] += m;
    }
    if (num.is_zero()) continue;
    auto [it, fresh] = acc.try_emplace(den, target);
    it->second += num;
  }
  QLocalized r{LaurentPoly(target)};
  if (acc.empty()) return r;
  QLocalized::Denominator d;
  for (const auto& [den, num] : acc) d = max_den(d, den);
  LaurentPoly total(target);
  for (const auto& [den, num] : acc) total += lift_to(num, den, d, target);
  return QLocalized(std::move(total), d);
}

QLocalized substitute(const QLocalized& f, const Bindings& b, const RegistryPtr& target_in) {
  QLocalized r = substitute(f.num(), b, target_in);
  RegistryPtr target = target_in ? target_in : f.registry();
  for (const auto& [j, m] : f.den()) {
    QLocalized factor = substitute(one_minus(f.registry(), j), b, target);
    auto inv = factor.inverse();
    if (!inv) throw NonInvertibleBinding("(1 - " + f.registry()->var(j).name + ") maps to a non-unit");
    r = r * inv->pow(static_cast<unsigned>(m));
  }
  return r;
}

}  // namespace qkflag
