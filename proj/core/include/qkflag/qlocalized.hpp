#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkflag/laurent.hpp"

namespace qkflag {

// numerator / prod_j (1 - Q_j)^{m_j}, kept reduced: no (1 - Q_j) with m_j > 0
// divides the numerator.
class QLocalized {
 public:
  using Denominator = std::map<std::size_t, int>;  // Q-variable index -> m_j > 0

  QLocalized() = default;
  QLocalized(LaurentPoly num);  // NOLINT(google-explicit-constructor)
  QLocalized(LaurentPoly num, Denominator den);

  static QLocalized inv_one_minus(const RegistryPtr& reg, std::size_t qvar, int m = 1);

  const LaurentPoly& num() const { return num_; }
  const Denominator& den() const { return den_; }
  const RegistryPtr& registry() const { return num_.registry(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  int den_exponent(std::size_t qvar) const;

  // numerator after clearing: equals *this times prod (1 - Q_j)^{m_j}
  const LaurentPoly& cleared() const { return num_; }
  // LaurentPoly view; throws if a denominator remains
  LaurentPoly as_poly() const;

  QLocalized& operator+=(const QLocalized& o) { return *this = *this + o; }
  QLocalized& operator-=(const QLocalized& o) { return *this = *this - o; }
  QLocalized& operator*=(const QLocalized& o) { return *this = *this * o; }
  friend QLocalized operator+(const QLocalized& a, const QLocalized& b);
  friend QLocalized operator-(const QLocalized& a, const QLocalized& b);
  friend QLocalized operator*(const QLocalized& a, const QLocalized& b);
  QLocalized operator-() const;
  friend bool operator==(const QLocalized& a, const QLocalized& b);
  friend bool operator!=(const QLocalized& a, const QLocalized& b) { return !(a == b); }

  QLocalized pow(unsigned k) const;
  QLocalized exact_divide(const QLocalized& d) const;
  std::optional<QLocalized> inverse() const;

  QLocalized rebase(const RegistryPtr& target) const;
  std::string to_string() const;

 private:
  void reduce();
  LaurentPoly num_;
  Denominator den_;
};

// [c_0, ..., c_d] with f = sum c_k y^k
std::vector<QLocalized> y_coefficients(const QLocalized& f, std::size_t yvar);
std::vector<QLocalized> y_coefficients(const QLocalized& f);
QLocalized reassemble_y(const std::vector<QLocalized>& coeffs, std::size_t yvar);

using Bindings = std::map<std::size_t, QLocalized>;

// Simultaneous substitution. Unbound variables are carried over by name into
// `target` (defaults to f's registry). Negative powers of a bound variable
// need an invertible binding.
QLocalized substitute(const LaurentPoly& f, const Bindings& b, const RegistryPtr& target = nullptr);
QLocalized substitute(const QLocalized& f, const Bindings& b, const RegistryPtr& target = nullptr);

// strip all (1 - Q_j) factors: f = prod (1-Q_j)^{c_j} * rest
LaurentPoly strip_one_minus_factors(const LaurentPoly& f, QLocalized::Denominator& exps);

std::ostream& operator<<(std::ostream& os, const QLocalized& p);

}  // namespace qkflag
