#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qkflag/registry.hpp"

namespace qkflag {

using Exponents = std::vector<int>;

// Multivariate Laurent polynomial over Q. Terms are kept in a map ordered
// lexicographically by exponent vector; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, mpq_class>;

  LaurentPoly() = default;
  explicit LaurentPoly(RegistryPtr reg) : reg_(std::move(reg)) {}

  static LaurentPoly constant(RegistryPtr reg, const mpq_class& c);
  static LaurentPoly variable(RegistryPtr reg, std::size_t i, int power = 1);
  static LaurentPoly variable(RegistryPtr reg, std::string_view name, int power = 1);
  static LaurentPoly monomial(RegistryPtr reg, Exponents e, const mpq_class& c = 1);

  const RegistryPtr& registry() const { return reg_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  mpq_class constant_term() const;
  mpq_class coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const mpq_class& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly& operator*=(const mpq_class& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const mpq_class& c) { return a *= c; }
  friend LaurentPoly operator*(const mpq_class& c, LaurentPoly a) { return a *= c; }
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly pow(unsigned k) const;
  LaurentPoly mul_monomial(const Exponents& e, const mpq_class& c = 1) const;

  // throws InexactDivision when d does not divide *this
  LaurentPoly exact_divide(const LaurentPoly& d) const;

  bool involves(std::size_t i) const;
  int degree(std::size_t i) const;
  int min_degree(std::size_t i) const;
  int total_degree(const std::vector<std::size_t>& vars) const;
  Exponents min_exponents() const;

  // part of the polynomial with x_i^k, with x_i removed
  LaurentPoly coefficient_of(std::size_t i, int k) const;
  std::map<int, LaurentPoly> collect(std::size_t i) const;
  LaurentPoly evaluate(std::size_t i, const mpq_class& v) const;
  LaurentPoly swap_variables(std::size_t a, std::size_t b) const;
  LaurentPoly map_terms(const std::function<void(Exponents&, mpq_class&)>& f) const;

  // same polynomial in another registry, matching variables by name
  LaurentPoly rebase(const RegistryPtr& target) const;

  std::string to_string() const;

 private:
  void check_signs(const Exponents& e) const;
  LaurentPoly mul_monomial_unchecked(const Exponents& e) const;
  RegistryPtr reg_;
  TermMap terms_;
};

LaurentPoly elem_sym(const std::vector<LaurentPoly>& vars, int l);
// lambda_y of an alphabet given by its elementary symmetric generators:
// 1 + e_1 y + e_2 y^2 + ...
LaurentPoly lambda_from_generators(const RegistryPtr& reg, std::size_t yvar,
                                   const std::vector<LaurentPoly>& gens);
LaurentPoly one_minus(const RegistryPtr& reg, std::size_t var, int power = 1);

bool divisible_by_one_minus(const LaurentPoly& f, std::size_t var);
LaurentPoly divide_by_one_minus(const LaurentPoly& f, std::size_t var);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

}  // namespace qkflag
