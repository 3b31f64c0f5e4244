#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qkflag/monomial_order.hpp"
#include "qkflag/qlocalized.hpp"
#include "qkflag/serialize.hpp"

namespace qkflag {

struct GroebnerStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t product_criterion = 0;
  std::size_t chain_criterion = 0;
  int max_sugar = 0;
  double seconds = 0;
};

// Reduced Groebner basis over Q. The ring has one variable per ordered
// source variable plus companions: inv_v with v*inv_v - 1 for every Laurent
// variable and loc_Qj with loc_Qj*(1 - Qj) - 1 for every Q variable. Each
// companion sits right after its parent in the parent's block.
class GroebnerBasis {
 public:
  struct Impl;

  const RegistryPtr& source() const;
  const RegistryPtr& ring() const;
  const MonomialOrder& order() const;  // in ring indices
  const MonomialOrder& source_order() const;
  const std::vector<LaurentPoly>& basis() const;  // monic, ascending leading terms
  std::vector<Exponents> leading_monomials() const;
  const GroebnerStats& stats() const;
  int q_degree_cap() const;
  int max_q_degree() const;  // over basis elements

  // ring index of a source variable
  std::size_t ring_index(std::size_t source_var) const;

  LaurentPoly to_ring(const QLocalized& f) const;
  QLocalized from_ring(const LaurentPoly& f) const;

  LaurentPoly reduce(const LaurentPoly& ring_poly) const;
  QLocalized normal_form(const QLocalized& f) const;
  bool in_ideal(const QLocalized& f) const { return reduce(to_ring(f)).is_zero(); }

  // Pseudo-reduction over the fraction field of the base: returns scale and
  // coefficients with scale * f = sum coeffs[m] * m modulo the ideal, every m
  // a generator monomial outside the generic staircase boundary. Keys are
  // ring exponent vectors supported on gen_vars; values avoid gen_vars.
  struct GenericCoordinates {
    LaurentPoly scale;
    std::map<Exponents, LaurentPoly> coeffs;
  };
  GenericCoordinates generic_coordinates(const LaurentPoly& ring_poly, const std::vector<std::size_t>& gen_vars) const;

  json to_json() const;
  static GroebnerBasis from_json(const RegistryPtr& source, const json& j);

 private:
  friend GroebnerBasis groebner(const std::vector<QLocalized>&, const MonomialOrder&, int);
  std::shared_ptr<const Impl> impl_;
};

// `order` is over source variables; every variable occurring in the
// relations must be ordered. A basis element of total Q-degree above
// q_degree_cap raises CapExceeded; a negative cap disables the check.
GroebnerBasis groebner(const std::vector<QLocalized>& relations, const MonomialOrder& order, int q_degree_cap = -1);

}  // namespace qkflag
