#pragma once

#include <map>
#include <string>
#include <vector>

#include "qkflag/laurent.hpp"
#include "qkflag/qlocalized.hpp"
#include "qkflag/serialize.hpp"

namespace qkflag {

// Which variables the shifts act on. In X coordinates slot i scales x_i by q.
// In Q coordinates slot i < n scales Q_i by q; slot n is the formal shift
// q^{Q_n d/dQ_n}, which fixes every coefficient (Q_n = 0) but still carries P_n.
enum class ShiftCoordinates { X, Q };

// Finite sum of coef * S_1^{a_1} ... S_n^{a_n}, coefficients on the left, all
// divided by (1 - q)^pole_order. Coefficients live in chain_x_registry(n) or
// chain_q_registry(n).
class DiffOperator {
 public:
  using Shift = std::vector<int>;  // a_1 .. a_n
  using TermMap = std::map<Shift, LaurentPoly>;

  DiffOperator(int n, ShiftCoordinates c);

  static DiffOperator identity(int n, ShiftCoordinates c);
  static DiffOperator shift(int n, ShiftCoordinates c, const Shift& a);
  static DiffOperator multiplication(int n, ShiftCoordinates c, const LaurentPoly& f);

  int n() const { return n_; }
  ShiftCoordinates coordinates() const { return coords_; }
  const RegistryPtr& registry() const { return reg_; }
  const TermMap& terms() const { return terms_; }
  int pole_order() const { return pole_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // registry index of the variable scaled by slot i (1-based), or npos
  std::size_t shift_variable(int i) const;
  std::size_t q_index() const { return qvar_; }

  void add_term(const Shift& a, const LaurentPoly& coef);
  // divides the whole operator by (1 - q)^m
  DiffOperator with_pole(int m) const;

  // S^a f S^{-a}: every variable v_i scaled by q^{a_i}
  LaurentPoly conjugate(const Shift& a, const LaurentPoly& f) const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator*(const mpq_class& c, DiffOperator a);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b);
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  // throws PoleAtQ1 if a (1 - q) factor is left over in the result
  LaurentPoly apply(const LaurentPoly& f) const;

  // q -> 1/q everywhere, shifts included: sigma o A o sigma
  DiffOperator invert_q() const;

  json to_json() const;
  std::string to_latex() const;

 private:
  void normalize_pole();
  int n_;
  ShiftCoordinates coords_;
  RegistryPtr reg_;
  std::size_t qvar_;
  std::vector<std::size_t> slot_vars_;
  TermMap terms_;
  int pole_ = 0;
};

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b);

// H_k in X coordinates
DiffOperator toda_hamiltonian_x(int n, int k);
// hat H_k in Q coordinates, brought to coefficient-left order
DiffOperator hamiltonian_hat_Q(int n, int k);
// hat H_k exactly as written with the shifts on the left, then normal ordered
// term by term; used as a cross-check of hamiltonian_hat_Q
DiffOperator hamiltonian_hat_Q_shifts_left(int n, int k);

// Q_i -> q^{-1} x_{i+1} / x_i, from chain_q_registry(n) to chain_x_registry(n)
LaurentPoly q_to_x(const LaurentPoly& f, int n);
// the Q-coordinate operator sigma hat H sigma, read in X coordinates:
// applies it to f (in Q) and embeds the result
LaurentPoly transported_action(const DiffOperator& hatH, const LaurentPoly& f);

// S_i -> P_i, q -> 1; result in shape_registry(full(n))
QLocalized symbol_at_q1(const DiffOperator& H);

// scalar * prod_i P_i^{ln Q_i / ln q}, scalar in chain_q_registry(n)
struct JLeadingTerm {
  int n = 0;
  LaurentPoly scalar;

  static JLeadingTerm standard(int n);  // scalar 1 - q
};

// the prefactor picks up P^a and Q_i -> q^{a_i} Q_i in the scalar
JLeadingTerm apply(const DiffOperator& H, const JLeadingTerm& J);

// hat H_k on the standard leading term, Q -> 0, divided by 1 - q;
// result in shape_registry(full(n))
LaurentPoly eigenvalue_mod_Q(int n, int k);

// e_k(P_1/P_0, ..., P_n/P_{n-1}) with P_0 = 1, in shape_registry(full(n))
LaurentPoly p_ratio_elementary(int n, int k);

struct HamiltonianCheck {
  int n = 0;
  int k = 0;
  int l = 0;
  bool ok = false;
  std::size_t residual_terms = 0;
};

std::vector<HamiltonianCheck> commutator_checks(int n, ShiftCoordinates c);

// e_k(P-ratios) - e_k(T) vanishes in the Q = 0 specialization of the
// P-presentation of Fl(n)
bool eigenvalue_matches_wedge_classically(int n, int k);
// symbol of hat H_k rewritten in the Toda generators reduces to e_k(T) in the
// Toda ring of Fl(n)
bool symbol_reduces_to_wedge(int n, int k);

}  // namespace qkflag
