#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkflag/groebner.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/schubert.hpp"

namespace qkflag {

// Generators first (weighted grevlex, e_l of weight l), then [Q, loc_Q] and [T, inv_T] (grevlex).
MonomialOrder default_order(const Presentation& p);

struct QuotientOptions {
  int q_degree_cap = -1;   // -1: n
  std::string cache_dir;   // empty: $QKFLAG_CACHE_DIR, unset means no cache
  bool use_cache = true;
  std::optional<MonomialOrder> order;  // default_order when unset
};

// Standard generator monomials of the generic fiber: monomials in the
// generators avoided by the generator parts of all leading terms. Their count
// is the rank of the quotient over the base. When the basis is
// generator-pure they are also a basis over the base ring itself.
struct Staircase {
  std::vector<Exponents> monomials;  // source exponents, negative for inverse companions
  bool finite = true;
  bool generator_pure = true;  // leading terms are generator monomials or companion relations
};

// scale * f = sum coeffs[m] * m in the quotient
struct Coordinates {
  QLocalized scale;
  std::map<Exponents, QLocalized> coeffs;
};

class QuotientRing {
 public:
  explicit QuotientRing(Presentation p, QuotientOptions opt = {});

  const Presentation& presentation() const { return pres_; }
  const GroebnerBasis& groebner_basis() const { return gb_; }
  int q_degree_cap() const { return cap_; }
  bool loaded_from_cache() const { return from_cache_; }
  const std::string& cache_key() const { return key_; }

  // errors: CapExceeded when the result has Q-degree above the cap
  QLocalized normal_form(const QLocalized& f) const;
  bool reduces_to_zero(const QLocalized& f) const;

  // Schubert representatives are written in e_l(X^(j)); this rewrites them
  // in the presentation's generators.
  QLocalized from_whitney_generators(const QLocalized& f) const;

  Staircase staircase() const;
  std::size_t rank() const;

  Coordinates coordinates(const QLocalized& f) const;

 private:
  Presentation pres_;
  GroebnerBasis gb_;
  int cap_;
  bool from_cache_ = false;
  std::string key_;
  Bindings to_gens_;
  std::vector<std::size_t> gen_ring_vars_;
};

int q_degree(const QLocalized& f);

QLocalized quantum_product(const SchubertPoly& a, const SchubertPoly& b, const QuotientRing& R);

// coefficients in the basis, keyed by Weyl element
std::map<WeylElement, QLocalized> schubert_expand(const QLocalized& f, const std::vector<SchubertClass>& basis,
                                                  const QuotientRing& R);

// full-flag Whitney ring of C^n, built once per n and options
const QuotientRing& whitney_full_flag_ring(int n);
const QuotientRing& toda_ring(const FlagShape& s);

bool verify_mns_rewrite(int n, int i, int j);
// wedge_expansion_rhs(n,k,p) - e_p(X^(k)) lies in the Whitney ideal of Fl(n)
bool verify_wedge_identity(int n, int k, int p);

std::string default_cache_dir();

}  // namespace qkflag
