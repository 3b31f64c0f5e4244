#pragma once

#include <string>
#include <vector>

#include "qkflag/qlocalized.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/shape.hpp"

namespace qkflag {

enum class Flavor { Toda, Whitney, TodaP };

const char* flavor_name(Flavor f);
Flavor parse_flavor(std::string_view s);

struct Relation {
  QLocalized value;
  LaurentPoly cleared;  // value times its (1-Q) denominator
  int y_exponent = 0;
  int block = 0;
};

struct Presentation {
  FlagShape shape;
  Flavor flavor = Flavor::Toda;
  RegistryPtr reg;
  std::vector<std::size_t> generators;
  std::vector<Relation> relations;

  std::vector<QLocalized> values() const;
  std::vector<LaurentPoly> cleared() const;
};

struct TridiagMatrix {
  std::vector<QLocalized> diag;   // A_0 .. A_k
  std::vector<QLocalized> super;  // B_1 .. B_k (super[j-1] = B_j)
  std::size_t size() const { return diag.size(); }
};

QLocalized tridiag_det(const TridiagMatrix& m);
// U_0 .. U_{k+1} of the three-term recursion
std::vector<QLocalized> tridiag_partial_dets(const TridiagMatrix& m);

TridiagMatrix toda_matrix(const FlagShape& s);
Presentation toda_presentation(const FlagShape& s);

TridiagMatrix todap_matrix(int n);
Presentation toda_presentation_fln_P(int n);

// T^(n)_1 .. T^(n)_n in the registry of the full flag of C^n
std::vector<QLocalized> toda_polynomials(int n);

Presentation whitney_presentation(const FlagShape& s);

struct EliminationResult {
  Presentation toda;
  std::vector<std::string> log;
};
EliminationResult eliminate_whitney_to_toda(const FlagShape& s);

QLocalized wedge_expansion_rhs(int n, int k, int p);

// Y^(j) -> (1-Q_j) P_{j+1}/P_j and Y^(0) -> P_1 (full flags)
QLocalized toda_to_p(const QLocalized& f, int n);
// inverse direction: P-monomials rewritten through the ratios P_{j+1}/P_j -> Y^(j)/(1-Q_j)
QLocalized p_to_toda(const QLocalized& f, int n);
// Toda generator Y^(0) is the Whitney generator X^(1)
QLocalized toda_to_whitney_generators(const QLocalized& f, const FlagShape& s);

// Q_j -> 0 in every relation
std::vector<QLocalized> specialize_q0(const Presentation& p);
// relations of the classical ring built directly (Borel-type / Whitney)
std::vector<QLocalized> classical_relations(const FlagShape& s, Flavor f);

// T_1 ... T_n -> 1 by T_n -> (T_1...T_{n-1})^{-1}
QLocalized sl_specialize(const QLocalized& f);

json to_json(const Presentation& p);
std::string to_latex(const Presentation& p);

}  // namespace qkflag
