#include <gtest/gtest.h>

#include <random>

#include "qkflag/errors.hpp"
#include "qkflag/presentations.hpp"
#include "qkflag/todaham.hpp"
#include "util.hpp"

using namespace qkflag;
using qkflag::test::E;
using qkflag::test::P;

namespace {

DiffOperator from_terms(int n, ShiftCoordinates c, std::vector<std::pair<DiffOperator::Shift, const char*>> terms) {
  DiffOperator h(n, c);
  for (const auto& [a, coef] : terms) h.add_term(a, P(h.registry(), coef));
  return h;
}

}  // namespace

TEST(TodaHam, HamiltoniansTwoSites) {
  using S = DiffOperator::Shift;
  auto h1 = toda_hamiltonian_x(2, 1);
  EXPECT_EQ(h1, from_terms(2, ShiftCoordinates::X, {{S{1, 0}, "1"}, {S{0, 1}, "1 - x2/x1"}}));
  auto h2 = toda_hamiltonian_x(2, 2);
  EXPECT_EQ(h2, from_terms(2, ShiftCoordinates::X, {{S{1, 1}, "1"}}));
  EXPECT_THROW(toda_hamiltonian_x(2, 3), IndexOutOfRange);
  EXPECT_THROW(toda_hamiltonian_x(2, 0), IndexOutOfRange);
}

TEST(TodaHam, ActionOnConstants) {
  auto h = toda_hamiltonian_x(3, 1);
  auto one = LaurentPoly::constant(h.registry(), 1);
  EXPECT_EQ(h.apply(one), P(h.registry(), "1 + (1 - x2/x1) + (1 - x3/x2)"));
}

TEST(TodaHam, ShiftActsByQ) {
  auto reg = chain_x_registry(2);
  auto t1 = DiffOperator::shift(2, ShiftCoordinates::X, {1, 0});
  EXPECT_EQ(t1.apply(P(reg, "x1^2*x2^-1")), P(reg, "q^2*x1^2*x2^-1"));
  auto x1 = DiffOperator::multiplication(2, ShiftCoordinates::X, P(reg, "x1"));
  // T1 x1 = q x1 T1
  EXPECT_EQ(t1 * x1, DiffOperator::multiplication(2, ShiftCoordinates::X, P(reg, "q*x1")) * t1);
}

TEST(TodaHam, CommutatorsVanish) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        EXPECT_TRUE(op_commutator(toda_hamiltonian_x(n, k), toda_hamiltonian_x(n, l)).is_zero()) << n << k << l;
        EXPECT_TRUE(op_commutator(hamiltonian_hat_Q(n, k), hamiltonian_hat_Q(n, l)).is_zero()) << n << k << l;
      }
  for (const auto& c : commutator_checks(3, ShiftCoordinates::X)) EXPECT_TRUE(c.ok);
}

TEST(TodaHam, NonCommutingSanity) {
  auto reg = chain_x_registry(2);
  auto t1 = DiffOperator::shift(2, ShiftCoordinates::X, {1, 0});
  auto x1 = DiffOperator::multiplication(2, ShiftCoordinates::X, P(reg, "x1"));
  EXPECT_FALSE(op_commutator(t1, x1).is_zero());
  EXPECT_TRUE(op_commutator(t1, t1).is_zero());
}

TEST(TodaHam, OperatorAlgebraRandom) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    DiffOperator a(3, ShiftCoordinates::X), b(3, ShiftCoordinates::X), c(3, ShiftCoordinates::X);
    auto reg = a.registry();
    auto vars = reg->of_sort(Sort::x);
    vars.push_back(reg->index("q"));
    std::uniform_int_distribution<int> sh(-1, 1);
    for (auto* op : {&a, &b, &c})
      for (int i = 0; i < 3; ++i) op->add_term({sh(rng), sh(rng), sh(rng)}, test::random_poly(rng, reg, vars, 2, -1, 1));
    ASSERT_TRUE(op_commutator(a, a).is_zero());
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a.invert_q().invert_q(), a);
    auto f = test::random_poly(rng, reg, reg->of_sort(Sort::x), 3, -2, 2);
    ASSERT_EQ((a * b).apply(f), a.apply(b.apply(f)));
  }
}

TEST(TodaHam, HatHamiltonianTwoSites) {
  // q^{Q1 d} + q^{-Q1 d}(1 - Q1) in the shifts-left form, slot 2 formal
  auto h = hamiltonian_hat_Q_shifts_left(2, 1);
  auto reg = h.registry();
  EXPECT_EQ(h.terms().size(), 2u);
  EXPECT_EQ(h.terms().at({1, 0}), LaurentPoly::constant(reg, 1));
  auto it = h.terms().find({-1, 1});
  ASSERT_NE(it, h.terms().end());
  // moving (1 - Q1) left of q^{-Q1 d} rescales Q1 by q^{-1}
  EXPECT_EQ(hamiltonian_hat_Q(2, 1).apply(LaurentPoly::constant(reg, 1)), P(reg, "1 + (1 - q^-1*Q1)"));
}

TEST(TodaHam, TransportedActionMatches) {
  std::mt19937_64 rng(23);
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      auto hat = hamiltonian_hat_Q(n, k);
      auto hx = toda_hamiltonian_x(n, k);
      auto reg = hat.registry();
      std::uniform_int_distribution<int> ex(0, 3);
      for (int t = 0; t < 20; ++t) {
        Exponents e(reg->size(), 0);
        for (auto qv : reg->of_sort(Sort::Q)) e[qv] = ex(rng);
        auto f = LaurentPoly::monomial(reg, e);
        ASSERT_EQ(hx.apply(q_to_x(f, n)), transported_action(hat, f)) << n << " " << k;
      }
    }
}

TEST(TodaHam, SymbolsAreTodaPolynomials) {
  auto id = DiffOperator::identity(3, ShiftCoordinates::Q);
  EXPECT_EQ(symbol_at_q1(id), QLocalized(LaurentPoly::constant(shape_registry(FlagShape::full(3)), 1)));
  auto reg2 = shape_registry(FlagShape::full(2));
  EXPECT_EQ(symbol_at_q1(hamiltonian_hat_Q(2, 1)), E(reg2, "P1 + (1-Q1)*P2/P1"));
  for (int n = 2; n <= 5; ++n) {
    auto t = toda_polynomials(n);
    for (int k = 1; k <= n; ++k) EXPECT_EQ(symbol_at_q1(hamiltonian_hat_Q(n, k)), t[k - 1]) << n << " " << k;
  }
}

TEST(TodaHam, PoleAtQOne) {
  auto h = DiffOperator::identity(2, ShiftCoordinates::Q).with_pole(1);
  EXPECT_THROW(symbol_at_q1(h), PoleAtQ1);
  auto reg = h.registry();
  auto cancelled = DiffOperator::multiplication(2, ShiftCoordinates::Q, P(reg, "1 - q")).with_pole(1);
  EXPECT_EQ(symbol_at_q1(cancelled), symbol_at_q1(DiffOperator::identity(2, ShiftCoordinates::Q)));
}

TEST(TodaHam, Eigenvalues) {
  auto reg2 = shape_registry(FlagShape::full(2));
  EXPECT_EQ(QLocalized(eigenvalue_mod_Q(2, 1)), E(reg2, "P1 + P2/P1"));
  for (int n = 2; n <= 5; ++n) {
    auto reg = shape_registry(FlagShape::full(n));
    EXPECT_EQ(eigenvalue_mod_Q(n, n), LaurentPoly::variable(reg, reg->index(Sort::P, n)));
    for (int k = 1; k <= n; ++k) EXPECT_EQ(eigenvalue_mod_Q(n, k), p_ratio_elementary(n, k)) << n << " " << k;
  }
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) EXPECT_TRUE(eigenvalue_matches_wedge_classically(n, k));
}

TEST(TodaHam, SymbolReducesToWedge) {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) EXPECT_TRUE(symbol_reduces_to_wedge(n, k)) << n << " " << k;
}

TEST(TodaHam, Emission) {
  auto h = hamiltonian_hat_Q(3, 2);
  auto j = h.to_json();
  EXPECT_EQ(j["coordinates"], "Q");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["terms"].size(), h.size());
  EXPECT_NE(h.to_latex().find("q^{"), std::string::npos);
  EXPECT_EQ(h.to_json().dump(), hamiltonian_hat_Q(3, 2).to_json().dump());
}
