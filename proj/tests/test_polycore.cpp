#include <gtest/gtest.h>

#include <random>

#include "qkflag/errors.hpp"
#include "qkflag/laurent.hpp"
#include "qkflag/qlocalized.hpp"
#include "qkflag/registry.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/shape.hpp"
#include "util.hpp"

using namespace qkflag;
using qkflag::test::E;
using qkflag::test::P;

namespace {

RegistryPtr fl3() { return shape_registry(FlagShape::full(3)); }

std::vector<std::size_t> t_vars(const RegistryPtr& reg) { return reg->of_sort(Sort::T); }

}  // namespace

TEST(Registry, SortsAndNames) {
  auto reg = fl3();
  EXPECT_TRUE(reg->laurent(reg->index("T1")));
  EXPECT_TRUE(reg->laurent(reg->index("P2")));
  EXPECT_FALSE(reg->laurent(reg->index("Q1")));
  EXPECT_FALSE(reg->laurent(reg->index("y")));
  EXPECT_EQ(reg->of_sort(Sort::T).size(), 3u);
  EXPECT_EQ(reg->of_sort(Sort::Q).size(), 2u);
  EXPECT_FALSE(reg->find("T4").has_value());
  EXPECT_THROW(VarRegistry::make({{"a", Sort::T}, {"a", Sort::Q}}), std::exception);
}

TEST(Registry, MismatchIsRejected) {
  auto a = fl3();
  auto b = shape_registry(FlagShape::full(2));
  EXPECT_THROW(LaurentPoly::variable(a, "T1") + LaurentPoly::variable(b, "T1"), RegistryMismatch);
}

TEST(Laurent, Distributivity) {
  auto reg = fl3();
  auto f = P(reg, "(1+y*T1)*(1+y*T2)");
  auto g = P(reg, "1 + y*T1 + y*T2 + y^2*T1*T2");
  EXPECT_EQ(f, g);
  EXPECT_EQ(f.size(), 4u);
}

TEST(Laurent, SignRestrictions) {
  auto reg = fl3();
  EXPECT_NO_THROW(LaurentPoly::variable(reg, "T1", -2));
  EXPECT_THROW(LaurentPoly::variable(reg, "Q1", -1), SignViolation);
  EXPECT_THROW(LaurentPoly::variable(reg, "y", -1), SignViolation);
}

TEST(Laurent, CanonicalForm) {
  auto reg = fl3();
  auto f = P(reg, "T1^-1*P2 - 3*T2 + y");
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(P(reg, "T1 - T1"), LaurentPoly(reg));
  EXPECT_EQ(P(reg, "T1^-1*T1"), LaurentPoly::constant(reg, 1));
}

TEST(Laurent, ExactDivision) {
  auto reg = fl3();
  auto f = P(reg, "T1^2 - T2^2");
  EXPECT_EQ(f.exact_divide(P(reg, "T1 - T2")), P(reg, "T1 + T2"));
  EXPECT_THROW(P(reg, "T1 + 1").exact_divide(P(reg, "T2 + 1")), InexactDivision);
}

TEST(Laurent, ExponentOverflow) {
  EXPECT_THROW(add_exp(std::numeric_limits<int>::max(), 1), ExponentOverflow);
  EXPECT_THROW(mul_exp(std::numeric_limits<int>::max(), 2), ExponentOverflow);
}

TEST(Laurent, ElemSym) {
  auto reg = fl3();
  std::vector<LaurentPoly> t;
  for (auto v : t_vars(reg)) t.push_back(LaurentPoly::variable(reg, v));
  EXPECT_EQ(elem_sym(t, 0), LaurentPoly::constant(reg, 1));
  EXPECT_EQ(elem_sym(t, 2), P(reg, "T1*T2 + T1*T3 + T2*T3"));
  EXPECT_THROW(elem_sym(t, 4), IndexOutOfRange);
  EXPECT_THROW(elem_sym(t, -1), IndexOutOfRange);
}

TEST(Laurent, LambdaYCoefficientsAreElementary) {
  for (int n = 2; n <= 6; ++n) {
    auto reg = shape_registry(FlagShape::full(n));
    std::size_t y = reg->index("y");
    std::vector<LaurentPoly> t;
    for (auto v : t_vars(reg)) t.push_back(LaurentPoly::variable(reg, v));
    // oracle: multiply out the product directly
    LaurentPoly prod = LaurentPoly::constant(reg, 1);
    for (const auto& ti : t) prod = prod * (LaurentPoly::constant(reg, 1) + LaurentPoly::variable(reg, y) * ti);
    std::vector<LaurentPoly> e;
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(prod.coefficient_of(y, k), elem_sym(t, k)) << n << " " << k;
      if (k > 0) e.push_back(elem_sym(t, k));
    }
    EXPECT_EQ(lambda_from_generators(reg, y, e), prod);
  }
}

TEST(QLocalized, CommonDenominator) {
  auto reg = fl3();
  auto f = E(reg, "Q1/(1-Q1) + 1");
  EXPECT_EQ(f, QLocalized::inv_one_minus(reg, reg->index("Q1")));
  EXPECT_EQ(f.den_exponent(reg->index("Q1")), 1);
  EXPECT_TRUE(f.num().is_constant());
}

TEST(QLocalized, Cancellation) {
  auto reg = fl3();
  auto f = E(reg, "(1-Q1)^2 / (1-Q1)");
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, E(reg, "1-Q1"));
  EXPECT_EQ(E(reg, "(1-Q2)^-1").inverse().value(), E(reg, "1-Q2"));
  EXPECT_FALSE(E(reg, "1+Q2").inverse().has_value());
}

TEST(QLocalized, OnlyOneMinusQDenominators) {
  auto reg = fl3();
  EXPECT_THROW(E(reg, "T1/(1+Q1)"), InexactDivision);
}

TEST(QLocalized, MultiplyThenDivideRoundTrip) {
  auto reg = fl3();
  std::mt19937_64 rng(7);
  auto vars = reg->of_sort(Sort::T);
  for (auto v : reg->of_sort(Sort::Q)) vars.push_back(v);
  auto one_minus_q1 = QLocalized(one_minus(reg, reg->index("Q1")));
  for (int i = 0; i < 50; ++i) {
    QLocalized f(test::random_poly(rng, reg, vars, 5, -2, 2));
    EXPECT_EQ((one_minus_q1 * f).exact_divide(one_minus_q1), f);
    EXPECT_EQ(f * f.pow(0), f);
  }
}

TEST(QLocalized, RingAxiomsOnRandomTriples) {
  auto reg = shape_registry(FlagShape::grassmannian(1, 2));  // T1, T2, Q1, P1, P2 among others
  std::vector<std::size_t> vars{reg->index("T1"), reg->index("T2"), reg->index("Q1"), reg->index("P1")};
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> den(0, 2);
  auto q1 = reg->index("Q1");
  auto random_value = [&] {
    QLocalized f(test::random_poly(rng, reg, vars, 3, -1, 2));
    int m = den(rng);
    return m ? f * QLocalized::inv_one_minus(reg, q1, m) : f;
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = random_value(), b = random_value(), c = random_value();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    for (const auto& v : {a * b, a + c, a - b * c}) {
      auto m = v.den_exponent(q1);
      if (m > 0) {
        ASSERT_FALSE(divisible_by_one_minus(v.num(), q1));
      }
    }
  }
}

TEST(QLocalized, YCoefficients) {
  auto reg = fl3();
  auto cs = y_coefficients(E(reg, "1 + y*(T1+T2) + y^2*T1*T2"));
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0], E(reg, "1"));
  EXPECT_EQ(cs[1], E(reg, "T1+T2"));
  EXPECT_EQ(cs[2], E(reg, "T1*T2"));

  auto lam = y_coefficients(E(reg, "(1+y*T1)*(1+y*T2)*(1+y*T3)"));
  ASSERT_EQ(lam.size(), 4u);
  EXPECT_EQ(lam[3], E(reg, "T1*T2*T3"));
}

TEST(QLocalized, YCoefficientsRoundTrip) {
  auto reg = fl3();
  std::mt19937_64 rng(3);
  std::vector<std::size_t> vars{reg->index("y"), reg->index("T1"), reg->index("Q2"), reg->index("eY1_1")};
  std::size_t y = reg->index("y");
  for (int i = 0; i < 100; ++i) {
    QLocalized f = QLocalized(test::random_poly(rng, reg, vars, 6, -1, 3)) *
                   QLocalized::inv_one_minus(reg, reg->index("Q2"), i % 3);
    auto cs = y_coefficients(f, y);
    for (const auto& c : cs) ASSERT_FALSE(c.num().involves(y));
    ASSERT_EQ(reassemble_y(cs, y), f);
  }
}

TEST(QLocalized, Substitute) {
  auto reg = shape_registry(FlagShape::full(2));
  auto chain = chain_q_registry(2);
  // P2/P1 in the chain coordinates becomes Y/(1-Q1)
  Bindings b{{chain->index("P1"), E(reg, "1")}, {chain->index("P2"), E(reg, "eY1_1/(1-Q1)")}};
  auto f = substitute(P(chain, "P2*P1^-1"), b, reg);
  EXPECT_EQ(f, E(reg, "eY1_1/(1-Q1)"));

  // killing Q
  auto g = E(reg, "y*Q1/(1-Q1)*eY0_1");
  EXPECT_TRUE(substitute(g, {{reg->index("Q1"), E(reg, "0")}}).is_zero());

  // negative powers need an invertible binding
  EXPECT_THROW(substitute(P(reg, "T1^-1"), {{reg->index("T1"), E(reg, "1+T2")}}), NonInvertibleBinding);
  EXPECT_EQ(substitute(P(reg, "T1^-2"), {{reg->index("T1"), E(reg, "1-Q1")}}), E(reg, "(1-Q1)^-2"));
}

TEST(Serialize, JsonRoundTrip) {
  auto reg = fl3();
  auto f = E(reg, "3/(1-Q1)^2*T1^-1 - 1/2*P2*y + eX1_1*Q2/(1-Q2)");
  auto j = to_json(f);
  EXPECT_EQ(qlocalized_from_json(reg, j), f);
  EXPECT_EQ(to_json(qlocalized_from_json(reg, j)).dump(), j.dump());
  EXPECT_EQ(parse_expression(reg, f.to_string()), f);
}

TEST(Serialize, JsonTermFormat) {
  auto reg = fl3();
  auto j = to_json(P(reg, "-T1^-1/2"));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["exponents"]["T1"], -1);
  EXPECT_EQ(j[0]["num"], "-1");
  EXPECT_EQ(j[0]["den"], "2");
}

TEST(Serialize, Latex) {
  auto reg = fl3();
  EXPECT_EQ(to_latex(P(reg, "0")), "0");
  EXPECT_NE(to_latex(E(reg, "T1/(1-Q1)")).find("(1-Q_{1})"), std::string::npos);
}

TEST(Serialize, ParseErrors) {
  auto reg = fl3();
  EXPECT_THROW(parse_expression(reg, "T1 +"), ParseError);
  EXPECT_THROW(parse_expression(reg, "Z9"), ParseError);
  EXPECT_THROW(parse_expression(reg, "(T1"), ParseError);
}
