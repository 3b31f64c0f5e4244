#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "qkflag/errors.hpp"
#include "qkflag/presentations.hpp"
#include "util.hpp"

using namespace qkflag;
using qkflag::test::E;
using qkflag::test::equal_up_to_sign;

namespace {

// full cofactor expansion, independent of the three-term recursion
QLocalized laplace(const std::vector<std::vector<QLocalized>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  QLocalized acc = m[0][0] - m[0][0];
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<QLocalized>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QLocalized> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    QLocalized t = m[0][c] * laplace(minor);
    acc = c % 2 ? acc - t : acc + t;
  }
  return acc;
}

std::vector<std::vector<QLocalized>> dense(const TridiagMatrix& t) {
  auto reg = t.diag[0].registry();
  std::size_t n = t.size();
  QLocalized zero{LaurentPoly(reg)}, one{LaurentPoly::constant(reg, 1)};
  std::vector<std::vector<QLocalized>> m(n, std::vector<QLocalized>(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = t.diag[i];
    if (i + 1 < n) {
      m[i][i + 1] = t.super[i];
      m[i + 1][i] = one;
    }
  }
  return m;
}

QLocalized sum_y(const std::vector<QLocalized>& cs, const RegistryPtr& reg) {
  QLocalized out{LaurentPoly::constant(reg, 1)};
  for (std::size_t k = 0; k < cs.size(); ++k)
    out += cs[k] * QLocalized(LaurentPoly::variable(reg, "y", static_cast<int>(k + 1)));
  return out;
}

}  // namespace

TEST(Tridiag, SmallSizes) {
  auto reg = shape_registry(FlagShape::full(3));
  TridiagMatrix one{{E(reg, "T1")}, {}};
  EXPECT_EQ(tridiag_det(one), E(reg, "T1"));
  TridiagMatrix two{{E(reg, "T1"), E(reg, "T2")}, {E(reg, "Q1/(1-Q1)")}};
  EXPECT_EQ(tridiag_det(two), E(reg, "T1*T2 - Q1/(1-Q1)"));
}

TEST(Tridiag, MatchesCofactorExpansion) {
  auto reg = shape_registry(FlagShape::full(3));
  std::vector<std::size_t> vars{reg->index("T1"), reg->index("T2"), reg->index("Q1"), reg->index("y")};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    for (std::size_t size = 1; size <= 6; ++size) {
      TridiagMatrix t;
      for (std::size_t i = 0; i < size; ++i) t.diag.emplace_back(test::random_poly(rng, reg, vars, 3, -1, 2));
      for (std::size_t i = 1; i < size; ++i) {
        QLocalized b(test::random_poly(rng, reg, vars, 2, -1, 1));
        if (i % 2) b *= QLocalized::inv_one_minus(reg, reg->index("Q1"));
        t.super.push_back(b);
      }
      ASSERT_EQ(tridiag_det(t), laplace(dense(t))) << "size " << size;
    }
  }
}

TEST(TodaPolynomials, SmallCases) {
  auto reg = shape_registry(FlagShape::full(2));
  auto t = toda_polynomials(2);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], E(reg, "P1 + (1-Q1)*P2/P1"));
  EXPECT_EQ(t[1], E(reg, "P2"));
  for (int n = 2; n <= 6; ++n) {
    auto r = shape_registry(FlagShape::full(n));
    EXPECT_EQ(toda_polynomials(n).back(), QLocalized(LaurentPoly::variable(r, r->index(Sort::P, n))));
  }
}

TEST(TodaPolynomials, DeterminantIdentity) {
  for (int n = 2; n <= 5; ++n) {
    auto reg = shape_registry(FlagShape::full(n));
    EXPECT_EQ(sum_y(toda_polynomials(n), reg), tridiag_det(todap_matrix(n))) << n;
  }
}

TEST(TodaPresentation, RelationCountAndShape) {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& s : all_shapes(n)) {
      auto p = toda_presentation(s);
      ASSERT_EQ(static_cast<int>(p.relations.size()), n) << s.to_string();
      for (int l = 1; l <= n; ++l) EXPECT_EQ(p.relations[l - 1].y_exponent, l);
      auto qs = p.reg->of_sort(Sort::Q);
      for (const auto& r : p.relations) {
        EXPECT_FALSE(r.value.num().involves(p.reg->index("y")));
        EXPECT_LE(r.cleared.total_degree(qs), s.k()) << s.to_string();
      }
    }
  }
}

TEST(TodaPresentation, ProjectiveLine) {
  auto s = FlagShape::parse("1;2");
  auto reg = shape_registry(s);
  auto p = toda_presentation(s);
  EXPECT_TRUE(equal_up_to_sign(toda_to_p(p.relations[0].value, 2), E(reg, "P1 + (1-Q1)*P2/P1 - T1 - T2")));
  EXPECT_TRUE(equal_up_to_sign(toda_to_p(p.relations[1].value, 2), E(reg, "P2 - T1*T2")));
}

TEST(TodaPresentation, FullFlagThree) {
  auto s = FlagShape::full(3);
  auto reg = shape_registry(s);
  auto p = toda_presentation(s);
  const char* expected[] = {
      "P1 + (1-Q1)*P2/P1 + (1-Q2)*P3/P2 - T1 - T2 - T3",
      "P2 + (1-Q1)*P3/P1 + (1-Q2)*P1*P3/P2 - T1*T2 - T1*T3 - T2*T3",
      "P3 - T1*T2*T3",
  };
  for (int l = 0; l < 3; ++l) EXPECT_TRUE(equal_up_to_sign(toda_to_p(p.relations[l].value, 3), E(reg, expected[l])));
}

TEST(TodaPresentation, MatchesPFlavorUnderBinding) {
  for (int n = 2; n <= 5; ++n) {
    auto p = toda_presentation(FlagShape::full(n));
    auto pp = toda_presentation_fln_P(n);
    for (int l = 0; l < n; ++l) EXPECT_EQ(toda_to_p(p.relations[l].value, n), pp.relations[l].value) << n << " " << l;
  }
}

TEST(TodaPresentation, ClassicalLimit) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& s : all_shapes(n)) {
      EXPECT_EQ(specialize_q0(toda_presentation(s)), classical_relations(s, Flavor::Toda)) << s.to_string();
      EXPECT_EQ(specialize_q0(whitney_presentation(s)), classical_relations(s, Flavor::Whitney)) << s.to_string();
    }
  }
}

TEST(WhitneyPresentation, ProjectiveLine) {
  auto s = FlagShape::parse("1;2");
  auto reg = shape_registry(s);
  auto p = whitney_presentation(s);
  // lambda_y(S1) * lambda_y(C2/S1) = lambda_y(C2) - y Q/(1-Q) (C2/S1) (lambda_y(S1) - 1)
  auto rel = E(reg, "(1+y*eX1_1)*(1+y*eY1_1) - (1+y*T1)*(1+y*T2) + y*Q1/(1-Q1)*eY1_1*(y*eX1_1)");
  auto cs = y_coefficients(rel, reg->index("y"));
  ASSERT_EQ(p.relations.size(), 2u);
  EXPECT_TRUE(equal_up_to_sign(p.relations[0].value, cs[1]));
  EXPECT_TRUE(equal_up_to_sign(p.relations[1].value, cs[2]));
}

TEST(WhitneyPresentation, BlockStructure) {
  auto s = FlagShape::parse("1,3;5");
  auto p = whitney_presentation(s);
  std::map<int, int> per_block;
  for (const auto& r : p.relations) per_block[r.block]++;
  EXPECT_EQ(per_block[1], 3);
  EXPECT_EQ(per_block[2], 5);
}

TEST(Elimination, AllShapesUpToFive) {
  for (int n = 2; n <= 5; ++n) {
    auto shapes = all_shapes(n);
    if (n == 5) {
      EXPECT_EQ(shapes.size(), 15u);
    }
    for (const auto& s : shapes) {
      auto res = eliminate_whitney_to_toda(s);
      auto direct = toda_presentation(s);
      ASSERT_EQ(res.toda.relations.size(), direct.relations.size());
      for (std::size_t i = 0; i < direct.relations.size(); ++i)
        EXPECT_EQ(res.toda.relations[i].value, direct.relations[i].value) << s.to_string() << " y^" << i + 1;
      EXPECT_FALSE(res.log.empty());
    }
  }
}

TEST(WedgeExpansion, Examples) {
  auto reg = shape_registry(FlagShape::full(3));
  EXPECT_EQ(wedge_expansion_rhs(3, 2, 0), E(reg, "1"));
  EXPECT_EQ(wedge_expansion_rhs(3, 2, 1), E(reg, "eY0_1 + eY1_1"));
  EXPECT_EQ(wedge_expansion_rhs(3, 3, 3), E(reg, "eY0_1*eY1_1*eY2_1/((1-Q1)*(1-Q2))"));
  EXPECT_EQ(wedge_expansion_rhs(3, 3, 2), E(reg, "eY0_1*eY1_1/(1-Q1) + eY0_1*eY2_1 + eY1_1*eY2_1/(1-Q2)"));
  EXPECT_THROW(wedge_expansion_rhs(3, 2, 3), IndexOutOfRange);
  EXPECT_THROW(wedge_expansion_rhs(3, 4, 1), IndexOutOfRange);
}

TEST(Shapes, ParseAndValidate) {
  EXPECT_EQ(FlagShape::parse("1,2;3"), FlagShape::full(3));
  EXPECT_THROW(FlagShape::parse("3,2;4"), InvalidShape);
  EXPECT_THROW(FlagShape::parse("0;4"), InvalidShape);
  EXPECT_THROW(FlagShape::parse("4;4"), InvalidShape);
  EXPECT_THROW(FlagShape::parse("2,4"), std::exception);
}

TEST(SlSpecialize, ProjectiveLine) {
  auto s = FlagShape::parse("1;2");
  auto reg = shape_registry(s);
  // T2 -> 1/T1
  EXPECT_EQ(sl_specialize(E(reg, "T1*T2")), E(reg, "1"));
  EXPECT_EQ(sl_specialize(E(reg, "T1 + T2")), E(reg, "T1 + T1^-1"));
}

class GoldenPresentation : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenPresentation, MatchesShippedFile) {
  std::string shape = GetParam();
  std::string stem = shape;
  for (auto& c : stem)
    if (c == ',' || c == ';') c = '_';
  for (std::string flavor : {"toda", "whitney"}) {
    std::ifstream in(std::string(QKFLAG_FIXTURE_DIR) + "/presentations/" + flavor + "_" + stem + ".json");
    ASSERT_TRUE(in) << flavor << " " << shape;
    json golden = json::parse(in);
    auto s = FlagShape::parse(shape);
    json now = to_json(flavor == "toda" ? toda_presentation(s) : whitney_presentation(s));
    EXPECT_EQ(now.dump(), golden.dump()) << flavor << " " << shape;
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, GoldenPresentation,
                         ::testing::Values("1;2", "1,2;3", "2;4", "2,3;4", "1,2,3;4"));
