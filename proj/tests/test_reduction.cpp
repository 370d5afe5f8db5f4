#include <msrlab/search.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace msrlab;

namespace {

Field gf4() { return Field::make(2, 2, std::vector<std::uint64_t>{1, 1, 1}); }

// r = 3, ell = 3 over GF(4), with x packed as 2 and x + 1 as 3.
struct GeneralForm {
  PhiSystem sys;
  std::vector<std::vector<Matrix>> grid;
};

GeneralForm general_form_gf4() {
  const auto f = gf4();
  const Matrix I = Matrix::identity(f, 3);
  const Matrix P{f, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
  const Matrix D1{f, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}};
  const Matrix D2{f, {{1, 0, 0}, {0, 3, 0}, {0, 0, 2}}};
  GeneralForm g;
  g.sys.field = f;
  g.sys.ell = 3;
  g.sys.r = 3;
  g.sys.pairs = {{P, Subspace::span(Matrix{f, {{1, 0, 0}}})}, {D1, Subspace::span(Matrix{f, {{1, 1, 1}}})}};
  g.grid = {{I, I}, {P, D1}, {P * P, D2}};
  return g;
}

}  // namespace

TEST(Theta, Fig1SinglePair) {
  const auto code = fixtures::fig1();
  const auto red = theta_reduce(code, fixtures::fig1_second_coordinate());
  const auto f = code.field();
  ASSERT_EQ(red.system.size(), 1u);
  EXPECT_EQ(red.anchor, 1u);
  EXPECT_EQ(red.labels, std::vector<std::size_t>{0});
  EXPECT_EQ(red.system.phi(0), (Matrix{f, {{1, 1}, {1, 0}}}));
  EXPECT_EQ(red.system.s(0), Subspace::span(Matrix{f, {{0, 1}}}));
  EXPECT_TRUE(check_sc(red.system).ok);
}

TEST(Theta, Table1ThreePairs) {
  const auto code = fixtures::table1();
  const auto scheme = search_scheme(code).scheme;
  const auto red = theta_reduce(code, scheme);
  const auto f = code.field();
  ASSERT_EQ(red.system.size(), 3u);
  EXPECT_TRUE(check_sc(red.system).ok);
  EXPECT_TRUE(check_constant_conditions(red.system).ok);
  // A_{2,1}^{-1} * 5I, worked by hand
  EXPECT_EQ(red.system.phi(0), (Matrix{f, {{5, 1}, {0, 4}}}));
  std::vector<Matrix> fam{Matrix::identity(f, 2)};
  for (const auto& pp : red.system.pairs) fam.push_back(pp.phi);
  EXPECT_EQ(family_rank(fam), 4u);
}

TEST(Theta, AnchorChoiceStillSatisfiesConditions) {
  const auto code = fixtures::table1();
  const auto scheme = search_scheme(code).scheme;
  for (std::size_t a = 0; a < 4; ++a) {
    const auto red = theta_reduce(code, scheme, a);
    EXPECT_EQ(red.anchor, a);
    EXPECT_TRUE(check_sc(red.system).ok);
  }
  EXPECT_THROW(theta_reduce(code, scheme, 4), Error);
}

TEST(Theta, RejectsOtherParityCounts) {
  const auto f = Field::make(2);
  const auto I = Matrix::identity(f, 1);
  const ArrayCode code({1, 1, 1}, f, {{I}});
  try {
    theta_reduce(code, RepairScheme{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RequiresTwoParities);
  }
}

TEST(Theta, RejectsMissingScheme) {
  try {
    theta_reduce(fixtures::table1(), RepairScheme{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemeInvalid);
  }
}

TEST(Conditions, ViolationsReported) {
  const auto f = Field::make(3);
  PhiSystem sys;
  sys.field = f;
  sys.ell = 2;
  sys.r = 2;
  const auto e1 = Subspace::span(Matrix{f, {{1, 0}}});
  const auto e2 = Subspace::span(Matrix{f, {{0, 1}}});
  sys.pairs = {{Matrix::identity(f, 2), e1}, {Matrix{f, {{0, 1}, {1, 0}}}, e2}};
  const auto chk = check_sc(sys);
  EXPECT_FALSE(chk.ok);
  bool inter = false, inv = false;
  for (const auto& v : chk.violations) {
    inter = inter || (v.kind == ConditionViolation::Kind::Intersection && v.i == 0);
    inv = inv || (v.kind == ConditionViolation::Kind::Invariance && v.i == 0 && v.j == 1);
  }
  EXPECT_TRUE(inter);
  EXPECT_TRUE(inv);
}

TEST(Conditions, ValidationErrors) {
  const auto f = Field::make(3);
  PhiSystem sys;
  sys.field = f;
  sys.ell = 2;
  sys.r = 2;
  sys.pairs = {{Matrix{f, {{1, 1}, {1, 1}}}, Subspace::span(Matrix{f, {{1, 0}}})}};
  EXPECT_THROW(sys.validate(), Error);
  sys.pairs = {{Matrix::identity(f, 2), Subspace::full(f, 2)}};
  EXPECT_THROW(sys.validate(), Error);
}

TEST(Conditions, GeneralFormOverGF4) {
  const auto g = general_form_gf4();
  EXPECT_TRUE(check_constant_conditions(g.sys, g.grid).ok);
  EXPECT_TRUE(check_sc(g.sys).ok);
  auto broken = g.grid;
  broken[2][1] = broken[1][1];
  const auto chk = check_constant_conditions(g.sys, broken);
  EXPECT_FALSE(chk.ok);
  EXPECT_EQ(chk.violations.back().kind, ConditionViolation::Kind::DeficientSum);
  EXPECT_EQ(chk.violations.back().dim, 2u);
}

TEST(Normalize, Fig1) {
  const auto code = fixtures::fig1();
  const auto norm = normalize_identity_parity(code);
  const auto f = code.field();
  EXPECT_TRUE(norm.code.a(1, 0).is_identity());
  EXPECT_TRUE(norm.code.a(1, 1).is_identity());
  EXPECT_EQ(norm.phis[0], (Matrix{f, {{1, 1}, {1, 0}}}));
  EXPECT_TRUE(norm.phis[1].is_identity());
  EXPECT_TRUE(verify_mds(norm.code).mds);
  const auto moved = transform_scheme(fixtures::fig1_second_coordinate(), norm);
  EXPECT_TRUE(verify_scheme(norm.code, moved, 0).ok);
}

TEST(Normalize, Table1SchemesCarryOver) {
  const auto code = fixtures::table1();
  const auto scheme = search_scheme(code).scheme;
  const auto norm = normalize_identity_parity(code);
  const auto moved = transform_scheme(scheme, norm);
  EXPECT_TRUE(verify_mds(norm.code).mds);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(verify_scheme(norm.code, moved, i).ok);
}

TEST(Normalize, SingularSecondParity) {
  const auto f = Field::make(2);
  const auto I = Matrix::identity(f, 2);
  const ArrayCode code({2, 2, 2}, f, {{I, I}, {I, Matrix{f, {{1, 0}, {0, 0}}}}});
  try {
    normalize_identity_parity(code);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularEncodingMatrix);
  }
}
