#include <msrlab/serialize.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace msrlab;

namespace {

std::vector<NodeVector> random_nodes(const ArrayCode& code, std::mt19937_64& rng) { return encode(code, random_fill(code, rng)); }

}  // namespace

TEST(Code, Fig1IsMds) {
  const auto rep = verify_mds(fixtures::fig1());
  EXPECT_TRUE(rep.mds);
  EXPECT_EQ(rep.subsets_checked, 6u);
  EXPECT_TRUE(rep.failing.empty());
}

TEST(Code, Table1IsMds) {
  const auto rep = verify_mds(fixtures::table1());
  EXPECT_TRUE(rep.mds);
  EXPECT_EQ(rep.subsets_checked, 15u);
}

TEST(Code, RepeatedParityIsNotMds) {
  const auto f = Field::make(2);
  const auto I = Matrix::identity(f, 2);
  const ArrayCode code({2, 2, 2}, f, {{I, I}, {I, I}});
  const auto rep = verify_mds(code);
  EXPECT_FALSE(rep.mds);
  ASSERT_EQ(rep.failing.size(), 1u);
  EXPECT_EQ(rep.failing[0], (std::vector<std::size_t>{2, 3}));
}

TEST(Code, EncodeMatchesHandComputation) {
  const auto code = fixtures::fig1();
  const auto f = code.field();
  DataFill d{{Matrix::column_vector(f, {1, 0}), Matrix::column_vector(f, {1, 1})}};
  const auto nodes = encode(code, d);
  ASSERT_EQ(nodes.size(), 4u);
  EXPECT_EQ(nodes[2], Matrix::column_vector(f, {0, 1}));
  // A v1 = (0, 1); (0, 1) + v2 = (1, 0)
  EXPECT_EQ(nodes[3], Matrix::column_vector(f, {1, 0}));
}

TEST(Code, ReconstructFromAnyKNodes) {
  const auto code = fixtures::table1();
  std::mt19937_64 rng(3);
  const auto fill = random_fill(code, rng);
  const auto nodes = encode(code, fill);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c)
        for (std::size_t d = c + 1; d < 6; ++d) {
          std::vector<std::pair<std::size_t, NodeVector>> surv{{a, nodes[a]}, {b, nodes[b]}, {c, nodes[c]}, {d, nodes[d]}};
          const auto got = reconstruct(code, surv);
          for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(got.systematic[j], fill.systematic[j]);
        }
}

TEST(Code, ShapeErrors) {
  const auto f = Field::make(2);
  const auto I = Matrix::identity(f, 2);
  EXPECT_THROW(ArrayCode({2, 2, 2}, f, {{I, I}}), Error);
  EXPECT_THROW(ArrayCode({2, 2, 2}, f, {{I, I}, {I, Matrix::identity(f, 3)}}), Error);
  EXPECT_THROW(ArrayCode({3, 2, 2}, f, {{I, I}, {I, I}}), Error);
}

TEST(Repair, Fig1SecondCoordinateScheme) {
  const auto code = fixtures::fig1();
  const auto scheme = fixtures::fig1_second_coordinate();
  EXPECT_TRUE(verify_scheme(code, scheme, 0).ok);
  std::mt19937_64 rng(1);
  for (int it = 0; it < 100; ++it) {
    const auto nodes = random_nodes(code, rng);
    const auto tr = execute_repair(code, scheme, 0, nodes);
    EXPECT_EQ(tr.recovered, nodes[0]);
    EXPECT_EQ(tr.symbols, 3u);
    EXPECT_EQ(tr.symbols, bandwidth_of(code.params()));
  }
}

TEST(Repair, MisalignedSchemeReportsViolation) {
  const auto code = fixtures::fig1();
  const auto f = code.field();
  NodeRepair nr;
  nr.failed = 0;
  nr.helpers = {std::nullopt, Matrix{f, {{1, 0}}}, Matrix{f, {{1, 0}}}, Matrix{f, {{0, 1}}}};
  RepairScheme s;
  s.set(nr);
  const auto chk = verify_scheme(code, s, 0);
  EXPECT_FALSE(chk.ok);
  ASSERT_FALSE(chk.violations.empty());
  EXPECT_EQ(chk.violations[0].kind, SchemeViolation::Kind::Alignment);
  std::mt19937_64 rng(1);
  try {
    execute_repair(code, s, 0, random_nodes(code, rng));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemeInvalid);
  }
}

TEST(Repair, DeficientSumReported) {
  const auto code = fixtures::fig1();
  const auto f = code.field();
  // S_{1,4} = S_{1,3} A_{2,1}^{-1}, so both parity images are span(0,1)
  NodeRepair nr;
  nr.failed = 0;
  nr.helpers = {std::nullopt, Matrix{f, {{0, 1}}}, Matrix{f, {{0, 1}}}, Matrix{f, {{1, 0}}}};
  RepairScheme s;
  s.set(nr);
  const auto chk = verify_scheme(code, s, 0);
  EXPECT_FALSE(chk.ok);
  bool deficient = false;
  for (const auto& v : chk.violations) deficient = deficient || v.kind == SchemeViolation::Kind::DeficientSum;
  EXPECT_TRUE(deficient);
}

TEST(Repair, InconsistentNodesRejected) {
  const auto code = fixtures::fig1();
  std::mt19937_64 rng(9);
  auto nodes = random_nodes(code, rng);
  nodes[2](0, 0) = code.field().add(nodes[2](0, 0), 1);
  try {
    execute_repair(code, fixtures::fig1_second_coordinate(), 0, nodes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentNodeData);
  }
}

TEST(Repair, WrongShapeRejected) {
  const auto code = fixtures::fig1();
  const auto f = code.field();
  NodeRepair nr;
  nr.failed = 0;
  nr.helpers = {std::nullopt, Matrix::identity(f, 2), Matrix{f, {{0, 1}}}, Matrix{f, {{0, 1}}}};
  EXPECT_THROW(check_node_shape(code, nr), Error);
}
