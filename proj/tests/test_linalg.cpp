#include <msrlab/subspace.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace msrlab;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<FieldElem> d(0, f.order() - 1);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

oracle::VecSet as_set(const Subspace& s, std::uint64_t p) {
  return oracle::span(oracle::rows_of(s.basis()), s.ambient(), p);
}

}  // namespace

TEST(Matrix, InverseOfFig1Parity) {
  const auto f = Field::make(2);
  const Matrix a{f, {{0, 1}, {1, 1}}};
  const Matrix inv{f, {{1, 1}, {1, 0}}};
  EXPECT_EQ(invert(a), inv);
  EXPECT_TRUE((a * inv).is_identity());
}

TEST(Matrix, RandomInverses) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2, 3, 7}) {
    const auto f = Field::make(p);
    for (int it = 0; it < 200; ++it) {
      const auto m = random_matrix(f, 4, 4, rng);
      if (!is_invertible(m)) {
        EXPECT_THROW(invert(m), Error);
        continue;
      }
      EXPECT_TRUE((m * invert(m)).is_identity());
      EXPECT_TRUE((invert(m) * m).is_identity());
    }
  }
}

TEST(Matrix, KernelAndSolve) {
  std::mt19937_64 rng(5);
  const auto f = Field::make(5);
  for (int it = 0; it < 100; ++it) {
    const auto m = random_matrix(f, 3, 5, rng);
    const auto k = kernel(m);
    EXPECT_EQ(k.cols(), 5 - rank(m));
    EXPECT_TRUE((m * k).is_zero());
    const auto x = random_matrix(f, 5, 1, rng);
    const auto sq = random_matrix(f, 5, 5, rng);
    if (is_invertible(sq)) {
      EXPECT_EQ(solve(sq, sq * x), x);
    }
    const auto c = random_matrix(f, 2, 3, rng);
    const auto target = c * m;
    const auto sol = solve_left(m, target);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(*sol * m, target);
  }
}

TEST(Matrix, ExtensionFieldRank) {
  const auto f = Field::make(2, 2, std::vector<std::uint64_t>{1, 1, 1});
  // rows (1, x) and (x, x+1): x*(1, x) = (x, x^2) = (x, x+1)
  EXPECT_EQ(rank(Matrix{f, {{1, 2}, {2, 3}}}), 1u);
  EXPECT_EQ(rank(Matrix{f, {{1, 2}, {2, 1}}}), 2u);
}

TEST(Matrix, FieldMismatchAndShapes) {
  const Matrix a = Matrix::identity(Field::make(2), 2);
  const Matrix b = Matrix::identity(Field::make(3), 2);
  EXPECT_THROW(a * b, Error);
  EXPECT_THROW(a * Matrix::identity(Field::make(2), 3), Error);
  EXPECT_THROW(Matrix(Field::make(3), 1, 1, {3}), Error);
}

TEST(Subspace, Fig1Examples) {
  const auto f = Field::make(2);
  const auto s01 = Subspace::span(Matrix{f, {{0, 1}}});
  const auto s11 = Subspace::span(Matrix{f, {{1, 1}}});
  EXPECT_TRUE(sum(s01, s11).is_full());
  EXPECT_TRUE(intersect(s01, s11).is_zero());
  EXPECT_EQ(intersect(s01, s01), s01);
  EXPECT_EQ(s01.apply(Matrix{f, {{0, 1}, {1, 1}}}), s11);
}

TEST(Subspace, CanonicalBasis) {
  const auto f = Field::make(3);
  const auto a = Subspace::span(Matrix{f, {{2, 1, 0}, {0, 1, 1}, {1, 0, 1}}});
  const auto b = Subspace::span(Matrix{f, {{1, 2, 0}, {0, 1, 1}}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(std::hash<Subspace>{}(a), std::hash<Subspace>{}(b));
}

TEST(Subspace, Errors) {
  const auto a = Subspace::full(Field::make(2), 2);
  EXPECT_THROW(sum(a, Subspace::full(Field::make(2), 3)), Error);
  EXPECT_THROW(sum(a, Subspace::full(Field::make(3), 2)), Error);
  EXPECT_THROW(a.apply(Matrix::identity(Field::make(2), 3)), Error);
}

TEST(Subspace, IntersectionAgreesWithVectorSets) {
  std::mt19937_64 rng(2024);
  for (std::uint64_t p : {2, 3}) {
    const auto f = Field::make(p);
    for (int it = 0; it < 150; ++it) {
      const std::size_t n = 2 + it % 4;
      const auto u = Subspace::span(random_matrix(f, 1 + it % n, n, rng));
      const auto w = Subspace::span(random_matrix(f, 1 + (it / 3) % n, n, rng));
      const auto su = as_set(u, p), sw = as_set(w, p);
      EXPECT_EQ(as_set(intersect(u, w), p), oracle::meet(su, sw));
      EXPECT_EQ(as_set(sum(u, w), p), oracle::join(su, sw, p));
    }
  }
}

TEST(Family, AgreesWithCoefficientEnumeration) {
  std::mt19937_64 rng(77);
  for (std::uint64_t p : {2, 3}) {
    const auto f = Field::make(p);
    for (int it = 0; it < 200; ++it) {
      std::vector<Matrix> fam;
      const std::size_t size = 1 + it % 5;
      for (std::size_t x = 0; x < size; ++x) fam.push_back(random_matrix(f, 2, 2, rng));
      if (it % 4 == 0 && size > 2) fam[2] = fam[0] + fam[1];
      EXPECT_EQ(family_independent(fam), oracle::family_independent(fam));
      const auto dep = family_dependency(fam);
      EXPECT_EQ(dep.has_value(), !oracle::family_independent(fam));
      if (dep) {
        Matrix acc(f, 2, 2);
        for (std::size_t x = 0; x < size; ++x) acc = acc + fam[x].scaled((*dep)[x]);
        EXPECT_TRUE(acc.is_zero());
      }
    }
  }
}

TEST(Family, OversizedFamilyIsDependent) {
  const auto f = Field::make(2);
  std::vector<Matrix> fam(5, Matrix::identity(f, 2));
  EXPECT_FALSE(family_independent(fam));
  EXPECT_THROW(family_independent(std::vector<Matrix>{Matrix::identity(f, 2), Matrix::identity(f, 3)}), Error);
}
