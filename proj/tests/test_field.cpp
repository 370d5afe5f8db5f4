#include <msrlab/field.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using msrlab::Error;
using msrlab::ErrorKind;
using msrlab::Field;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(PrimeField, MatchesModularArithmetic) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const auto f = Field::make(p);
    EXPECT_EQ(f.order(), p);
    EXPECT_TRUE(f.is_prime_field());
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        EXPECT_EQ(f.add(a, b), (a + b) % p);
        EXPECT_EQ(f.sub(a, b), (a + p - b) % p);
        EXPECT_EQ(f.mul(a, b), a * b % p);
      }
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
    }
  }
}

TEST(PrimeField, LargePrimeInverse) {
  const auto f = Field::make(1'000'000'007);
  for (std::uint64_t a : {2ull, 3ull, 123456789ull, 1'000'000'006ull}) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
}

TEST(ExtensionField, GF4MatchesShiftAndAdd) {
  const auto f = Field::make(2, 2, std::vector<std::uint64_t>{1, 1, 1});
  EXPECT_EQ(f.order(), 4u);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      EXPECT_EQ(f.mul(a, b), oracle::gf2m_mul(a, b, 2, 0b111)) << a << "*" << b;
      EXPECT_EQ(f.add(a, b), a ^ b);
    }
  EXPECT_EQ(f.inv(2), 3u);
}

TEST(ExtensionField, GF8AndGF16MatchShiftAndAdd) {
  const auto f8 = Field::make(2, 3, std::vector<std::uint64_t>{1, 1, 0, 1});
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b) EXPECT_EQ(f8.mul(a, b), oracle::gf2m_mul(a, b, 3, 0b1011));
  const auto f16 = Field::make(2, 4, std::vector<std::uint64_t>{1, 1, 0, 0, 1});
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) EXPECT_EQ(f16.mul(a, b), oracle::gf2m_mul(a, b, 4, 0b10011));
}

TEST(ExtensionField, GF9FieldAxioms) {
  // x^2 + 1 is irreducible over GF(3)
  const auto f = Field::make(3, 2, std::vector<std::uint64_t>{1, 0, 1});
  EXPECT_EQ(f.name(), "GF(3^2)");
  for (std::uint64_t a = 0; a < 9; ++a) {
    EXPECT_EQ(f.add(a, f.neg(a)), 0u);
    if (a) {
      EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    }
    for (std::uint64_t b = 0; b < 9; ++b)
      for (std::uint64_t c = 0; c < 9; ++c) {
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      }
  }
  // x * x = -1
  EXPECT_EQ(f.mul(3, 3), 2u);
  EXPECT_EQ(f.pow(3, 8), 1u);
}

TEST(FieldErrors, Kinds) {
  EXPECT_EQ(kind_of([] { Field::make(4); }), ErrorKind::NonPrimeCharacteristic);
  EXPECT_EQ(kind_of([] { Field::make(1); }), ErrorKind::NonPrimeCharacteristic);
  EXPECT_EQ(kind_of([] { Field::make(2, 2); }), ErrorKind::MissingReduction);
  EXPECT_EQ(kind_of([] { Field::make(2, 2, std::vector<std::uint64_t>{1, 0, 1}); }), ErrorKind::ReduciblePolynomial);
  EXPECT_EQ(kind_of([] { Field::make(2, 2, std::vector<std::uint64_t>{1, 1}); }), ErrorKind::InvalidReduction);
  EXPECT_EQ(kind_of([] { Field::make(3, 2, std::vector<std::uint64_t>{1, 0, 2}); }), ErrorKind::InvalidReduction);
  EXPECT_EQ(kind_of([] { Field::make(7, 1, std::vector<std::uint64_t>{1, 1}); }), ErrorKind::InvalidReduction);
  EXPECT_EQ(kind_of([] { Field::make(2).inv(0); }), ErrorKind::SingularMatrix);
}

TEST(FieldErrors, Identity) {
  EXPECT_EQ(Field::make(7), Field::make(7));
  EXPECT_FALSE(Field::make(7) == Field::make(5));
  EXPECT_EQ(Field::make(7).name(), "GF(7)");
}
