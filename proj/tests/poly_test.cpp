#include "ntrucipher/poly.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ntrucipher/errors.hpp"
#include "test_support.hpp"

namespace ntrucipher {
namespace {

using testing::as_vector;
using testing::random_poly;
using testing::schoolbook_oracle;
using Coeffs = std::vector<std::int64_t>;

Poly P(std::initializer_list<std::int64_t> c, std::int64_t q = 17) {
  return Poly::from_coefficients(c, q);
}

TEST(CenterModTest, OddAndEvenModuli) {
  EXPECT_EQ(center_mod(9, 17), -8);
  EXPECT_EQ(center_mod(8, 17), 8);
  EXPECT_EQ(center_mod(-9, 17), 8);
  // Ties at q/2 go to +q/2 for even moduli.
  EXPECT_EQ(center_mod(2, 4), 2);
  EXPECT_EQ(center_mod(-2, 4), 2);
  EXPECT_EQ(center_mod(3, 4), -1);
}

TEST(PolyTest, ConstructionCentersCoefficients) {
  const Poly f = P({16, 17, 18, -9});
  EXPECT_EQ(as_vector(f), (Coeffs{-1, 0, 1, 8}));
  EXPECT_EQ(f.degree_bound(), 4u);
  EXPECT_EQ(f.modulus(), 17);
  EXPECT_THROW(Poly(0, 17), ParameterError);
  EXPECT_THROW(Poly(4, 1), ParameterError);
}

TEST(PolyTest, MonomialWrapsWithSign) {
  EXPECT_EQ(Poly::monomial(4, 17, 5), P({0, -1, 0, 0}));
  EXPECT_EQ(Poly::monomial(4, 17, 8), P({1, 0, 0, 0}));
}

TEST(AddTest, Examples) {
  RandomSource rng = RandomSource::from_index(1);
  const Poly f = random_poly(16, 17, rng);
  EXPECT_EQ(f + Poly(16, 17), f);
  EXPECT_EQ(P({8, 0, 0, 0}) + P({1, 0, 0, 0}), P({-8, 0, 0, 0}));
  EXPECT_TRUE((f + (-f)).is_zero());
}

TEST(AddTest, MismatchedRingsThrow) {
  EXPECT_THROW(Poly(4, 17) + Poly(8, 17), DimensionError);
  EXPECT_THROW(Poly(4, 17) + Poly(4, 19), DimensionError);
  EXPECT_THROW(negacyclic_mul(Poly(4, 17), Poly(4, 19)), DimensionError);
  EXPECT_THROW(negacyclic_mul_sparse(Poly(4, 17), Poly(8, 17)), DimensionError);
}

TEST(NegacyclicMulTest, Examples) {
  EXPECT_EQ(negacyclic_mul(P({0, 0, 0, 1}), P({0, 1, 0, 0})), P({-1, 0, 0, 0}));
  EXPECT_EQ(negacyclic_mul(P({1, 1, 0, 0}), P({1, 0, 1, 0})), P({1, 1, 1, 1}));
  RandomSource rng = RandomSource::from_index(2);
  const Poly f = random_poly(8, 17, rng);
  EXPECT_EQ(negacyclic_mul(f, Poly::constant(8, 17, 1)), f);
  EXPECT_EQ(negacyclic_mul_sparse(f, Poly::constant(8, 17, 1)), f);
}

TEST(NegacyclicMulTest, MonomialPairsMultiplyToMinusOne) {
  for (std::size_t n : {4u, 8u, 16u}) {
    for (std::size_t j = 0; j <= n; ++j) {
      const Poly prod = negacyclic_mul(Poly::monomial(n, 257, j),
                                       Poly::monomial(n, 257, n - j));
      EXPECT_EQ(prod, Poly::constant(n, 257, -1)) << "n=" << n << " j=" << j;
    }
  }
}

TEST(NegacyclicMulTest, DenseAndSparseMatchOracle) {
  RandomSource rng = RandomSource::from_index(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Poly f = random_poly(8, 257, rng);
    const Poly g = random_poly(8, 257, rng);
    const Coeffs want = schoolbook_oracle(as_vector(f), as_vector(g), 257);
    EXPECT_EQ(as_vector(negacyclic_mul(f, g)), want);
    EXPECT_EQ(as_vector(negacyclic_mul_sparse(f, g)), want);
  }
}

TEST(NegacyclicMulTest, RingAxioms) {
  RandomSource rng = RandomSource::from_index(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Poly f = random_poly(16, 17, rng);
    const Poly g = random_poly(16, 17, rng);
    const Poly h = random_poly(16, 17, rng);
    EXPECT_EQ(negacyclic_mul(negacyclic_mul(f, g), h),
              negacyclic_mul(f, negacyclic_mul(g, h)));
    EXPECT_EQ(negacyclic_mul(f, g), negacyclic_mul(g, f));
    EXPECT_EQ(negacyclic_mul(f, g + h),
              negacyclic_mul(f, g) + negacyclic_mul(f, h));
  }
}

TEST(NegacyclicMulTest, ProductNormBounds) {
  RandomSource rng = RandomSource::from_index(5);
  const double sqrt_n = std::sqrt(16.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Poly f = random_poly(16, 257, rng);
    const Poly g = random_poly(16, 257, rng);
    const Poly fg = negacyclic_mul(f, g);
    EXPECT_LE(norm_l2(fg), sqrt_n * norm_l2(f) * norm_l2(g));
    EXPECT_LE(norm_inf(fg), 16 * norm_inf(f) * norm_inf(g));
  }
}

TEST(InvertModQTest, Examples) {
  EXPECT_EQ(invert_mod_q(Poly::constant(4, 17, 1)), Poly::constant(4, 17, 1));
  EXPECT_EQ(invert_mod_q(P({0, 1, 0, 0})), P({0, 0, 0, -1}));
  EXPECT_EQ(invert_mod_q(P({1, 0, 1, 0})), P({-8, 0, 8, 0}));
}

TEST(InvertModQTest, NonInvertibleInputs) {
  EXPECT_FALSE(invert_mod_q(Poly(4, 17)).has_value());
  // 2^4 = 16 = -1 (mod 17), so x - 2 divides x^4 + 1.
  EXPECT_FALSE(invert_mod_q(P({-2, 1, 0, 0})).has_value());
  // x^4 + 1 = (x^2 + 4)(x^2 - 4) mod 17.
  EXPECT_FALSE(invert_mod_q(P({4, 0, 1, 0})).has_value());
}

TEST(InvertModQTest, RequiresPrimeModulus) {
  EXPECT_THROW(invert_mod_q(Poly::constant(4, 16, 1)), ParameterError);
}

TEST(InvertModQTest, PostconditionOnRandomDraws) {
  RandomSource rng = RandomSource::from_index(6);
  int inverted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Poly f = random_poly(32, 1087, rng);
    if (auto inv = invert_mod_q(f)) {
      ++inverted;
      EXPECT_EQ(negacyclic_mul(f, *inv), Poly::constant(32, 1087, 1));
    }
  }
  EXPECT_GT(inverted, 250);
}

TEST(ReduceModPTest, Examples) {
  EXPECT_EQ(reduce_mod_p(P({4, -4, 3, -3}), 3), P({1, -1, 0, 0}));
  EXPECT_EQ(reduce_mod_p(P({3, -3, 0, 6}), 3), Poly(4, 17));
  EXPECT_EQ(reduce_mod_p(P({7, -7, 2, -2}), 5), P({2, -2, 2, -2}));
}

TEST(ReduceModPTest, RejectsBadModulus) {
  EXPECT_THROW(reduce_mod_p(P({1, 0, 0, 0}), 4), ParameterError);
  EXPECT_THROW(reduce_mod_p(P({1, 0, 0, 0}), 17), ParameterError);
  EXPECT_THROW(reduce_mod_p(P({1, 0, 0, 0}), 19), ParameterError);
}

TEST(NormTest, Examples) {
  const Poly zero(4, 17);
  EXPECT_EQ(norm_inf(zero), 0);
  EXPECT_EQ(norm_l1(zero), 0);
  EXPECT_EQ(norm_l2(zero), 0.0);
  EXPECT_EQ(norm_l2_centered(zero), 0.0);

  const Poly f = P({1, -1, 0, 0});
  EXPECT_EQ(norm_inf(f), 1);
  EXPECT_EQ(norm_l1(f), 2);
  EXPECT_DOUBLE_EQ(norm_l2(f), std::sqrt(2.0));

  EXPECT_EQ(norm_l2_centered(P({2, 2, 2, 2})), 0.0);
  // mean 1: deviations (2, -2, 0, 0)
  EXPECT_DOUBLE_EQ(norm_l2_centered(P({3, -1, 1, 1})), std::sqrt(8.0));
}

}  // namespace
}  // namespace ntrucipher
