#include "ntrucipher/sampling.hpp"

#include <gtest/gtest.h>

#include <array>
#include <set>
#include <vector>

#include "ntrucipher/errors.hpp"
#include "ntrucipher/random_source.hpp"
#include "test_support.hpp"

namespace ntrucipher {
namespace {

std::array<std::size_t, 3> count_trits(const Poly& f) {
  std::array<std::size_t, 3> c{};  // -1, 0, +1
  for (std::int32_t v : f.coeffs()) {
    EXPECT_GE(v, -1);
    EXPECT_LE(v, 1);
    ++c[static_cast<std::size_t>(v + 1)];
  }
  return c;
}

TEST(RandomSourceTest, SeedDeterminism) {
  RandomSource a = RandomSource::from_index(42);
  RandomSource b = RandomSource::from_index(42);
  RandomSource c = RandomSource::from_index(43);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 200; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
}

TEST(RandomSourceTest, HexSeedRoundTrip) {
  const std::string hex =
      "00112233445566778899aabbccddeeff00112233445566778899aabbccddeeff";
  EXPECT_EQ(seed_to_hex(seed_from_hex(hex)), hex);
  // Short seeds are zero-padded: "2a" is index 42.
  RandomSource a(seed_from_hex("2a"));
  RandomSource b = RandomSource::from_index(42);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_THROW(seed_from_hex("abc"), ParameterError);
  EXPECT_THROW(seed_from_hex("zz"), ParameterError);
  EXPECT_THROW(seed_from_hex(std::string(66, '0')), ParameterError);
}

TEST(RandomSourceTest, SplitIsDeterministicAndIndependent) {
  const RandomSource parent = RandomSource::from_index(7);
  RandomSource s0 = parent.split(0);
  RandomSource s0_again = parent.split(0);
  RandomSource s1 = parent.split(1);
  const std::uint64_t first = s0.next_u64();
  EXPECT_EQ(first, s0_again.next_u64());
  EXPECT_NE(first, s1.next_u64());
}

TEST(RandomSourceTest, UnseededSourcesDiffer) {
  RandomSource a;
  RandomSource b;
  EXPECT_NE(a.seed(), b.seed());
}

TEST(RandomSourceTest, UniformStaysInRange) {
  RandomSource rng = RandomSource::from_index(8);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = rng.uniform(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.uniform(1), 0u);
  EXPECT_THROW(rng.uniform(0), ParameterError);
}

TEST(SampleTernaryTest, Examples) {
  RandomSource rng = RandomSource::from_index(9);
  EXPECT_TRUE(sample_ternary(16, 0, 0, 257, rng).is_zero());
  EXPECT_EQ(sample_ternary(4, 4, 0, 257, rng),
            Poly::from_coefficients({1, 1, 1, 1}, 257));
  EXPECT_THROW(sample_ternary(4, 3, 2, 257, rng), ParameterError);
}

TEST(SampleTernaryTest, ExactCountsOnEveryDraw) {
  RandomSource rng = RandomSource::from_index(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const Poly f = sample_ternary(64, 5, 7, 1087, rng);
    const auto c = count_trits(f);
    ASSERT_EQ(c[2], 5u);
    ASSERT_EQ(c[0], 7u);
    ASSERT_EQ(c[1], 52u);
  }
}

TEST(SampleTernaryTest, PlacementIsUniform) {
  RandomSource rng = RandomSource::from_index(11);
  std::array<int, 16> hits{};
  constexpr int kDraws = 30000;
  for (int trial = 0; trial < kDraws; ++trial) {
    const Poly f = sample_ternary(16, 1, 0, 257, rng);
    for (std::size_t i = 0; i < 16; ++i) {
      if (f[i] == 1) ++hits[i];
    }
  }
  const double expected = kDraws / 16.0;
  double chi2 = 0;
  for (int h : hits) {
    EXPECT_GE(h, 1600);
    EXPECT_LE(h, 2150);
    chi2 += (h - expected) * (h - expected) / expected;
  }
  // chi-square(15) upper 0.001 quantile
  EXPECT_LT(chi2, 37.697);
}

TEST(SampleBinaryTest, CoefficientsAndReproducibility) {
  RandomSource a = RandomSource::from_index(12);
  RandomSource b = RandomSource::from_index(12);
  const Poly fa = sample_binary(256, 1087, a);
  EXPECT_EQ(fa, sample_binary(256, 1087, b));
  for (std::int32_t v : fa.coeffs()) EXPECT_TRUE(v == 0 || v == 1);
}

TEST(SampleBinaryTest, MeanCoefficientConcentrates) {
  RandomSource rng = RandomSource::from_index(13);
  double total = 0;
  constexpr int kSamples = 10000;
  for (int s = 0; s < kSamples; ++s) {
    total += static_cast<double>(sample_binary(256, 1087, rng).evaluate_at_one());
  }
  const double mean = total / (256.0 * kSamples);
  EXPECT_GE(mean, 0.48);
  EXPECT_LE(mean, 0.52);
}

TEST(SampleProductFormTest, Examples) {
  RandomSource rng = RandomSource::from_index(14);
  EXPECT_TRUE(sample_product_form(16, 0, 0, 0, 257, rng).combined.is_zero());
  EXPECT_THROW(sample_product_form(8, 5, 1, 1, 257, rng), ParameterError);
  // 4*5*5 + 2*5 = 110 is not below 211/2.
  EXPECT_THROW(sample_product_form(256, 5, 5, 5, 211, rng), ParameterError);
}

TEST(SampleProductFormTest, StructuralInvariants) {
  RandomSource rng = RandomSource::from_index(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const ProductFormPoly pf = sample_product_form(256, 5, 5, 5, 1087, rng);
    const auto c1 = count_trits(pf.a1);
    const auto c3 = count_trits(pf.a3);
    ASSERT_EQ(c1[0], 5u);
    ASSERT_EQ(c1[2], 5u);
    ASSERT_EQ(c3[0], 5u);
    ASSERT_EQ(c3[2], 5u);
    // Each factor sums to zero, but wrapped terms change sign under x^n = -1,
    // so the reduced product only keeps an even coefficient sum.
    ASSERT_EQ(pf.a1.evaluate_at_one(), 0);
    ASSERT_EQ(pf.a2.evaluate_at_one(), 0);
    ASSERT_EQ(pf.combined.evaluate_at_one() % 2, 0);
    ASSERT_LE(norm_l1(pf.combined), 4 * 5 * 5 + 2 * 5);
    ASSERT_TRUE(witness_consistent(pf));
    // The witness agrees with a dense product over the integers.
    const auto want = testing::schoolbook_oracle(pf.a1.lift(), pf.a2.lift(), 1087);
    ASSERT_EQ((Poly::from_coefficients(want, 1087) + pf.a3), pf.combined);
  }
}

TEST(SampleProductFormTest, SeedDeterminism) {
  RandomSource a = RandomSource::from_index(16);
  RandomSource b = RandomSource::from_index(16);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_EQ(sample_product_form(64, 3, 3, 2, 257, a),
              sample_product_form(64, 3, 3, 2, 257, b));
  }
}

TEST(MulProductFormTest, MatchesDenseProduct) {
  RandomSource rng = RandomSource::from_index(17);
  for (int trial = 0; trial < 200; ++trial) {
    const ProductFormPoly pf = sample_product_form(64, 4, 4, 3, 1087, rng);
    const Poly f = testing::random_poly(64, 1087, rng);
    EXPECT_EQ(mul_product_form(f, pf), negacyclic_mul(f, pf.combined));
  }
}

}  // namespace
}  // namespace ntrucipher
