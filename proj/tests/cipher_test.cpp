#include "ntrucipher/cipher.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "ntrucipher/errors.hpp"
#include "test_support.hpp"

namespace ntrucipher {
namespace {

using testing::as_vector;
using testing::schoolbook_oracle;

const ParamSet kRecommended = *profile("paper-2017");
const ParamSet kToy = *profile("toy-16");

// Large enough that no integer product below wraps.
constexpr std::int64_t kWide = 1 << 24;

std::vector<std::int64_t> random_trits(std::size_t n, RandomSource& rng) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(rng.uniform(3)) - 1;
  return v;
}

// k' = A1*A2 + A3 over the integers, folded by x^n = -1.
std::vector<std::int64_t> witness_combined(const ProductFormPoly& pf) {
  auto v = schoolbook_oracle(pf.a1.lift(), pf.a2.lift(), kWide);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += pf.a3[i];
  return v;
}

void expect_key_invariants(const SecretKey& sk) {
  const ParamSet& ps = sk.params();
  const std::int64_t q = ps.q;
  ASSERT_TRUE(sk.witness().has_value());
  const auto kp = witness_combined(*sk.witness());
  std::vector<std::int64_t> k(kp.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = (i == 0) + ps.p * kp[i];
  EXPECT_EQ(sk.k(), Poly::from_coefficients(k, q));
  EXPECT_EQ(negacyclic_mul(sk.k(), sk.k_inv()), Poly::constant(ps.n, q, 1));
  EXPECT_EQ(reduce_mod_p(sk.k(), ps.p), Poly::constant(ps.n, q, 1));
  EXPECT_GE(sk.keygen_attempts(), 1);
}

TEST(KeygenTest, InvariantsAtRecommendedParameters) {
  RandomSource rng = RandomSource::from_index(100);
  for (int i = 0; i < 20; ++i) expect_key_invariants(keygen(kRecommended, rng));
}

TEST(KeygenTest, InvariantsAtToyParameters) {
  RandomSource rng = RandomSource::from_index(101);
  for (int i = 0; i < 200; ++i) expect_key_invariants(keygen(kToy, rng));
}

TEST(KeygenTest, FrozenFixture) {
  RandomSource rng = RandomSource::from_index(1);
  const SecretKey sk = keygen(kToy, rng);
  const std::vector<std::int64_t> k{-2, 0, 0, 3, 0, 0, 0, 0, 0, 3, 0, -3, 0, 0, 0, 0};
  EXPECT_EQ(as_vector(sk.k()), k);
  // Hand expansion: (x^5 - x^9)(x^2 - x^14) + (x^9 - 1) = x^3 - x^11 + x^9 - 1.
  EXPECT_EQ(as_vector(sk.witness()->a1),
            (std::vector<std::int64_t>{0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(as_vector(sk.witness()->a2),
            (std::vector<std::int64_t>{0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0}));
  EXPECT_EQ(as_vector(sk.witness()->a3),
            (std::vector<std::int64_t>{-1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}));
  expect_key_invariants(sk);
}

TEST(KeygenTest, SeedDeterminism) {
  RandomSource a = RandomSource::from_index(7);
  RandomSource b = RandomSource::from_index(7);
  EXPECT_EQ(keygen(kRecommended, a).k(), keygen(kRecommended, b).k());
}

TEST(KeygenTest, RetryBudgetIsEnforced) {
  RandomSource rng = RandomSource::from_index(3);
  EXPECT_THROW(keygen(kToy, rng, 0), KeyGenerationError);
  EXPECT_THROW(keygen(ParamSet{100, 3, 1087, 5, 5, 5, 40, 80}, rng), ParameterError);
}

TEST(SecretKeyTest, FromPartsRejectsInconsistentKeys) {
  RandomSource rng = RandomSource::from_index(4);
  const SecretKey sk = keygen(kToy, rng);
  EXPECT_NO_THROW(SecretKey::from_parts(kToy, sk.k(), sk.k_inv(), sk.witness()));
  EXPECT_NO_THROW(SecretKey::from_parts(kToy, sk.k(), sk.k_inv()));
  Poly bad_inv = sk.k_inv() + Poly::constant(16, 257, 1);
  EXPECT_THROW(SecretKey::from_parts(kToy, sk.k(), bad_inv), CorruptionError);
  // k = 1 + p*0 + 1 is invertible but not 1 mod p.
  const Poly two = Poly::constant(16, 257, 2);
  EXPECT_THROW(SecretKey::from_parts(kToy, two, *invert_mod_q(two)), CorruptionError);
}

TEST(PlaintextTest, RangeAndLength) {
  const std::vector<std::int64_t> ok(16, -1);
  EXPECT_NO_THROW(make_plaintext(kToy, ok));
  std::vector<std::int64_t> high(16, 0);
  high[3] = 2;
  EXPECT_THROW(make_plaintext(kToy, high), InputError);
  EXPECT_THROW(make_plaintext(kToy, std::vector<std::int64_t>(15, 0)), InputError);
}

TEST(EncryptTest, ZeroMessageRoundTrip) {
  RandomSource rng = RandomSource::from_index(10);
  const SecretKey sk = keygen(kRecommended, rng);
  const Plaintext zero = make_plaintext(kRecommended, std::vector<std::int64_t>(256, 0));
  EXPECT_EQ(decrypt(encrypt(zero, sk, rng), sk), zero);
}

TEST(EncryptTest, FreshEphemeralPerCall) {
  RandomSource rng = RandomSource::from_index(11);
  const SecretKey sk = keygen(kRecommended, rng);
  const Plaintext mu = make_plaintext(kRecommended, random_trits(256, rng));
  const Ciphertext c1 = encrypt(mu, sk, rng);
  const Ciphertext c2 = encrypt(mu, sk, rng);
  EXPECT_NE(c1, c2);
  EXPECT_EQ(decrypt(c1, sk), decrypt(c2, sk));
}

TEST(EncryptTest, FrozenVector) {
  RandomSource key_rng = RandomSource::from_index(1);
  const SecretKey sk = keygen(kToy, key_rng);
  const std::vector<std::int64_t> mu{1, -1, 0, 0, 1, 1, -1, 0, 1, 0, -1, -1, 0, 1, 0, 1};
  RandomSource enc_rng = RandomSource::from_index(2);
  const EncryptionTranscript tr =
      encrypt_with_transcript(make_plaintext(kToy, mu), sk, enc_rng);
  const std::vector<std::int64_t> c{107,  45,  63,   121, -41, 124,  -124, -69,
                                    48,   -68, -100, 5,   -118, -48, -115, -42};
  EXPECT_EQ(as_vector(tr.ciphertext.c), c);

  // Independent recomputation of p*r*k^{-1} + mu from the witness.
  const auto r = witness_combined(tr.r_witness);
  auto expect = schoolbook_oracle(r, sk.k_inv().lift(), 257);
  for (std::size_t i = 0; i < 16; ++i) expect[i] = 3 * expect[i] + mu[i];
  EXPECT_EQ(tr.ciphertext.c, Poly::from_coefficients(expect, 257));
  EXPECT_EQ(as_vector(decrypt(tr.ciphertext, sk).mu), mu);

  RandomSource again = RandomSource::from_index(2);
  EXPECT_EQ(encrypt(make_plaintext(kToy, mu), sk, again), tr.ciphertext);
}

TEST(EncryptTest, TranscriptRecomputesAtRecommendedParameters) {
  RandomSource rng = RandomSource::from_index(12);
  const SecretKey sk = keygen(kRecommended, rng);
  for (int i = 0; i < 20; ++i) {
    const auto mu = random_trits(256, rng);
    const EncryptionTranscript tr = encrypt_with_transcript(make_plaintext(kRecommended, mu), sk, rng);
    ASSERT_TRUE(witness_consistent(tr.r_witness));
    const Poly dense =
        scalar_mul(negacyclic_mul(tr.r_witness.combined, sk.k_inv()), 3) +
        Poly::from_coefficients(mu, 1087);
    ASSERT_EQ(tr.ciphertext.c, dense);
  }
}

TEST(DecryptTest, ZeroCiphertext) {
  RandomSource rng = RandomSource::from_index(13);
  const SecretKey sk = keygen(kRecommended, rng);
  EXPECT_EQ(decrypt(Ciphertext{Poly(256, 1087)}, sk).mu, Poly(256, 1087));
}

TEST(DecryptTest, RoundTripAtRecommendedParameters) {
  RandomSource rng = RandomSource::from_index(14);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const SecretKey sk = keygen(kRecommended, rng);
    const Plaintext mu = make_plaintext(kRecommended, random_trits(256, rng));
    if (decrypt(encrypt(mu, sk, rng), sk) != mu) ++failures;
  }
  EXPECT_EQ(failures, 0);
}

TEST(DecryptTest, IntermediateMatchesIntegerExpression) {
  // c' = p*r + mu*k exactly, whenever that stays inside (-q/2, q/2).
  RandomSource rng = RandomSource::from_index(15);
  int exact = 0;
  for (int i = 0; i < 300; ++i) {
    const SecretKey sk = keygen(kToy, rng);
    const auto mu = random_trits(16, rng);
    const EncryptionTranscript tr = encrypt_with_transcript(make_plaintext(kToy, mu), sk, rng);
    const DecryptionTrace trace = decrypt_with_intermediate(tr.ciphertext, sk);
    auto want = schoolbook_oracle(mu, sk.k().lift(), kWide);
    const auto r = witness_combined(tr.r_witness);
    std::int64_t inf = 0;
    for (std::size_t j = 0; j < 16; ++j) {
      want[j] += 3 * r[j];
      inf = std::max(inf, std::abs(want[j]));
    }
    if (2 * inf < 257) {
      ASSERT_EQ(as_vector(trace.c_prime), want);
      ASSERT_EQ(as_vector(trace.plaintext.mu), mu);
      ++exact;
    }
  }
  EXPECT_GT(exact, 250);
}

TEST(DecryptTest, ZeroMessageIntermediateIsScaledEphemeral) {
  RandomSource rng = RandomSource::from_index(16);
  const SecretKey sk = keygen(kRecommended, rng);
  const EncryptionTranscript tr = encrypt_with_transcript(
      make_plaintext(kRecommended, std::vector<std::int64_t>(256, 0)), sk, rng);
  const DecryptionTrace trace = decrypt_with_intermediate(tr.ciphertext, sk);
  EXPECT_EQ(trace.c_prime, scalar_mul(tr.r_witness.combined, 3));
}

TEST(DecryptTest, MarginSweepAndNormBound) {
  RandomSource rng = RandomSource::from_index(17);
  const SecretKey sk = keygen(kRecommended, rng);
  const std::int64_t kp_l1 = norm_l1(sk.witness()->combined);
  std::int64_t worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto mu = random_trits(256, rng);
    const Plaintext pt = make_plaintext(kRecommended, mu);
    const EncryptionTranscript tr = encrypt_with_transcript(pt, sk, rng);
    const DecryptionTrace trace = decrypt_with_intermediate(tr.ciphertext, sk);
    ASSERT_EQ(trace.max_abs_coeff, norm_inf(trace.c_prime));
    ASSERT_LT(2 * trace.max_abs_coeff, 1087);
    const std::int64_t bound =
        3 * (norm_l1(tr.r_witness.combined) + norm_inf(pt.mu) * kp_l1) + 1;
    ASSERT_LE(trace.max_abs_coeff, bound);
    ASSERT_EQ(trace.plaintext, pt);
    worst = std::max(worst, trace.max_abs_coeff);
  }
  RecordProperty("worst_margin", static_cast<int>(worst));
}

TEST(DecryptTest, Deterministic) {
  RandomSource rng = RandomSource::from_index(18);
  const SecretKey sk = keygen(kRecommended, rng);
  const Ciphertext c = encrypt(make_plaintext(kRecommended, random_trits(256, rng)), sk, rng);
  EXPECT_EQ(decrypt_with_intermediate(c, sk).c_prime, decrypt_with_intermediate(c, sk).c_prime);
}

}  // namespace
}  // namespace ntrucipher
