#include "ntrucipher/cipher.hpp"

#include <string>
#include <utility>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {
namespace {

void check_plaintext(const ParamSet& ps, const Poly& mu) {
  if (mu.degree_bound() != ps.n || mu.modulus() != ps.q) {
    throw InputError("plaintext is not an element of R_{n,q}");
  }
  if (norm_inf(mu) > static_cast<std::int64_t>((ps.p - 1) / 2)) {
    throw InputError("plaintext coefficient outside [-(p-1)/2, (p-1)/2]");
  }
}

void check_ciphertext(const ParamSet& ps, const Ciphertext& c) {
  if (c.c.degree_bound() != ps.n || c.c.modulus() != ps.q) {
    throw DimensionError("ciphertext ring does not match the key");
  }
}

}  // namespace

SecretKey SecretKey::from_parts(const ParamSet& ps, Poly k, Poly k_inv,
                                std::optional<ProductFormPoly> witness) {
  require_valid(ps);
  for (const Poly* f : {&k, &k_inv}) {
    if (f->degree_bound() != ps.n || f->modulus() != ps.q) {
      throw CorruptionError("key polynomial does not match parameter set");
    }
  }
  if (negacyclic_mul(k, k_inv) != Poly::constant(ps.n, ps.q, 1)) {
    throw CorruptionError("k * k_inv != 1");
  }
  if (reduce_mod_p(k, ps.p) != Poly::constant(ps.n, ps.q, 1)) {
    throw CorruptionError("k mod p != 1");
  }
  if (witness) {
    if (!witness_consistent(*witness) ||
        k != Poly::constant(ps.n, ps.q, 1) + scalar_mul(witness->combined, ps.p)) {
      throw CorruptionError("k != 1 + p * k'");
    }
  }
  return SecretKey(ps, std::move(k), std::move(k_inv), std::move(witness));
}

SecretKey keygen(const ParamSet& ps, RandomSource& rng, int retry_budget) {
  require_valid(ps);
  const Poly one = Poly::constant(ps.n, ps.q, 1);
  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    ProductFormPoly k_prime =
        sample_product_form(ps.n, ps.a1, ps.a2, ps.a3, ps.q, rng);
    Poly k = one + scalar_mul(k_prime.combined, ps.p);
    std::optional<Poly> k_inv = invert_mod_q(k);
    if (!k_inv) continue;
    SecretKey sk(ps, std::move(k), std::move(*k_inv), std::move(k_prime));
    sk.keygen_attempts_ = attempt;
    return sk;
  }
  throw KeyGenerationError("no invertible key after " +
                           std::to_string(retry_budget) + " draws");
}

Plaintext make_plaintext(const ParamSet& ps,
                         std::span<const std::int64_t> coeffs) {
  if (coeffs.size() != ps.n) {
    throw InputError("plaintext length " + std::to_string(coeffs.size()) +
                     " != n=" + std::to_string(ps.n));
  }
  const std::int64_t half = (ps.p - 1) / 2;
  for (std::int64_t c : coeffs) {
    if (c < -half || c > half) {
      throw InputError("plaintext coefficient " + std::to_string(c) +
                       " outside [-(p-1)/2, (p-1)/2]");
    }
  }
  return Plaintext{Poly::from_coefficients(coeffs, ps.q)};
}

EncryptionTranscript encrypt_with_transcript(const Plaintext& mu,
                                             const SecretKey& sk,
                                             RandomSource& rng) {
  const ParamSet& ps = sk.params();
  check_plaintext(ps, mu.mu);
  ProductFormPoly r =
      sample_product_form(ps.n, ps.a1, ps.a2, ps.a3, ps.q, rng);
  Poly c = scalar_mul(mul_product_form(sk.k_inv(), r), ps.p) + mu.mu;
  return EncryptionTranscript{std::move(r), Ciphertext{std::move(c)}};
}

Ciphertext encrypt(const Plaintext& mu, const SecretKey& sk,
                   RandomSource& rng) {
  return encrypt_with_transcript(mu, sk, rng).ciphertext;
}

DecryptionTrace decrypt_with_intermediate(const Ciphertext& c,
                                          const SecretKey& sk) {
  const ParamSet& ps = sk.params();
  check_ciphertext(ps, c);
  // k = 1 + p*k' is sparse, so the sparse path is the cheap one.
  Poly c_prime = negacyclic_mul_sparse(c.c, sk.k());
  const std::int64_t max_abs = norm_inf(c_prime);
  Poly mu = reduce_mod_p(c_prime, ps.p);
  return DecryptionTrace{Plaintext{std::move(mu)}, std::move(c_prime), max_abs};
}

Plaintext decrypt(const Ciphertext& c, const SecretKey& sk) {
  return decrypt_with_intermediate(c, sk).plaintext;
}

}  // namespace ntrucipher
