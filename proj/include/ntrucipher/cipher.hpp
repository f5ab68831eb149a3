#ifndef NTRUCIPHER_CIPHER_HPP
#define NTRUCIPHER_CIPHER_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "ntrucipher/params.hpp"
#include "ntrucipher/poly.hpp"
#include "ntrucipher/random_source.hpp"
#include "ntrucipher/sampling.hpp"

namespace ntrucipher {

inline constexpr int kDefaultKeygenRetryBudget = 100;

// k = 1 + p*k' with k' in product form, together with k^-1 mod q.
//
// Every constructor path re-checks that k * k_inv == 1 and k == 1 (mod p).
// The product-form witness of k' is present for freshly generated keys and
// absent for keys loaded from disk.
class SecretKey {
 public:
  // Throws CorruptionError when an invariant fails, ParameterError when the
  // parameter set is invalid.
  static SecretKey from_parts(const ParamSet& ps, Poly k, Poly k_inv,
                              std::optional<ProductFormPoly> witness = {});

  const ParamSet& params() const { return params_; }
  const Poly& k() const { return k_; }
  const Poly& k_inv() const { return k_inv_; }
  const std::optional<ProductFormPoly>& witness() const { return witness_; }
  // Number of k' draws keygen needed (0 for keys not made by keygen).
  int keygen_attempts() const { return keygen_attempts_; }

 private:
  SecretKey(const ParamSet& ps, Poly k, Poly k_inv,
            std::optional<ProductFormPoly> witness)
      : params_(ps), k_(std::move(k)), k_inv_(std::move(k_inv)),
        witness_(std::move(witness)) {}

  friend SecretKey keygen(const ParamSet&, RandomSource&, int);

  ParamSet params_;
  Poly k_;
  Poly k_inv_;
  std::optional<ProductFormPoly> witness_;
  int keygen_attempts_ = 0;
};

struct Plaintext {
  Poly mu;
  friend bool operator==(const Plaintext&, const Plaintext&) = default;
};

struct Ciphertext {
  Poly c;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Encryption output together with the ephemeral r it used. Instrumentation
// for tests and the cryptanalysis demos; never persisted.
struct EncryptionTranscript {
  ProductFormPoly r_witness;
  Ciphertext ciphertext;
};

struct DecryptionTrace {
  Plaintext plaintext;
  Poly c_prime;                // c * k, centered mod q
  std::int64_t max_abs_coeff;  // |c_prime|_inf
};

// Repeats k' <- P_n(a1, a2, a3), k = 1 + p*k' until k is invertible mod q.
// Throws KeyGenerationError after `retry_budget` failed draws.
SecretKey keygen(const ParamSet& ps, RandomSource& rng,
                 int retry_budget = kDefaultKeygenRetryBudget);

// Builds a plaintext in R_{n,q}; throws InputError when a coefficient lies
// outside [-(p-1)/2, (p-1)/2] or the length is not n.
Plaintext make_plaintext(const ParamSet& ps,
                         std::span<const std::int64_t> coeffs);

// c = p * r * k^-1 + mu (mod q) with a fresh r <- P_n(a1, a2, a3).
Ciphertext encrypt(const Plaintext& mu, const SecretKey& sk,
                   RandomSource& rng);
EncryptionTranscript encrypt_with_transcript(const Plaintext& mu,
                                             const SecretKey& sk,
                                             RandomSource& rng);

// c' = c * k centered mod q, then reduced and centered mod p. A coefficient
// of p*(r + mu*k') + mu reaching q/2 yields a wrong plaintext silently.
Plaintext decrypt(const Ciphertext& c, const SecretKey& sk);
DecryptionTrace decrypt_with_intermediate(const Ciphertext& c,
                                          const SecretKey& sk);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_CIPHER_HPP
