#ifndef NTRUCIPHER_ANALYSIS_HPP
#define NTRUCIPHER_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntrucipher/cipher.hpp"
#include "ntrucipher/lattice.hpp"
#include "ntrucipher/params.hpp"
#include "ntrucipher/poly.hpp"
#include "ntrucipher/random_source.hpp"

namespace ntrucipher {

// ---------------------------------------------------------------------------
// Brute force

inline constexpr double kBruteForceFloorBits = 80.0;

struct KeyspaceReport {
  double log2_key_space;        // n * log2(2*norm_bound + 1)
  double log2_plaintext_space;  // n * log2(p)
  double floor_bits;
  bool key_space_above_floor;
  bool plaintext_space_above_floor;
};

KeyspaceReport keyspace_report(const ParamSet& ps, std::uint64_t norm_bound);

struct CrackResult {
  Poly r;
  Poly k;
  Plaintext mu;
  // Every (k', r) pair explaining the ciphertext; more than one means the
  // instance is ambiguous and the returned triple is the most likely one.
  std::size_t hits;
  std::size_t pairs_examined;
};

inline constexpr std::uint64_t kBruteForceCandidateLimit = std::uint64_t{1} << 24;

// Exhaustive search over k' and r in P_n(a1, a2, a3) for c = p*r*k^-1 + mu
// with mu in [-(p-1)/2, (p-1)/2]^n.
//
// Every pair is examined. Among the hits, the one most probable under the
// product-form sampler is returned (weight = number of (A1, A2, A3) draws
// giving the same k' times the same for r; ties go to the earliest pair in
// enumeration order). Returns nullopt when nothing matches. Throws
// ParameterError when the ternary draw space exceeds
// kBruteForceCandidateLimit.
std::optional<CrackResult> brute_force_crack(const Ciphertext& c,
                                             const ParamSet& ps);

// ---------------------------------------------------------------------------
// Multiple-transmission attack

// t encryptions of one plaintext. Ground-truth fields are filled by
// make_attack_transcript and never read by the attack itself.
struct AttackTranscript {
  ParamSet params;
  std::vector<Ciphertext> ciphertexts;
  std::vector<Poly> true_keys;  // one per ciphertext
  std::vector<Poly> true_r;
  std::optional<Plaintext> true_mu;
};

// Encrypts one uniformly random ternary plaintext t times. With
// fresh_key_per_message every ciphertext uses its own key.
AttackTranscript make_attack_transcript(const ParamSet& ps, std::size_t t,
                                        RandomSource& rng,
                                        bool fresh_key_per_message = false);

// Checks [k, u] * L_c == [k, r] with u = (r - k*c) / q computed over the
// integers from centered lifts. False when the division is inexact.
bool verify_lattice_relation(const Poly& k, const Poly& r, const Poly& c);

struct AttackOutcome {
  bool recovered = false;
  std::optional<Poly> key;         // normalized so that key == 1 (mod p)
  std::optional<Plaintext> plaintext;
  std::size_t lattices_reduced = 0;
  std::size_t candidates_tested = 0;
  double min_reduced_norm = 0;     // shortest reduced row, over all lattices
  double mean_reduced_norm = 0;
  double wall_time_ms = 0;
};

// For each pair (1, i) forms (c_i - c_1) * p^-1 = (r_i - r_1) * k^-1 mod q,
// LLL-reduces its attack lattice and tests short left halves (and their
// signed rotations) as keys. A candidate is accepted only if it has the
// 1 + p*k' shape with k' of product-form weight, decrypts every ciphertext to
// the same plaintext, and implies ephemeral keys of product-form weight.
//
// Throws ParameterError for fewer than two ciphertexts.
AttackOutcome multiple_transmission_attack(const AttackTranscript& transcript);

// key=value lines: recovered, candidates_tested, lattices_reduced,
// min_reduced_norm, mean_reduced_norm, wall_time_ms.
std::string format_attack_summary(const AttackOutcome& outcome);

// ---------------------------------------------------------------------------
// Decision-problem distinguisher

struct ChiSquareReport {
  std::size_t samples = 0;
  std::size_t slots = 0;
  std::size_t slots_rejected = 0;
  double slot_rejection_rate = 0;
  double min_slot_p_value = 1;
  double aggregate_statistic = 0;
  double aggregate_dof = 0;
  double aggregate_p_value = 1;
  double alpha = 0.01;
  bool rejects_uniformity = false;  // aggregate_p_value < alpha
};

// Per-coefficient chi-square test of the residues against the uniform
// distribution on Z_q, plus the sum over coefficients as an aggregate
// statistic with n(q-1) degrees of freedom.
ChiSquareReport chi_square_uniformity(std::span<const Poly> samples,
                                      double alpha = 0.01);

struct DistinguisherReport {
  ChiSquareReport d0;  // r * k^-1 with r, k product form
  ChiSquareReport d1;  // uniform over R_{n,q}
};

DistinguisherReport decision_distinguisher_harness(const ParamSet& ps,
                                                   std::size_t samples,
                                                   RandomSource& rng,
                                                   double alpha = 0.01);

Poly sample_uniform(std::size_t n, std::int64_t q, RandomSource& rng);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_ANALYSIS_HPP
