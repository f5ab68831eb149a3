#ifndef NTRUCIPHER_PARAMS_HPP
#define NTRUCIPHER_PARAMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ntrucipher {

struct ParamSet {
  std::uint32_t n = 256;     // ring degree, a power of two
  std::uint32_t p = 3;       // plaintext modulus
  std::uint32_t q = 1087;    // ciphertext modulus
  std::uint32_t a1 = 5;      // product-form weights
  std::uint32_t a2 = 5;
  std::uint32_t a3 = 5;
  std::uint32_t a_mu = 102;  // expected zero count of a plaintext
  std::uint32_t lambda = 80; // security target in bits

  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

// Largest q accepted; centered coefficients must fit a signed 16-bit field.
inline constexpr std::uint32_t kMaxSupportedQ = 32767;
inline constexpr std::uint32_t kMaxSupportedN = 4096;

// Built-in profiles. "paper-2017" is the recommended set
// (n=256, p=3, q=1087, a=5,5,5, a_mu=102, lambda=80).
std::optional<ParamSet> profile(std::string_view name);
std::vector<std::string> profile_names();

// Every violated predicate as a readable message; empty when valid.
std::vector<std::string> validate(const ParamSet& ps);
// Throws ParameterError listing all violations.
void require_valid(const ParamSet& ps);

// Flat "key=value" lines: n, p, q, a1, a2, a3, a_mu, lambda. Blank lines and
// '#' comments are ignored; missing keys keep the paper-2017 defaults.
ParamSet parse_params(std::string_view text);
std::string format_params(const ParamSet& ps);

// q > 8p(2*a1*a2 + a3) + 2, the worst-case guarantee that decryption never
// fails.
bool deterministic_bound_check(const ParamSet& ps);

// sqrt((4*a1*a2 + 2*a3) * (2 - a_mu/n)), the modeled standard deviation of a
// coefficient of r + mu*k'.
double sigma(const ParamSet& ps);

double erfc(double x);
// Natural log of erfc(x) for x >= 0. Uses erfc directly up to x = 6 and the
// asymptotic series beyond; see log_erfc_asymptotic.
double log_erfc(double x);

struct AsymptoticLogErfc {
  double value;
  // Magnitude of the first omitted series term, relative to the series sum.
  // Bounds the truncation error of the series factor.
  double error_bound;
  int terms_used;
};

// ln erfc(x) = -x^2 - ln(x*sqrt(pi)) + ln(sum_k (-1)^k (2k-1)!! / (2x^2)^k),
// summed for at most `max_terms` terms (and never past the smallest term).
AsymptoticLogErfc log_erfc_asymptotic(double x, int max_terms = 64);

// log2(n * erfc((q-2) / (2*sqrt(2)*p*sigma))). -infinity when sigma is 0.
double failure_probability_log2(const ParamSet& ps);

struct FailureReport {
  double sigma;
  double bound_b;            // (q-2)/(2p)
  double erfc_argument;      // bound_b / (sqrt(2) sigma)
  double log2_failure_prob;
  bool meets_lambda;         // log2_failure_prob < -lambda
  bool deterministic_ok;
};

FailureReport failure_report(const ParamSet& ps);

struct SpaceSizes {
  std::uint64_t secret_key_bits;
  std::uint64_t ephemeral_key_bits;
  std::uint64_t plaintext_bits;
  std::uint64_t ciphertext_bits;
};

// n * round(log2(2*bound + 1)) for the keys, n * round(log2 p) and
// n * round(log2 q) for plaintext and ciphertext.
SpaceSizes space_sizes(const ParamSet& ps, std::uint64_t key_inf_norm,
                       std::uint64_t ephemeral_inf_norm);

struct NonzeroEstimate {
  double count;           // 4*a1*a2 + 2*a3
  double ratio_to_2n_3;   // count / (2n/3)
};

NonzeroEstimate expected_nonzero_count(const ParamSet& ps);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_PARAMS_HPP
