#include "ntrucipher/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "ntrucipher/errors.hpp"
#include "ntrucipher/sampling.hpp"

namespace ntrucipher {
namespace {

struct WeightedPoly {
  Poly value;
  std::uint64_t weight;  // number of (A1, A2, A3) draws producing value
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t balanced_ternary_count(std::uint64_t n, std::uint64_t a) {
  return binomial(n, a) * binomial(n - a, a);
}

// All members of T_n(a, a).
std::vector<Poly> enumerate_balanced_ternary(std::size_t n, std::size_t a,
                                             std::int64_t q) {
  std::vector<Poly> out;
  std::vector<std::int64_t> c(n, 0);
  // Place `left` copies of `value` at positions >= start, then continue with
  // the next value.
  std::function<void(std::size_t, std::size_t, std::int64_t)> place =
      [&](std::size_t start, std::size_t left, std::int64_t value) {
        if (left == 0) {
          if (value == 1) {
            place(0, a, -1);
          } else {
            out.push_back(Poly::from_coefficients(c, q));
          }
          return;
        }
        for (std::size_t i = start; i < n; ++i) {
          if (c[i] != 0) continue;
          c[i] = value;
          place(i + 1, left - 1, value);
          c[i] = 0;
        }
      };
  place(0, a, 1);
  return out;
}

// Distinct values of P_n(a1, a2, a3) with their multiplicities, heaviest
// first; ties keep lexicographic coefficient order.
std::vector<WeightedPoly> enumerate_product_forms(const ParamSet& ps) {
  const std::uint64_t space = balanced_ternary_count(ps.n, ps.a1) *
                              balanced_ternary_count(ps.n, ps.a2) *
                              balanced_ternary_count(ps.n, ps.a3);
  if (space > kBruteForceCandidateLimit) {
    throw ParameterError("product-form space of " + std::to_string(space) +
                         " draws is too large for exhaustive search");
  }
  const auto t1 = enumerate_balanced_ternary(ps.n, ps.a1, ps.q);
  const auto t2 = enumerate_balanced_ternary(ps.n, ps.a2, ps.q);
  const auto t3 = enumerate_balanced_ternary(ps.n, ps.a3, ps.q);
  std::map<std::vector<std::int32_t>, std::uint64_t> counts;
  for (const Poly& f1 : t1) {
    for (const Poly& f2 : t2) {
      const Poly prod = negacyclic_mul_sparse(f1, f2);
      for (const Poly& f3 : t3) {
        const Poly v = prod + f3;
        ++counts[std::vector<std::int32_t>(v.coeffs().begin(), v.coeffs().end())];
      }
    }
  }
  std::vector<WeightedPoly> out;
  out.reserve(counts.size());
  for (const auto& [coeffs, weight] : counts) {
    std::vector<std::int64_t> c(coeffs.begin(), coeffs.end());
    out.push_back(WeightedPoly{Poly::from_coefficients(c, ps.q), weight});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedPoly& a, const WeightedPoly& b) {
                     return a.weight > b.weight;
                   });
  return out;
}

bool within_plaintext_range(const Poly& f, std::int64_t p) {
  return norm_inf(f) <= (p - 1) / 2;
}

// s * x^j * v over the integers.
std::vector<std::int64_t> signed_rotation(std::span<const std::int64_t> v,
                                          std::size_t j, std::int64_t s) {
  const std::size_t n = v.size();
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = i + j;
    if (slot < n) {
      out[slot] = s * v[i];
    } else {
      out[slot - n] = -s * v[i];
    }
  }
  return out;
}

// Folding by x^n = -1 flips the sign of wrapped terms, so f(1) is only even,
// not zero.
bool product_form_shaped(const Poly& f, std::int64_t weight_bound) {
  return norm_l1(f) <= weight_bound && f.evaluate_at_one() % 2 == 0;
}

// Accepts `cand` as the key when it is 1 + p*k' with k' of product-form
// weight, decrypts all ciphertexts to one plaintext, and every implied
// ephemeral key has product-form weight.
std::optional<Plaintext> validate_candidate(
    std::span<const std::int64_t> cand, const AttackTranscript& tr) {
  const ParamSet& ps = tr.params;
  const std::int64_t p = ps.p;
  const std::int64_t weight = 4ll * ps.a1 * ps.a2 + 2ll * ps.a3;

  std::vector<std::int64_t> k_prime(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const std::int64_t shifted = cand[i] - (i == 0 ? 1 : 0);
    if (shifted % p != 0) return std::nullopt;
    k_prime[i] = shifted / p;
  }
  std::int64_t l1 = 0, sum = 0;
  for (std::int64_t v : k_prime) {
    l1 += std::abs(v);
    sum += v;
  }
  if (l1 > weight || sum % 2 != 0) return std::nullopt;

  const Poly key = Poly::from_coefficients(cand, ps.q);
  const auto p_inv = inverse_mod(p, ps.q);
  std::optional<Poly> mu;
  for (const Ciphertext& c : tr.ciphertexts) {
    const Poly c_prime = negacyclic_mul(c.c, key);
    Poly m = reduce_mod_p(c_prime, p);
    if (mu && m != *mu) return std::nullopt;
    mu = std::move(m);
  }
  for (const Ciphertext& c : tr.ciphertexts) {
    const Poly r = scalar_mul(negacyclic_mul(c.c - *mu, key), *p_inv);
    if (!product_form_shaped(r, weight)) return std::nullopt;
  }
  return Plaintext{*mu};
}

double row_norm(const std::vector<std::int64_t>& row) {
  double s = 0;
  for (std::int64_t v : row) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

// Left halves of sum_i e_i * b_i with e_i in {-1, 0, 1} over the first
// kCombinationRows reduced rows (one sign per +-pair), shortest first. The
// target (k, r_i - r_j) is short but at toy sizes need not be a basis row.
constexpr std::size_t kCombinationRows = 10;

std::vector<std::vector<std::int64_t>> short_combinations(
    const LatticeBasis& reduced, std::size_t half) {
  const std::size_t m = std::min(reduced.rank(), kCombinationRows);
  const std::size_t dim = reduced.ambient_dimension();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;

  std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> found;
  std::vector<std::int64_t> v(dim);
  for (std::size_t code = 1; code < total; ++code) {
    std::fill(v.begin(), v.end(), 0);
    std::size_t rest = code;
    bool leading_positive = true, seen = false;
    for (std::size_t i = 0; i < m; ++i, rest /= 3) {
      const std::int64_t e = static_cast<std::int64_t>(rest % 3) - 1;
      if (e == 0) continue;
      if (!seen) leading_positive = e > 0;
      seen = true;
      for (std::size_t j = 0; j < dim; ++j) v[j] += e * reduced.rows[i][j];
    }
    if (!leading_positive) continue;
    std::int64_t sq = 0;
    for (std::int64_t x : v) sq += x * x;
    if (std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(half),
                    [](std::int64_t x) { return x == 0; })) {
      continue;
    }
    found.emplace_back(sq, std::vector<std::int64_t>(
                               v.begin(), v.begin() + static_cast<std::ptrdiff_t>(half)));
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace

KeyspaceReport keyspace_report(const ParamSet& ps, std::uint64_t norm_bound) {
  KeyspaceReport r{};
  r.log2_key_space = ps.n * std::log2(2.0 * static_cast<double>(norm_bound) + 1.0);
  r.log2_plaintext_space = ps.n * std::log2(static_cast<double>(ps.p));
  r.floor_bits = kBruteForceFloorBits;
  r.key_space_above_floor = r.log2_key_space >= r.floor_bits;
  r.plaintext_space_above_floor = r.log2_plaintext_space >= r.floor_bits;
  return r;
}

std::optional<CrackResult> brute_force_crack(const Ciphertext& c,
                                             const ParamSet& ps) {
  require_valid(ps);
  if (c.c.degree_bound() != ps.n || c.c.modulus() != ps.q) {
    throw DimensionError("ciphertext does not match parameter set");
  }
  const auto forms = enumerate_product_forms(ps);

  struct Key {
    Poly k;
    Poly k_inv;
    std::uint64_t weight;
  };
  std::vector<Key> keys;
  const Poly one = Poly::constant(ps.n, ps.q, 1);
  for (const WeightedPoly& f : forms) {
    Poly k = one + scalar_mul(f.value, ps.p);
    if (auto inv = invert_mod_q(k)) {
      keys.push_back(Key{std::move(k), std::move(*inv), f.weight});
    }
  }

  std::optional<CrackResult> best;
  std::uint64_t best_weight = 0;
  std::size_t hits = 0;
  std::size_t examined = 0;
  for (const Key& key : keys) {
    for (const WeightedPoly& r : forms) {
      ++examined;
      const Poly mu =
          c.c - scalar_mul(negacyclic_mul_sparse(key.k_inv, r.value), ps.p);
      if (!within_plaintext_range(mu, ps.p)) continue;
      ++hits;
      const std::uint64_t w = key.weight * r.weight;
      if (!best || w > best_weight) {
        best = CrackResult{r.value, key.k, Plaintext{mu}, 0, 0};
        best_weight = w;
      }
    }
  }
  if (best) {
    best->hits = hits;
    best->pairs_examined = examined;
  }
  return best;
}

AttackTranscript make_attack_transcript(const ParamSet& ps, std::size_t t,
                                        RandomSource& rng,
                                        bool fresh_key_per_message) {
  AttackTranscript tr{ps, {}, {}, {}, {}};
  std::vector<std::int64_t> mu(ps.n);
  const std::int64_t half = (ps.p - 1) / 2;
  for (auto& v : mu) v = static_cast<std::int64_t>(rng.uniform(ps.p)) - half;
  tr.true_mu = make_plaintext(ps, mu);

  std::optional<SecretKey> shared;
  for (std::size_t i = 0; i < t; ++i) {
    if (!shared || fresh_key_per_message) shared = keygen(ps, rng);
    EncryptionTranscript e = encrypt_with_transcript(*tr.true_mu, *shared, rng);
    tr.ciphertexts.push_back(std::move(e.ciphertext));
    tr.true_keys.push_back(shared->k());
    tr.true_r.push_back(std::move(e.r_witness.combined));
  }
  return tr;
}

bool verify_lattice_relation(const Poly& k, const Poly& r, const Poly& c) {
  const std::size_t n = c.degree_bound();
  const std::int64_t q = c.modulus();
  if (k.degree_bound() != n || r.degree_bound() != n) {
    throw DimensionError("lattice relation operands differ in length");
  }
  // k * C over the integers (row-vector times the negacyclic matrix).
  const auto cm = negacyclic_matrix(c);
  std::vector<std::int64_t> kc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) kc[j] += std::int64_t{k[i]} * cm[i][j];
  }
  std::vector<std::int64_t> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t num = std::int64_t{r[j]} - kc[j];
    if (num % q != 0) return false;
    u[j] = num / q;
  }
  // [k, u] * [[I, C], [0, qI]] = [k, k*C + q*u]
  for (std::size_t j = 0; j < n; ++j) {
    if (kc[j] + q * u[j] != r[j]) return false;
  }
  return true;
}

AttackOutcome multiple_transmission_attack(const AttackTranscript& tr) {
  const auto start = std::chrono::steady_clock::now();
  const ParamSet& ps = tr.params;
  if (tr.ciphertexts.size() < 2) {
    throw ParameterError("multiple-transmission attack needs t >= 2");
  }
  require_valid(ps);
  const std::size_t n = ps.n;
  const auto p_inv = inverse_mod(ps.p, ps.q);

  AttackOutcome out;
  double norm_sum = 0;
  std::size_t norm_count = 0;
  auto finish = [&](AttackOutcome& o) {
    o.mean_reduced_norm = norm_count ? norm_sum / norm_count : 0;
    o.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  };

  const std::size_t t = tr.ciphertexts.size();
  for (std::size_t first = 0; first + 1 < t; ++first) {
    for (std::size_t i = first + 1; i < t; ++i) {
      const Poly diff =
          scalar_mul(tr.ciphertexts[i].c - tr.ciphertexts[first].c, *p_inv);
      if (diff.is_zero()) continue;
      const LatticeBasis reduced = lll_reduce(build_attack_lattice(diff));
      ++out.lattices_reduced;

      for (const auto& row : reduced.rows) {
        const double norm = row_norm(row);
        if (norm_count == 0 || norm < out.min_reduced_norm) {
          out.min_reduced_norm = norm;
        }
        norm_sum += norm;
        ++norm_count;
      }
      for (const auto& v : short_combinations(reduced, n)) {
        for (std::int64_t s : {1, -1}) {
          for (std::size_t j = 0; j < n; ++j) {
            const auto cand = signed_rotation(v, j, s);
            ++out.candidates_tested;
            if (auto mu = validate_candidate(cand, tr)) {
              out.recovered = true;
              out.key = Poly::from_coefficients(cand, ps.q);
              out.plaintext = std::move(mu);
              finish(out);
              return out;
            }
          }
        }
      }
    }
  }
  finish(out);
  return out;
}

std::string format_attack_summary(const AttackOutcome& o) {
  std::ostringstream s;
  s << "recovered=" << (o.recovered ? 1 : 0) << "\n"
    << "candidates_tested=" << o.candidates_tested << "\n"
    << "lattices_reduced=" << o.lattices_reduced << "\n"
    << "min_reduced_norm=" << o.min_reduced_norm << "\n"
    << "mean_reduced_norm=" << o.mean_reduced_norm << "\n"
    << "wall_time_ms=" << o.wall_time_ms << "\n";
  return s.str();
}

ChiSquareReport chi_square_uniformity(std::span<const Poly> samples,
                                      double alpha) {
  ChiSquareReport rep;
  rep.alpha = alpha;
  rep.samples = samples.size();
  if (samples.empty()) return rep;
  const std::size_t n = samples.front().degree_bound();
  const std::int64_t q = samples.front().modulus();
  rep.slots = n;
  std::vector<std::vector<std::uint32_t>> counts(
      n, std::vector<std::uint32_t>(static_cast<std::size_t>(q), 0));
  for (const Poly& s : samples) {
    if (s.degree_bound() != n || s.modulus() != q) {
      throw DimensionError("samples from different rings");
    }
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[i][static_cast<std::size_t>(positive_mod(s[i], q))];
    }
  }
  const double expected = static_cast<double>(samples.size()) / q;
  const double dof = static_cast<double>(q - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double stat = 0;
    for (std::uint32_t obs : counts[i]) {
      const double d = obs - expected;
      stat += d * d / expected;
    }
    const double pv = boost::math::gamma_q(dof / 2, stat / 2);
    rep.min_slot_p_value = std::min(rep.min_slot_p_value, pv);
    if (pv < alpha) ++rep.slots_rejected;
    rep.aggregate_statistic += stat;
  }
  rep.slot_rejection_rate = static_cast<double>(rep.slots_rejected) / n;
  rep.aggregate_dof = dof * static_cast<double>(n);
  rep.aggregate_p_value =
      boost::math::gamma_q(rep.aggregate_dof / 2, rep.aggregate_statistic / 2);
  rep.rejects_uniformity = rep.aggregate_p_value < alpha;
  return rep;
}

Poly sample_uniform(std::size_t n, std::int64_t q, RandomSource& rng) {
  std::vector<std::int64_t> c(n);
  for (auto& v : c) v = static_cast<std::int64_t>(rng.uniform(static_cast<std::uint64_t>(q)));
  return Poly::from_coefficients(c, q);
}

DistinguisherReport decision_distinguisher_harness(const ParamSet& ps,
                                                   std::size_t samples,
                                                   RandomSource& rng,
                                                   double alpha) {
  require_valid(ps);
  std::vector<Poly> d0;
  std::vector<Poly> d1;
  d0.reserve(samples);
  d1.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    std::optional<Poly> k_inv;
    for (int attempt = 0; attempt < kDefaultKeygenRetryBudget && !k_inv; ++attempt) {
      const ProductFormPoly k =
          sample_product_form(ps.n, ps.a1, ps.a2, ps.a3, ps.q, rng);
      k_inv = invert_mod_q(k.combined);
    }
    if (!k_inv) throw KeyGenerationError("no invertible product-form k");
    const ProductFormPoly r =
        sample_product_form(ps.n, ps.a1, ps.a2, ps.a3, ps.q, rng);
    d0.push_back(mul_product_form(*k_inv, r));
    d1.push_back(sample_uniform(ps.n, ps.q, rng));
  }
  return DistinguisherReport{chi_square_uniformity(d0, alpha),
                             chi_square_uniformity(d1, alpha)};
}

}  // namespace ntrucipher
