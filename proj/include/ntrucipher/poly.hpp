#ifndef NTRUCIPHER_POLY_HPP
#define NTRUCIPHER_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ntrucipher {

// Maps x to its centered representative modulo m: (-m/2, m/2], which is
// [-(m-1)/2, (m-1)/2] for odd m.
std::int64_t center_mod(std::int64_t x, std::int64_t m);

// Non-negative residue of x modulo m.
std::int64_t positive_mod(std::int64_t x, std::int64_t m);

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t m);

bool is_prime(std::uint64_t v);

// An element of R_{n,q} = Z_q[x]/(x^n + 1).
//
// The modulus travels with the value and every coefficient is stored as its
// centered representative, so two Polys compare equal iff they are the same
// ring element. Instances are immutable once built.
class Poly {
 public:
  // Zero polynomial of degree bound n.
  Poly(std::size_t n, std::int64_t q);

  // Reduces and centers arbitrary integer coefficients.
  static Poly from_coefficients(std::span<const std::int64_t> coeffs,
                                std::int64_t q);
  static Poly from_coefficients(std::initializer_list<std::int64_t> coeffs,
                                std::int64_t q);
  static Poly constant(std::size_t n, std::int64_t q, std::int64_t value);
  // value * x^j, with x^n = -1 applied for j >= n.
  static Poly monomial(std::size_t n, std::int64_t q, std::size_t j,
                       std::int64_t value = 1);

  std::size_t degree_bound() const { return coeffs_.size(); }
  std::int64_t modulus() const { return q_; }
  std::span<const std::int32_t> coeffs() const { return coeffs_; }
  std::int32_t operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const;
  std::size_t count_nonzero() const;
  // f(1) over the integers, using the centered lift.
  std::int64_t evaluate_at_one() const;
  std::vector<std::int64_t> lift() const;

  // Same centered integer lift, reinterpreted modulo another modulus.
  Poly with_modulus(std::int64_t q) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  Poly(std::vector<std::int32_t> coeffs, std::int64_t q)
      : coeffs_(std::move(coeffs)), q_(q) {}

  std::vector<std::int32_t> coeffs_;
  std::int64_t q_;
};

Poly add(const Poly& f, const Poly& g);
Poly sub(const Poly& f, const Poly& g);
Poly negate(const Poly& f);
Poly scalar_mul(const Poly& f, std::int64_t s);

Poly operator+(const Poly& f, const Poly& g);
Poly operator-(const Poly& f, const Poly& g);
Poly operator-(const Poly& f);

// Schoolbook O(n^2) product modulo x^n + 1.
Poly negacyclic_mul(const Poly& f, const Poly& g);

// Same product, iterating only over the non-zero coefficients of `sparse`.
// Cost is O(n * nnz(sparse)); results are bit-identical to negacyclic_mul.
Poly negacyclic_mul_sparse(const Poly& dense, const Poly& sparse);

// Inverse in R_{n,q} via the extended Euclidean algorithm over Z_q[x].
// Returns nullopt when gcd(f, x^n + 1) != 1. Requires q prime.
std::optional<Poly> invert_mod_q(const Poly& f);

// Reduces every coefficient modulo p and centers it in
// [-(p-1)/2, (p-1)/2]. The result stays in f's ring.
Poly reduce_mod_p(const Poly& f, std::int64_t p);

std::int64_t norm_inf(const Poly& f);
std::int64_t norm_l1(const Poly& f);
// Euclidean norm of the centered lift.
double norm_l2(const Poly& f);
// sqrt(sum (f_i - mean)^2).
double norm_l2_centered(const Poly& f);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_POLY_HPP
