#include "ntrucipher/sampling.hpp"

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {

Poly sample_ternary(std::size_t n, std::size_t ones, std::size_t minus_ones,
                    std::int64_t q, RandomSource& rng) {
  if (ones + minus_ones > n) {
    throw ParameterError("ternary weight " + std::to_string(ones) + "+" +
                         std::to_string(minus_ones) + " exceeds n=" +
                         std::to_string(n));
  }
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  const std::size_t support = ones + minus_ones;
  for (std::size_t i = 0; i < support; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform(n - i));
    std::swap(positions[i], positions[j]);
  }
  std::vector<std::int64_t> c(n, 0);
  for (std::size_t i = 0; i < ones; ++i) c[positions[i]] = 1;
  for (std::size_t i = ones; i < support; ++i) c[positions[i]] = -1;
  return Poly::from_coefficients(c, q);
}

Poly sample_binary(std::size_t n, std::int64_t q, RandomSource& rng) {
  std::vector<std::int64_t> c(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng.next_u64();
    c[i] = static_cast<std::int64_t>(word & 1);
    word >>= 1;
  }
  return Poly::from_coefficients(c, q);
}

Poly combine_product_form(const Poly& a1, const Poly& a2, const Poly& a3) {
  return negacyclic_mul_sparse(a1, a2) + a3;
}

ProductFormPoly sample_product_form(std::size_t n, std::size_t a1,
                                    std::size_t a2, std::size_t a3,
                                    std::int64_t q, RandomSource& rng) {
  for (std::size_t a : {a1, a2, a3}) {
    if (2 * a > n) {
      throw ParameterError("product-form count " + std::to_string(a) +
                           " needs 2*a <= n=" + std::to_string(n));
    }
  }
  // Bounds |combined|_1, hence every coefficient, away from q/2.
  if (2 * (4 * a1 * a2 + 2 * a3) >= static_cast<std::size_t>(q)) {
    throw ParameterError("product-form weight 4*a1*a2+2*a3 must be < q/2");
  }
  Poly f1 = sample_ternary(n, a1, a1, q, rng);
  Poly f2 = sample_ternary(n, a2, a2, q, rng);
  Poly f3 = sample_ternary(n, a3, a3, q, rng);
  Poly combined = combine_product_form(f1, f2, f3);
  return ProductFormPoly{std::move(f1), std::move(f2), std::move(f3),
                         std::move(combined)};
}

bool witness_consistent(const ProductFormPoly& pf) {
  return combine_product_form(pf.a1, pf.a2, pf.a3) == pf.combined;
}

Poly mul_product_form(const Poly& f, const ProductFormPoly& pf) {
  return negacyclic_mul_sparse(negacyclic_mul_sparse(f, pf.a1), pf.a2) +
         negacyclic_mul_sparse(f, pf.a3);
}

}  // namespace ntrucipher
