#ifndef NTRUCIPHER_SAMPLING_HPP
#define NTRUCIPHER_SAMPLING_HPP

#include <cstddef>
#include <cstdint>

#include "ntrucipher/poly.hpp"
#include "ntrucipher/random_source.hpp"

namespace ntrucipher {

// A1 * A2 + A3 with each A_i ternary and balanced (a_i ones, a_i minus ones).
// The factors are kept as a witness so products against the combined value
// can run on the sparse factors instead.
struct ProductFormPoly {
  Poly a1;
  Poly a2;
  Poly a3;
  Poly combined;

  friend bool operator==(const ProductFormPoly&,
                         const ProductFormPoly&) = default;
};

// Exactly `ones` coefficients +1 and `minus_ones` coefficients -1, placed by a
// partial Fisher-Yates shuffle of the positions.
Poly sample_ternary(std::size_t n, std::size_t ones, std::size_t minus_ones,
                    std::int64_t q, RandomSource& rng);

// Independent fair coin per coefficient.
Poly sample_binary(std::size_t n, std::int64_t q, RandomSource& rng);

// Draws A_i from T_n(a_i, a_i) independently. Requires 2*a_i <= n and
// 4*a1*a2 + 2*a3 < q/2, so the combined value never wraps modulo q.
ProductFormPoly sample_product_form(std::size_t n, std::size_t a1,
                                    std::size_t a2, std::size_t a3,
                                    std::int64_t q, RandomSource& rng);

Poly combine_product_form(const Poly& a1, const Poly& a2, const Poly& a3);

// True when `combined` equals A1 * A2 + A3.
bool witness_consistent(const ProductFormPoly& pf);

// f * (A1 * A2 + A3) evaluated as (f * A1) * A2 + f * A3 with sparse products.
Poly mul_product_form(const Poly& f, const ProductFormPoly& pf);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_SAMPLING_HPP
