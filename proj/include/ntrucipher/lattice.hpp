#ifndef NTRUCIPHER_LATTICE_HPP
#define NTRUCIPHER_LATTICE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ntrucipher/poly.hpp"

namespace ntrucipher {

// Integer basis in row-vector convention: the lattice is the set of integer
// combinations of `rows`.
struct LatticeBasis {
  std::vector<std::vector<std::int64_t>> rows;

  std::size_t rank() const { return rows.size(); }
  std::size_t ambient_dimension() const {
    return rows.empty() ? 0 : rows.front().size();
  }
  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

inline constexpr std::size_t kMaxLllDimension = 64;

// n x n matrix whose row i holds the coefficients of x^i * c, i.e. the
// negacyclic shift of c by i with a sign flip on wrap-around.
std::vector<std::vector<std::int64_t>> negacyclic_matrix(const Poly& c);

// 2n x 2n basis [[I, C], [0, qI]] with C = negacyclic_matrix(c) over centered
// representatives and q = c.modulus(). For c = r * k^-1 the lattice holds
// (k, r), since [k, u] * basis = [k, k*c + q*u].
LatticeBasis build_attack_lattice(const Poly& c);

// Determinant of a square basis by fraction-free (Bareiss) elimination.
mpz_class exact_determinant(const LatticeBasis& basis);

struct LllStats {
  std::size_t swaps = 0;
  std::size_t size_reductions = 0;
};

// Integral LLL reduction with Lovasz parameter delta in (1/4, 1]. The output
// spans the same lattice, is size-reduced (|mu_ij| <= 1/2) and satisfies the
// Lovasz condition for delta. Gram-Schmidt data is kept as exact integers
// (d_i and d_j * mu_ij), so no rounding takes place.
//
// Throws LatticeError for more than kMaxLllDimension rows, for linearly
// dependent rows, or when a reduced entry does not fit in 64 bits.
LatticeBasis lll_reduce(const LatticeBasis& basis, double delta = 0.99,
                        LllStats* stats = nullptr);

}  // namespace ntrucipher

#endif  // NTRUCIPHER_LATTICE_HPP
