#include "ntrucipher/lattice.hpp"

#include <string>
#include <utility>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {
namespace {

using Row = std::vector<mpz_class>;

mpz_class dot(const Row& a, const Row& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Integral LLL over 1-based indices: d[i] is the Gram determinant of the
// first i vectors and lam[i][j] = d[j] * mu_ij.
class IntegralLll {
 public:
  IntegralLll(std::vector<Row> rows, mpq_class delta)
      : m_(rows.size()),
        b_(m_ + 1),
        d_(m_ + 1),
        lam_(m_ + 1, Row(m_ + 1)),
        delta_(std::move(delta)) {
    for (std::size_t i = 0; i < m_; ++i) b_[i + 1] = std::move(rows[i]);
  }

  std::vector<Row> run(LllStats& stats) {
    if (m_ == 0) return {};
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) throw LatticeError("zero basis vector");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= m_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      for (;;) {
        reduce(k, k - 1, stats);
        const mpz_class& l = lam_[k][k - 1];
        if (lovasz_fails(k, l)) {
          swap(k, kmax);
          ++stats.swaps;
          k = k > 2 ? k - 1 : 2;
          continue;
        }
        for (std::size_t j = k - 1; j-- > 1;) reduce(k, j, stats);
        ++k;
        break;
      }
    }
    std::vector<Row> out;
    for (std::size_t i = 1; i <= m_; ++i) out.push_back(std::move(b_[i]));
    return out;
  }

 private:
  void gram_schmidt_row(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      mpz_class u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) {
        u = exact_div(d_[i] * u - lam_[k][i] * lam_[j][i], d_[i - 1]);
      }
      if (j < k) {
        lam_[k][j] = u;
      } else {
        if (u == 0) throw LatticeError("basis rows are linearly dependent");
        d_[k] = u;
      }
    }
  }

  // d_k d_{k-2} + lam^2 < delta d_{k-1}^2
  bool lovasz_fails(std::size_t k, const mpz_class& l) const {
    const mpz_class lhs = (d_[k] * d_[k - 2] + l * l) * delta_.get_den();
    const mpz_class rhs = d_[k - 1] * d_[k - 1] * delta_.get_num();
    return lhs < rhs;
  }

  void reduce(std::size_t k, std::size_t l, LllStats& stats) {
    mpz_class two_lam = 2 * lam_[k][l];
    if (abs(two_lam) <= d_[l]) return;
    // nearest integer to lam / d
    mpz_class r;
    mpz_class num = two_lam + d_[l];
    mpz_class den = 2 * d_[l];
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= r * b_[l][c];
    lam_[k][l] -= r * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam_[k][i] -= r * lam_[l][i];
    ++stats.size_reductions;
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    const mpz_class l = lam_[k][k - 1];
    const mpz_class big_b = exact_div(d_[k - 2] * d_[k] + l * l, d_[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const mpz_class t = lam_[i][k];
      lam_[i][k] = exact_div(d_[k] * lam_[i][k - 1] - l * t, d_[k - 1]);
      lam_[i][k - 1] = exact_div(big_b * t + l * lam_[i][k], d_[k]);
    }
    d_[k - 1] = big_b;
  }

  std::size_t m_;
  std::vector<Row> b_;
  Row d_;
  std::vector<Row> lam_;
  mpq_class delta_;
};

}  // namespace

std::vector<std::vector<std::int64_t>> negacyclic_matrix(const Poly& c) {
  const std::size_t n = c.degree_bound();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // x^i * c_j x^j
      const std::size_t slot = i + j;
      if (slot < n) {
        m[i][slot] = c[j];
      } else {
        m[i][slot - n] = -std::int64_t{c[j]};
      }
    }
  }
  return m;
}

LatticeBasis build_attack_lattice(const Poly& c) {
  const std::size_t n = c.degree_bound();
  if (2 * n > kMaxLllDimension) {
    throw DimensionError("attack lattice dimension " + std::to_string(2 * n) +
                         " exceeds " + std::to_string(kMaxLllDimension));
  }
  const auto cm = negacyclic_matrix(c);
  LatticeBasis basis;
  basis.rows.assign(2 * n, std::vector<std::int64_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    basis.rows[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) basis.rows[i][n + j] = cm[i][j];
    basis.rows[n + i][n + i] = c.modulus();
  }
  return basis;
}

mpz_class exact_determinant(const LatticeBasis& basis) {
  const std::size_t m = basis.rank();
  if (m != basis.ambient_dimension()) {
    throw DimensionError("determinant needs a square basis");
  }
  if (m == 0) return 1;
  std::vector<Row> a(m, Row(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = basis.rows[i][j];
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < m && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == m) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      }
    }
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

LatticeBasis lll_reduce(const LatticeBasis& basis, double delta,
                        LllStats* stats) {
  if (!(delta > 0.25 && delta <= 1.0)) {
    throw ParameterError("LLL delta must lie in (1/4, 1]");
  }
  if (basis.rank() > kMaxLllDimension) {
    throw LatticeError("basis rank " + std::to_string(basis.rank()) +
                       " exceeds the toy guard of " +
                       std::to_string(kMaxLllDimension));
  }
  const std::size_t dim = basis.ambient_dimension();
  std::vector<Row> rows;
  for (const auto& r : basis.rows) {
    if (r.size() != dim) throw DimensionError("ragged basis");
    Row row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = r[j];
    rows.push_back(std::move(row));
  }
  LllStats local;
  IntegralLll lll(std::move(rows), mpq_class(delta));
  std::vector<Row> reduced = lll.run(stats ? *stats : local);

  LatticeBasis out;
  for (const Row& r : reduced) {
    std::vector<std::int64_t> row(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!r[j].fits_slong_p()) throw LatticeError("reduced entry overflows");
      row[j] = r[j].get_si();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ntrucipher
