#include "ntrucipher/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "ntrucipher/errors.hpp"

namespace ntrucipher {
namespace {

// Keeps n * (q/2)^2 well inside int64 for every n the library accepts.
constexpr std::int64_t kMaxModulus = std::int64_t{1} << 24;
constexpr std::size_t kMaxDegree = std::size_t{1} << 16;

void check_ring(std::size_t n, std::int64_t q) {
  if (n == 0 || n > kMaxDegree) {
    throw ParameterError("degree bound out of range: " + std::to_string(n));
  }
  if (q < 2 || q > kMaxModulus) {
    throw ParameterError("modulus out of range: " + std::to_string(q));
  }
}

void check_same_ring(const Poly& f, const Poly& g) {
  if (f.degree_bound() != g.degree_bound() || f.modulus() != g.modulus()) {
    throw DimensionError("ring mismatch: (n=" +
                         std::to_string(f.degree_bound()) +
                         ", q=" + std::to_string(f.modulus()) + ") vs (n=" +
                         std::to_string(g.degree_bound()) +
                         ", q=" + std::to_string(g.modulus()) + ")");
  }
}

// Dense polynomial over Z_q with residues in [0, q), lowest degree first and
// no trailing zeros. The zero polynomial is the empty vector.
using ZqPoly = std::vector<std::int64_t>;

void trim(ZqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ZqPoly& a) { return static_cast<int>(a.size()) - 1; }

}  // namespace

std::int64_t positive_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t center_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = positive_mod(x, m);
  return r > m / 2 ? r - m : r;
}

std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = positive_mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
  }
  if (old_r != 1) return std::nullopt;
  return positive_mod(old_s, m);
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

Poly::Poly(std::size_t n, std::int64_t q) : coeffs_(n, 0), q_(q) {
  check_ring(n, q);
}

Poly Poly::from_coefficients(std::span<const std::int64_t> coeffs,
                             std::int64_t q) {
  check_ring(coeffs.size(), q);
  std::vector<std::int32_t> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out[i] = static_cast<std::int32_t>(center_mod(coeffs[i], q));
  }
  return Poly(std::move(out), q);
}

Poly Poly::from_coefficients(std::initializer_list<std::int64_t> coeffs,
                             std::int64_t q) {
  return from_coefficients(std::span<const std::int64_t>(coeffs.begin(),
                                                         coeffs.size()),
                           q);
}

Poly Poly::constant(std::size_t n, std::int64_t q, std::int64_t value) {
  return monomial(n, q, 0, value);
}

Poly Poly::monomial(std::size_t n, std::int64_t q, std::size_t j,
                    std::int64_t value) {
  check_ring(n, q);
  // x^(2n) = 1, x^n = -1.
  j %= 2 * n;
  if (j >= n) {
    j -= n;
    value = -value;
  }
  std::vector<std::int64_t> c(n, 0);
  c[j] = value;
  return from_coefficients(c, q);
}

bool Poly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](std::int32_t c) { return c == 0; });
}

std::size_t Poly::count_nonzero() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(),
                    [](std::int32_t c) { return c != 0; }));
}

std::int64_t Poly::evaluate_at_one() const {
  std::int64_t s = 0;
  for (std::int32_t c : coeffs_) s += c;
  return s;
}

std::vector<std::int64_t> Poly::lift() const {
  return std::vector<std::int64_t>(coeffs_.begin(), coeffs_.end());
}

Poly Poly::with_modulus(std::int64_t q) const {
  std::vector<std::int64_t> c = lift();
  return from_coefficients(c, q);
}

Poly add(const Poly& f, const Poly& g) {
  check_same_ring(f, g);
  std::vector<std::int64_t> c(f.degree_bound());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::int64_t{f[i]} + g[i];
  return Poly::from_coefficients(c, f.modulus());
}

Poly sub(const Poly& f, const Poly& g) {
  check_same_ring(f, g);
  std::vector<std::int64_t> c(f.degree_bound());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::int64_t{f[i]} - g[i];
  return Poly::from_coefficients(c, f.modulus());
}

Poly negate(const Poly& f) {
  std::vector<std::int64_t> c(f.degree_bound());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -std::int64_t{f[i]};
  return Poly::from_coefficients(c, f.modulus());
}

Poly scalar_mul(const Poly& f, std::int64_t s) {
  const std::int64_t q = f.modulus();
  s = center_mod(s, q);
  std::vector<std::int64_t> c(f.degree_bound());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f[i] * s;
  return Poly::from_coefficients(c, q);
}

Poly operator+(const Poly& f, const Poly& g) { return add(f, g); }
Poly operator-(const Poly& f, const Poly& g) { return sub(f, g); }
Poly operator-(const Poly& f) { return negate(f); }

Poly negacyclic_mul(const Poly& f, const Poly& g) {
  check_same_ring(f, g);
  const std::size_t n = f.degree_bound();
  std::span<const std::int32_t> a = f.coeffs();
  std::span<const std::int32_t> b = g.coeffs();
  std::vector<std::int64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ai = a[i];
    // b[j] lands on x^(i+j); the tail wraps with a sign flip.
    const std::size_t split = n - i;
    std::int64_t* lo = acc.data() + i;
    for (std::size_t j = 0; j < split; ++j) lo[j] += ai * b[j];
    for (std::size_t j = split; j < n; ++j) acc[j - split] -= ai * b[j];
  }
  return Poly::from_coefficients(acc, f.modulus());
}

Poly negacyclic_mul_sparse(const Poly& dense, const Poly& sparse) {
  check_same_ring(dense, sparse);
  const std::size_t n = dense.degree_bound();
  std::span<const std::int32_t> a = dense.coeffs();
  std::vector<std::int64_t> acc(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t s = sparse[j];
    if (s == 0) continue;
    // dense * (s x^j): coefficient a_i moves to slot i + j.
    const std::size_t split = n - j;
    for (std::size_t i = 0; i < split; ++i) acc[i + j] += s * a[i];
    for (std::size_t i = split; i < n; ++i) acc[i - split] -= s * a[i];
  }
  return Poly::from_coefficients(acc, dense.modulus());
}

std::optional<Poly> invert_mod_q(const Poly& f) {
  const std::size_t n = f.degree_bound();
  const std::int64_t q = f.modulus();
  if (!is_prime(static_cast<std::uint64_t>(q))) {
    throw ParameterError("inversion requires a prime modulus, got " +
                         std::to_string(q));
  }

  ZqPoly r0(n + 1, 0);
  r0[0] = 1;
  r0[n] = 1;
  ZqPoly r1(n);
  for (std::size_t i = 0; i < n; ++i) r1[i] = positive_mod(f[i], q);
  trim(r1);
  if (r1.empty()) return std::nullopt;

  // Invariant: t_i * f == r_i  (mod x^n + 1, q).
  ZqPoly t0;
  ZqPoly t1{1};

  while (!r1.empty()) {
    const std::int64_t lead_inv = *inverse_mod(r1.back(), q);
    ZqPoly rem = r0;
    ZqPoly quot(degree(r0) >= degree(r1) ? degree(r0) - degree(r1) + 1 : 0, 0);
    for (int d = degree(rem); d >= degree(r1); --d) {
      const std::int64_t coef = rem[d] * lead_inv % q;
      if (coef == 0) continue;
      const int shift = d - degree(r1);
      quot[shift] = coef;
      for (int k = 0; k <= degree(r1); ++k) {
        rem[shift + k] = positive_mod(rem[shift + k] - coef * r1[k], q);
      }
    }
    trim(rem);
    trim(quot);

    // t_next = t0 - quot * t1
    ZqPoly t_next(std::max(t0.size(), quot.size() + t1.size()), 0);
    for (std::size_t i = 0; i < t0.size(); ++i) t_next[i] = t0[i];
    for (std::size_t i = 0; i < quot.size(); ++i) {
      if (quot[i] == 0) continue;
      for (std::size_t k = 0; k < t1.size(); ++k) {
        t_next[i + k] = positive_mod(t_next[i + k] - quot[i] * t1[k], q);
      }
    }
    trim(t_next);

    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t_next);
  }

  // r0 is now gcd(f, x^n + 1) up to a unit.
  if (degree(r0) != 0) return std::nullopt;
  const std::int64_t scale = *inverse_mod(r0[0], q);
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t i = 0; i < t0.size() && i < n; ++i) out[i] = t0[i] * scale;
  return Poly::from_coefficients(out, q);
}

Poly reduce_mod_p(const Poly& f, std::int64_t p) {
  if (p < 1 || p % 2 == 0 || p >= f.modulus()) {
    throw ParameterError("reduce_mod_p needs odd p < q, got p=" +
                         std::to_string(p) +
                         " q=" + std::to_string(f.modulus()));
  }
  std::vector<std::int64_t> c(f.degree_bound());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = center_mod(f[i], p);
  return Poly::from_coefficients(c, f.modulus());
}

std::int64_t norm_inf(const Poly& f) {
  std::int64_t m = 0;
  for (std::int32_t c : f.coeffs()) m = std::max<std::int64_t>(m, std::abs(c));
  return m;
}

std::int64_t norm_l1(const Poly& f) {
  std::int64_t s = 0;
  for (std::int32_t c : f.coeffs()) s += std::abs(c);
  return s;
}

double norm_l2(const Poly& f) {
  double s = 0;
  for (std::int32_t c : f.coeffs()) s += static_cast<double>(c) * c;
  return std::sqrt(s);
}

double norm_l2_centered(const Poly& f) {
  const double mean = static_cast<double>(f.evaluate_at_one()) /
                      static_cast<double>(f.degree_bound());
  double s = 0;
  for (std::int32_t c : f.coeffs()) s += (c - mean) * (c - mean);
  return std::sqrt(s);
}

}  // namespace ntrucipher
