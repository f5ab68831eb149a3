#include "ntrucipher/params.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "ntrucipher/errors.hpp"
#include "ntrucipher/poly.hpp"

namespace ntrucipher {
namespace {

struct NamedProfile {
  const char* name;
  ParamSet params;
};

const NamedProfile kProfiles[] = {
    {"paper-2017", ParamSet{256, 3, 1087, 5, 5, 5, 102, 80}},
    {"toy-16", ParamSet{16, 3, 257, 1, 1, 1, 5, 80}},
    {"toy-brute-force", ParamSet{8, 3, 17, 1, 1, 0, 3, 80}},
    {"toy-lattice", ParamSet{4, 3, 97, 1, 1, 0, 1, 80}},
};

bool is_power_of_two(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// t_k / t_{k-1} for t_k = (-1)^k (2k-1)!! / (2x^2)^k.
double series_term_ratio(int k, double two_x_sq) {
  return -(2.0 * k - 1.0) / two_x_sq;
}

}  // namespace

std::optional<ParamSet> profile(std::string_view name) {
  for (const auto& p : kProfiles) {
    if (name == p.name) return p.params;
  }
  return std::nullopt;
}

std::vector<std::string> profile_names() {
  std::vector<std::string> out;
  for (const auto& p : kProfiles) out.emplace_back(p.name);
  return out;
}

std::vector<std::string> validate(const ParamSet& ps) {
  std::vector<std::string> v;
  if (!is_power_of_two(ps.n)) v.push_back("n not a power of two");
  if (ps.n > kMaxSupportedN) {
    v.push_back("n exceeds supported maximum " +
                std::to_string(kMaxSupportedN));
  }
  if (!is_prime(ps.p)) v.push_back("p not prime");
  if (ps.p % 2 == 0) v.push_back("p not odd");
  if (!is_prime(ps.q)) v.push_back("q not prime");
  if (ps.q > kMaxSupportedQ) {
    v.push_back("q exceeds supported maximum " +
                std::to_string(kMaxSupportedQ));
  }
  if (std::gcd(ps.p, ps.q) != 1) v.push_back("gcd(p, q) != 1");
  if (ps.p >= ps.q) v.push_back("p not less than q");
  const std::uint32_t counts[] = {ps.a1, ps.a2, ps.a3};
  for (int i = 0; i < 3; ++i) {
    if (2ull * counts[i] > ps.n) {
      v.push_back("a" + std::to_string(i + 1) + " exceeds n/2");
    }
  }
  if (ps.a_mu > ps.n) v.push_back("a_mu exceeds n");
  const std::uint64_t weight =
      4ull * ps.a1 * ps.a2 + 2ull * ps.a3;
  if (2 * weight >= ps.q) {
    v.push_back("product-form weight 4*a1*a2+2*a3 not below q/2");
  }
  return v;
}

void require_valid(const ParamSet& ps) {
  const auto violations = validate(ps);
  if (violations.empty()) return;
  std::string msg = "invalid parameter set:";
  for (const auto& s : violations) msg += " " + s + ";";
  throw ParameterError(msg);
}

ParamSet parse_params(std::string_view text) {
  ParamSet ps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("expected key=value, got '" + std::string(line) +
                           "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    std::uint32_t parsed = 0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParameterError("bad value for " + std::string(key) + ": '" +
                           std::string(value) + "'");
    }
    if (key == "n") ps.n = parsed;
    else if (key == "p") ps.p = parsed;
    else if (key == "q") ps.q = parsed;
    else if (key == "a1") ps.a1 = parsed;
    else if (key == "a2") ps.a2 = parsed;
    else if (key == "a3") ps.a3 = parsed;
    else if (key == "a_mu") ps.a_mu = parsed;
    else if (key == "lambda") ps.lambda = parsed;
    else throw ParameterError("unknown parameter '" + std::string(key) + "'");
  }
  return ps;
}

std::string format_params(const ParamSet& ps) {
  std::ostringstream out;
  out << "n=" << ps.n << "\np=" << ps.p << "\nq=" << ps.q << "\na1=" << ps.a1
      << "\na2=" << ps.a2 << "\na3=" << ps.a3 << "\na_mu=" << ps.a_mu
      << "\nlambda=" << ps.lambda << "\n";
  return out.str();
}

bool deterministic_bound_check(const ParamSet& ps) {
  const std::uint64_t bound =
      8ull * ps.p * (2ull * ps.a1 * ps.a2 + ps.a3) + 2;
  return ps.q > bound;
}

double sigma(const ParamSet& ps) {
  const double weight = 4.0 * ps.a1 * ps.a2 + 2.0 * ps.a3;
  const double zero_share = static_cast<double>(ps.a_mu) / ps.n;
  return std::sqrt(weight * (2.0 - zero_share));
}

double erfc(double x) { return std::erfc(x); }

AsymptoticLogErfc log_erfc_asymptotic(double x, int max_terms) {
  const double two_x_sq = 2.0 * x * x;
  double sum = 1.0;
  double term = 1.0;
  int used = 1;
  double next = term * series_term_ratio(1, two_x_sq);
  // The series diverges; stop at max_terms or once terms stop shrinking.
  while (used < max_terms && std::abs(next) < std::abs(term)) {
    term = next;
    sum += term;
    ++used;
    next = term * series_term_ratio(used, two_x_sq);
  }
  const double value = -x * x - std::log(x * std::sqrt(std::numbers::pi)) +
                       std::log(sum);
  return AsymptoticLogErfc{value, std::abs(next) / sum, used};
}

double log_erfc(double x) {
  if (x < 0) throw ParameterError("log_erfc needs x >= 0");
  if (x <= 6.0) return std::log(std::erfc(x));
  return log_erfc_asymptotic(x).value;
}

double failure_probability_log2(const ParamSet& ps) {
  const double s = sigma(ps);
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  const double arg = (static_cast<double>(ps.q) - 2.0) /
                     (2.0 * std::numbers::sqrt2 * ps.p * s);
  return std::log2(static_cast<double>(ps.n)) +
         log_erfc(arg) / std::numbers::ln2;
}

FailureReport failure_report(const ParamSet& ps) {
  FailureReport r{};
  r.sigma = sigma(ps);
  r.bound_b = (static_cast<double>(ps.q) - 2.0) / (2.0 * ps.p);
  r.erfc_argument = r.sigma == 0.0
                        ? std::numeric_limits<double>::infinity()
                        : r.bound_b / (std::numbers::sqrt2 * r.sigma);
  r.log2_failure_prob = failure_probability_log2(ps);
  r.meets_lambda = r.log2_failure_prob < -static_cast<double>(ps.lambda);
  r.deterministic_ok = deterministic_bound_check(ps);
  return r;
}

SpaceSizes space_sizes(const ParamSet& ps, std::uint64_t key_inf_norm,
                       std::uint64_t ephemeral_inf_norm) {
  auto bits = [&](double alphabet) {
    return static_cast<std::uint64_t>(ps.n) *
           static_cast<std::uint64_t>(std::llround(std::log2(alphabet)));
  };
  return SpaceSizes{
      bits(2.0 * static_cast<double>(key_inf_norm) + 1.0),
      bits(2.0 * static_cast<double>(ephemeral_inf_norm) + 1.0),
      bits(ps.p),
      bits(ps.q),
  };
}

NonzeroEstimate expected_nonzero_count(const ParamSet& ps) {
  const double count = 4.0 * ps.a1 * ps.a2 + 2.0 * ps.a3;
  return NonzeroEstimate{count, count / (2.0 * ps.n / 3.0)};
}

}  // namespace ntrucipher
