#pragma once

// Exact integer primitives: binomials, Lucas reduction, gcds, prime powers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cobforge/error.hpp"

namespace cobforge {

using ExactInt = boost::multiprecision::cpp_int;

inline std::string to_string(const ExactInt& v) { return v.str(); }

/// C(n, k) by the multiplicative formula with exact division; 0 outside 0 <= k <= n.
inline ExactInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw domain_error("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  ExactInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n-k+i, i) here
  }
  return result;
}

inline ExactInt pow2(unsigned e) {
  ExactInt r = 1;
  r <<= e;
  return r;
}

/// Integer power with a nonnegative exponent.
inline ExactInt ipow(const ExactInt& base, unsigned e) {
  return boost::multiprecision::pow(base, e);
}

/// (-1)^e as +1/-1.
constexpr int sign_pow(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

/// Nonnegative residue of v modulo m (m > 0).
inline std::int64_t mod_floor(const ExactInt& v, std::int64_t m) {
  ExactInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::int64_t>();
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// Base-p digits d_0..d_r of a nonnegative integer; empty for zero.
struct BasePDigits {
  std::int64_t p = 2;
  std::vector<std::int64_t> digits;

  static BasePDigits of(std::int64_t value, std::int64_t p) {
    if (p < 2) throw domain_error("base must be at least 2");
    if (value < 0) throw domain_error("base-p expansion of a negative integer");
    BasePDigits out{p, {}};
    for (; value > 0; value /= p) out.digits.push_back(value % p);
    return out;
  }

  std::int64_t digit(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }

  std::int64_t value() const {
    std::int64_t v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * p + *it;
    return v;
  }
};

/// C(n, m) mod p via Lucas' theorem: the product of digit-wise binomials.
inline std::int64_t binomial_mod_p(std::int64_t n, std::int64_t m, std::int64_t p) {
  if (!is_prime(p)) throw domain_error("binomial_mod_p: modulus " + std::to_string(p) + " is not prime");
  if (n < 0 || m < 0) throw domain_error("binomial_mod_p: arguments must be nonnegative");
  if (m > n) return 0;
  const auto nd = BasePDigits::of(n, p);
  const auto md = BasePDigits::of(m, p);
  std::int64_t acc = 1;
  for (std::size_t i = 0; i < nd.digits.size(); ++i) {
    const std::int64_t ni = nd.digit(i), mi = md.digit(i);
    if (mi > ni) return 0;
    acc = acc * mod_floor(binomial(ni, mi), p) % p;
  }
  return acc;
}

/// Nonnegative gcd of the absolute values; an all-zero input is rejected.
inline ExactInt gcd_list(std::span<const ExactInt> values) {
  ExactInt g = 0;
  for (const auto& v : values) {
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
    if (g == 1) return g;
  }
  if (g == 0) throw domain_error("gcd_list: all inputs are zero");
  return g;
}

struct PrimePower {
  std::int64_t p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// (p, e) with m = p^e when m is a prime power, by trial division.
inline std::optional<PrimePower> prime_power_check(std::int64_t m) {
  if (m < 2) throw domain_error("prime_power_check: m must be at least 2");
  std::int64_t p = m;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  int e = 0;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return std::nullopt;
  return PrimePower{p, e};
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::int64_t> prime_divisors(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace cobforge
