#pragma once

// Closed forms for the Milnor-number changes under the modifications B_k:
//   s_dkn(n,k)  Milnor number of D_{k,n}
//   s_kn(n,k)   s_n(B_k(X)) - s_n(X), independent of X
//   L_kn(n,k)   -s_kn(n,k) + 3 s_kn(n,k-1) - 2 s_kn(n,k-2)

#include <cstdint>
#include <string>
#include <vector>

#include "cobforge/arith.hpp"
#include "cobforge/error.hpp"

namespace cobforge::milnor {

namespace detail {

inline void require_k_range(const char* what, int n, int k, int k_min) {
  if (n < 2 || k < k_min || k > n - 2)
    throw domain_error(std::string(what) + ": need n >= 2 and " + std::to_string(k_min) +
                       " <= k <= n-2 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

}  // namespace detail

/// s_n(D_{k,n}) = (n-k-1)(2^{k+1}-1) + sum_{i<=k} (-1)^i (2^i + (-1)^n 2^{k-i}) C(n-1,i).
inline ExactInt s_dkn(int n, int k) {
  detail::require_k_range("s_dkn", n, k, 0);
  ExactInt s = ExactInt(n - k - 1) * (pow2(static_cast<unsigned>(k + 1)) - 1);
  for (int i = 0; i <= k; ++i) {
    ExactInt term = pow2(static_cast<unsigned>(i)) + sign_pow(n) * pow2(static_cast<unsigned>(k - i));
    s += sign_pow(i) * term * binomial(n - 1, i);
  }
  return s;
}

/// Change of s_n under a point blow-up followed by B_k's second blow-up.
inline ExactInt s_kn(int n, int k) {
  detail::require_k_range("s_kn", n, k, 0);
  return -s_dkn(n, k) - (n + sign_pow(n));
}

/// L_{k,n} = -2^k - 1 + (-1)^{n+k} C(n,k) + (-2)^k C(n,k).
inline ExactInt L_kn(int n, int k) {
  detail::require_k_range("L_kn", n, k, 2);
  const ExactInt c = binomial(n, k);
  return -pow2(static_cast<unsigned>(k)) - 1 + sign_pow(n + k) * c + sign_pow(k) * pow2(static_cast<unsigned>(k)) * c;
}

/// Rows of s_dkn, s_kn (k = 0..n-2) and L_kn (k = 2..n-2) for one dimension.
struct MilnorTable {
  int n = 0;
  std::vector<ExactInt> s_dkn_row;
  std::vector<ExactInt> s_kn_row;
  std::vector<ExactInt> L_row;  // L_row[i] is L_{i+2,n}

  static MilnorTable build(int n) {
    if (n < 2) throw domain_error("MilnorTable: need n >= 2");
    MilnorTable t;
    t.n = n;
    for (int k = 0; k <= n - 2; ++k) {
      t.s_dkn_row.push_back(s_dkn(n, k));
      t.s_kn_row.push_back(s_kn(n, k));
    }
    for (int k = 2; k <= n - 2; ++k) t.L_row.push_back(L_kn(n, k));
    return t;
  }

  /// Both defining identities hold row-wide.
  bool consistent() const {
    for (std::size_t k = 0; k < s_kn_row.size(); ++k)
      if (s_kn_row[k] != -s_dkn_row[k] - (n + sign_pow(n))) return false;
    for (std::size_t i = 0; i < L_row.size(); ++i) {
      const std::size_t k = i + 2;
      if (L_row[i] != -s_kn_row[k] + 3 * s_kn_row[k - 1] - 2 * s_kn_row[k - 2]) return false;
    }
    return true;
  }
};

struct CoprimalityResult {
  ExactInt gcd;
  bool holds = false;
};

/// gcd(s_{0,n}, ..., s_{n-2,n}) for even n, short-circuiting at 1.
inline CoprimalityResult coprimality_check(int n) {
  if (n < 2 || n % 2 != 0) throw domain_error("coprimality_check: n must be even and >= 2 (got " + std::to_string(n) + ")");
  ExactInt g = 0;
  for (int k = 0; k <= n - 2 && g != 1; ++k) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(s_kn(n, k)));
  return {g, g == 1};
}

struct Witness {
  int k = 0;
  std::int64_t L_mod_p = 0;
};

/// For even n with n+1 not a prime power and a prime p | n+1, picks
/// k in {p^j, p^j + 1} with L_{k,n} != 0 mod p, where j is the lowest base-p
/// digit position of n holding a digit below p-1.
inline Witness witness_k(int n, std::int64_t p) {
  if (n < 2 || n % 2 != 0) throw domain_error("witness_k: n must be even and >= 2");
  if (!is_prime(p)) throw domain_error("witness_k: " + std::to_string(p) + " is not prime");
  if ((n + 1) % p != 0) throw domain_error("witness_k: p does not divide n+1");
  if (prime_power_check(n + 1)) throw domain_error("witness_k: n+1 is a prime power");

  const auto digits = BasePDigits::of(n, p);
  std::size_t j = 0;
  while (j < digits.digits.size() && digits.digits[j] == p - 1) ++j;
  // j == size would mean n+1 = p^size, excluded above.
  std::int64_t k = 1;
  for (std::size_t i = 0; i < j; ++i) k *= p;

  // Second case: 2^k = -1 (mod p) forces the shift to k+1.
  ExactInt two_k = boost::multiprecision::powm(ExactInt(2), ExactInt(k), ExactInt(p));
  if (two_k == p - 1) ++k;

  if (k < 2 || k > n - 2) throw domain_error("witness_k: selected k=" + std::to_string(k) + " out of range");
  const auto residue = mod_floor(L_kn(n, static_cast<int>(k)), p);
  if (residue == 0) throw domain_error("witness_k: selected k has L divisible by p");
  return {static_cast<int>(k), residue};
}

}  // namespace cobforge::milnor
