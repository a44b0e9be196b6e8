#pragma once

// Nonnegative integer representations x = sum a_i t_i over a basis with
// gcd 1 and t_0 > 0, allowing negative t_i.
//
// Over absolute values the Apery set modulo the smallest nonzero |t_i| is
// computed by Dijkstra on residues; it yields both the exact Frobenius number
// and a backtrace for explicit coefficients. Negative entries are then handled
// by the substitution a_0' = a_0 - k t_j, a_j' = a_j sgn(t_j) + k t_0.

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "cobforge/arith.hpp"
#include "cobforge/error.hpp"

namespace cobforge::frobenius {

struct Representation {
  ExactInt target;
  std::vector<ExactInt> basis;
  std::vector<ExactInt> coefficients;

  bool valid() const {
    if (basis.size() != coefficients.size()) return false;
    ExactInt sum = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (coefficients[i] < 0) return false;
      sum += coefficients[i] * basis[i];
    }
    return sum == target;
  }
};

/// Shortest representable value in each residue class modulo the smallest
/// nonzero element of a nonnegative basis, with a predecessor backtrace.
class AperySet {
 public:
  explicit AperySet(std::span<const ExactInt> basis) : basis_(basis.begin(), basis.end()) {
    for (const auto& t : basis_)
      if (t < 0) throw domain_error("AperySet: basis entries must be nonnegative");
    bool have = false;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i] == 0) continue;
      if (!have || basis_[i] < basis_[modulus_index_]) modulus_index_ = i;
      have = true;
    }
    if (!have) throw domain_error("AperySet: basis has no nonzero entry");
    if (gcd_list(basis_) != 1) throw domain_error("AperySet: basis gcd is not 1");
    if (basis_[modulus_index_] > 10'000'000) throw domain_error("AperySet: smallest basis element too large");
    modulus_ = basis_[modulus_index_].convert_to<std::int64_t>();
    solve();
  }

  std::int64_t modulus() const { return modulus_; }
  const ExactInt& min_in_class(std::int64_t r) const { return *dist_.at(static_cast<std::size_t>(r)); }

  /// Largest non-representable integer (-1 when every nonnegative integer is).
  ExactInt frobenius_number() const {
    ExactInt best = 0;
    for (const auto& d : dist_) best = std::max(best, *d);
    return best - modulus_;
  }

  bool representable(const ExactInt& x) const { return x >= 0 && x >= min_in_class(mod_floor(x, modulus_)); }

  /// Coefficients over the (nonnegative) basis, or nothing if x is not representable.
  std::optional<std::vector<ExactInt>> coefficients(const ExactInt& x) const {
    if (!representable(x)) return std::nullopt;
    std::vector<ExactInt> a(basis_.size(), 0);
    std::int64_t r = mod_floor(x, modulus_);
    a[modulus_index_] = (x - min_in_class(r)) / modulus_;
    while (r != 0) {
      const std::size_t i = via_[static_cast<std::size_t>(r)];
      a[i] += 1;
      r = mod_floor(ExactInt(r) - basis_[i], modulus_);
    }
    return a;
  }

 private:
  void solve() {
    const auto m = static_cast<std::size_t>(modulus_);
    dist_.assign(m, std::nullopt);
    via_.assign(m, 0);
    using Item = std::pair<ExactInt, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist_[0] = ExactInt(0);
    pq.emplace(0, 0);
    std::vector<bool> done(m, false);
    while (!pq.empty()) {
      auto [d, r] = pq.top();
      pq.pop();
      if (done[static_cast<std::size_t>(r)]) continue;
      done[static_cast<std::size_t>(r)] = true;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i] == 0 || i == modulus_index_) continue;
        const ExactInt nd = d + basis_[i];
        const auto nr = static_cast<std::size_t>(mod_floor(nd, modulus_));
        // Ties keep the lowest basis index for reproducible backtraces.
        if (!dist_[nr] || nd < *dist_[nr] || (nd == *dist_[nr] && !done[nr] && i < via_[nr])) {
          dist_[nr] = nd;
          via_[nr] = i;
          pq.emplace(nd, static_cast<std::int64_t>(nr));
        }
      }
    }
    for (const auto& d : dist_)
      if (!d) throw domain_error("AperySet: unreachable residue class");
  }

  std::vector<ExactInt> basis_;
  std::size_t modulus_index_ = 0;
  std::int64_t modulus_ = 1;
  std::vector<std::optional<ExactInt>> dist_;
  std::vector<std::size_t> via_;
};

/// N such that every integer x > N is a nonnegative combination of the
/// positive, coprime basis. Returns the exact Frobenius number, clamped at 0.
inline ExactInt frobenius_bound(std::span<const ExactInt> basis) {
  if (basis.empty()) throw domain_error("frobenius_bound: empty basis");
  for (const auto& t : basis)
    if (t <= 0) throw domain_error("frobenius_bound: basis entries must be positive");
  if (gcd_list(basis) != 1) throw domain_error("frobenius_bound: basis gcd is not 1");
  const ExactInt f = AperySet(basis).frobenius_number();
  return f < 0 ? ExactInt(0) : f;
}

namespace detail {

inline std::vector<ExactInt> abs_values(std::span<const ExactInt> basis) {
  std::vector<ExactInt> out;
  out.reserve(basis.size());
  for (const auto& t : basis) out.push_back(boost::multiprecision::abs(t));
  return out;
}

inline ExactInt ceil_div(const ExactInt& a, const ExactInt& b) { return (a + b - 1) / b; }

}  // namespace detail

/// Representation of x over a mixed-sign basis, or nothing when x is not representable.
inline std::optional<Representation> try_represent(const ExactInt& x, std::span<const ExactInt> basis) {
  if (basis.empty()) throw domain_error("represent: empty basis");
  if (basis[0] <= 0) throw domain_error("represent: first basis element must be positive");
  if (gcd_list(basis) != 1) throw domain_error("represent: basis gcd is not 1");

  const auto abs_basis = detail::abs_values(basis);
  const AperySet apery(abs_basis);

  // With a negative entry t_j, x = (x + K|t_j|) + K t_j: represent the shifted
  // value over |t| and credit K to t_j. The smallest K with a representable
  // shift is found by scanning; it is bounded by the absolute-value Frobenius number.
  std::optional<std::size_t> neg;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] < 0) {
      neg = i;
      break;
    }

  std::vector<ExactInt> signed_coeffs;
  if (!neg) {
    auto a = apery.coefficients(x);
    if (!a) return std::nullopt;
    signed_coeffs = std::move(*a);
  } else {
    const ExactInt step = abs_basis[*neg];
    const ExactInt bound = apery.frobenius_number();
    ExactInt k_max = 0;
    if (x <= bound) k_max = (bound - x) / step + 1;
    std::optional<std::vector<ExactInt>> a;
    ExactInt shift = 0;
    for (; shift <= k_max; ++shift) {
      a = apery.coefficients(x + shift * step);
      if (a) break;
    }
    if (!a) return std::nullopt;
    signed_coeffs.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) signed_coeffs[i] = basis[i] < 0 ? -(*a)[i] : (*a)[i];
    signed_coeffs[*neg] += shift;
  }

  // Sign fixing: a_0' = a_0 - k t_j, a_j' = a_j + k t_0 with the least k making a_j' >= 0.
  const ExactInt& t0 = basis[0];
  for (std::size_t j = 1; j < basis.size(); ++j) {
    if (signed_coeffs[j] >= 0) continue;
    const ExactInt k = detail::ceil_div(-signed_coeffs[j], t0);
    signed_coeffs[0] -= k * basis[j];
    signed_coeffs[j] += k * t0;
  }

  Representation rep{x, std::vector<ExactInt>(basis.begin(), basis.end()), std::move(signed_coeffs)};
  if (!rep.valid()) throw std::logic_error("represent: internal error, representation identity violated");
  return rep;
}

/// As try_represent, but a non-representable target is an error.
inline Representation represent(const ExactInt& x, std::span<const ExactInt> basis) {
  auto rep = try_represent(x, basis);
  if (!rep) throw domain_error("represent: " + x.str() + " is not representable over the basis");
  return std::move(*rep);
}

}  // namespace cobforge::frobenius
