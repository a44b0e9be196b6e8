#pragma once

// Cohomology of products of projective spaces as truncated polynomial rings,
// Segre classes, and fiber integration over projectivised split bundles.
// Together these give an independent route to Milnor numbers that the closed
// forms in milnor.hpp are checked against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cobforge/arith.hpp"
#include "cobforge/error.hpp"

namespace cobforge::chern {

using Exponent = std::vector<int>;

/// Integer polynomial in x_1..x_r modulo (x_1^{m_1+1}, ..., x_r^{m_r+1}).
/// Monomials past a bound and zero coefficients are never stored.
class TruncatedPoly {
 public:
  TruncatedPoly() = default;
  explicit TruncatedPoly(std::vector<int> bounds) : bounds_(std::move(bounds)) {
    for (int b : bounds_)
      if (b < 0) throw domain_error("TruncatedPoly: negative degree bound");
  }

  static TruncatedPoly constant(std::vector<int> bounds, const ExactInt& c) {
    TruncatedPoly p(std::move(bounds));
    p.add_term(Exponent(p.bounds_.size(), 0), c);
    return p;
  }
  static TruncatedPoly one(std::vector<int> bounds) { return constant(std::move(bounds), 1); }

  /// x_i (zero when its bound is 0).
  static TruncatedPoly variable(std::vector<int> bounds, std::size_t i) {
    TruncatedPoly p(std::move(bounds));
    if (i >= p.bounds_.size()) throw domain_error("TruncatedPoly: variable index out of range");
    Exponent e(p.bounds_.size(), 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
  }

  /// c + sum_i coeffs[i] * x_i.
  static TruncatedPoly linear(std::vector<int> bounds, const ExactInt& c, const std::vector<ExactInt>& coeffs) {
    TruncatedPoly p = constant(std::move(bounds), c);
    if (coeffs.size() != p.bounds_.size()) throw domain_error("TruncatedPoly: linear form has wrong arity");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e(p.bounds_.size(), 0);
      e[i] = 1;
      p.add_term(e, coeffs[i]);
    }
    return p;
  }

  const std::vector<int>& bounds() const { return bounds_; }
  const std::map<Exponent, ExactInt>& terms() const { return terms_; }
  std::size_t arity() const { return bounds_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int top_degree() const { return std::accumulate(bounds_.begin(), bounds_.end(), 0); }

  ExactInt coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ExactInt(0) : it->second;
  }

  ExactInt constant_term() const { return coeff(Exponent(bounds_.size(), 0)); }

  /// Adds c * x^e; silently drops e beyond the bounds (x_i^{m_i+1} = 0).
  void add_term(const Exponent& e, const ExactInt& c) {
    if (e.size() != bounds_.size()) throw domain_error("TruncatedPoly: exponent arity mismatch");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw domain_error("TruncatedPoly: negative exponent");
      if (e[i] > bounds_[i]) return;
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Homogeneous component of the given total degree.
  TruncatedPoly graded_part(int degree) const {
    TruncatedPoly out(bounds_);
    for (const auto& [e, c] : terms_)
      if (std::accumulate(e.begin(), e.end(), 0) == degree) out.terms_.emplace(e, c);
    return out;
  }

  TruncatedPoly& operator+=(const TruncatedPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TruncatedPoly& operator-=(const TruncatedPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  TruncatedPoly& operator*=(const ExactInt& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
  friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
  friend TruncatedPoly operator*(TruncatedPoly a, const ExactInt& s) { return a *= s; }
  friend TruncatedPoly operator*(const ExactInt& s, TruncatedPoly a) { return a *= s; }
  friend TruncatedPoly operator-(TruncatedPoly a) { return a *= ExactInt(-1); }

  friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
    a.require_same_ring(b);
    TruncatedPoly out(a.bounds_);
    Exponent e(a.bounds_.size());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        bool fits = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
          e[i] = ea[i] + eb[i];
          if (e[i] > a.bounds_[i]) {
            fits = false;
            break;
          }
        }
        if (fits) out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  TruncatedPoly& operator*=(const TruncatedPoly& o) { return *this = *this * o; }

  friend bool operator==(const TruncatedPoly&, const TruncatedPoly&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      const ExactInt a = boost::multiprecision::abs(c);
      bool unit = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
      if (a != 1 || unit) s += a.str();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        s += "x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  void require_same_ring(const TruncatedPoly& o) const {
    if (bounds_ != o.bounds_) throw domain_error("TruncatedPoly: mismatched variable bounds");
  }

  std::vector<int> bounds_;
  std::map<Exponent, ExactInt> terms_;
};

inline TruncatedPoly poly_mul(const TruncatedPoly& a, const TruncatedPoly& b) { return a * b; }

inline TruncatedPoly poly_pow(const TruncatedPoly& a, unsigned e) {
  TruncatedPoly r = TruncatedPoly::one(a.bounds());
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

namespace detail {

// All exponents in the bounding box, ordered by total degree.
inline std::vector<Exponent> box_monomials(const std::vector<int>& bounds) {
  std::vector<Exponent> out;
  Exponent e(bounds.size(), 0);
  while (true) {
    out.push_back(e);
    std::size_t i = 0;
    for (; i < e.size(); ++i) {
      if (e[i] < bounds[i]) {
        ++e[i];
        break;
      }
      e[i] = 0;
    }
    if (i == e.size()) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
    return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
  });
  return out;
}

}  // namespace detail

/// Multiplicative inverse of a polynomial with constant term +-1, solved
/// coefficient by coefficient in increasing total degree.
inline TruncatedPoly poly_inverse(const TruncatedPoly& a) {
  const ExactInt c0 = a.constant_term();
  if (c0 != 1 && c0 != -1)
    throw domain_error("poly_inverse: constant term " + c0.str() + " is not a unit");
  TruncatedPoly b(a.bounds());
  const Exponent zero(a.arity(), 0);
  b.add_term(zero, c0);
  // a*b = 1  =>  c0*b[e] + sum_{f != 0, f <= e} a[f]*b[e-f] = 0 for e != 0.
  Exponent rest(a.arity());
  for (const auto& e : detail::box_monomials(a.bounds())) {
    if (e == zero) continue;
    ExactInt acc = 0;
    for (const auto& [f, cf] : a.terms()) {
      if (f == zero) continue;
      bool below = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        rest[i] = e[i] - f[i];
        if (rest[i] < 0) {
          below = false;
          break;
        }
      }
      if (below) acc += cf * b.coeff(rest);
    }
    b.add_term(e, -c0 * acc);
  }
  return b;
}

/// Coefficient of the top monomial x_1^{m_1} ... x_r^{m_r}.
inline ExactInt integrate_top(const TruncatedPoly& omega) { return omega.coeff(omega.bounds()); }

/// Split bundle over CP^{m_1} x ... x CP^{m_r}: one line bundle O(d_1,...,d_r)
/// per summand, optionally plus one trivial summand carrying the conjugated
/// (non-standard) stably complex structure.
struct ProjBundleSpec {
  std::vector<int> base_dims;
  std::vector<std::vector<int>> summands;
  bool conjugated_trivial = false;

  int base_dim() const { return std::accumulate(base_dims.begin(), base_dims.end(), 0); }
  int rank() const { return static_cast<int>(summands.size()) + (conjugated_trivial ? 1 : 0); }
  int fiber_dim() const { return rank() - 1; }
  int total_dim() const { return base_dim() + fiber_dim(); }

  void validate() const {
    for (int m : base_dims)
      if (m < 1) throw domain_error("ProjBundleSpec: base projective spaces must have dimension >= 1");
    for (const auto& d : summands)
      if (d.size() != base_dims.size()) throw domain_error("ProjBundleSpec: summand multidegree has wrong arity");
    if (fiber_dim() < 1) throw domain_error("ProjBundleSpec: fiber dimension must be at least 1");
  }

  /// First Chern class of summand j as a linear form in the base ring.
  TruncatedPoly summand_class(std::size_t j) const {
    std::vector<ExactInt> coeffs(summands.at(j).begin(), summands.at(j).end());
    return TruncatedPoly::linear(base_dims, 0, coeffs);
  }

  friend bool operator==(const ProjBundleSpec&, const ProjBundleSpec&) = default;
};

/// D_{k,n} = P(O(-1) + O(1)^{n-k-1} + conj(C)) over CP^k.
inline ProjBundleSpec dkn_spec(int n, int k) {
  if (n < 2 || k < 0 || k > n - 2)
    throw domain_error("dkn_spec: need n >= 2 and 0 <= k <= n-2 (got n=" + std::to_string(n) +
                       ", k=" + std::to_string(k) + ")");
  ProjBundleSpec s;
  if (k > 0) s.base_dims = {k};
  const std::size_t arity = s.base_dims.size();
  s.summands.push_back(std::vector<int>(arity, -1));
  for (int i = 0; i < n - k - 1; ++i) s.summands.push_back(std::vector<int>(arity, 1));
  s.conjugated_trivial = true;
  return s;
}

/// P(pi_1^* O(first) + pi_2^* O(a) + C^{n-3}) over CP^1 x CP^1. With first = -1
/// its Milnor number is (n+1)a.
inline ProjBundleSpec large_sn_spec(int n, int a, int first = -1) {
  if (n < 3) throw domain_error("large_sn_spec: need n >= 3");
  ProjBundleSpec s;
  s.base_dims = {1, 1};
  s.summands.push_back({first, 0});
  s.summands.push_back({0, a});
  for (int i = 0; i < n - 3; ++i) s.summands.push_back({0, 0});
  return s;
}

/// CP^n as P(C^{n+1}) over a point.
inline ProjBundleSpec projective_space_spec(int n) {
  if (n < 1) throw domain_error("projective_space_spec: need n >= 1");
  ProjBundleSpec s;
  s.summands.assign(static_cast<std::size_t>(n) + 1, std::vector<int>{});
  return s;
}

/// c(xi) = prod_j (1 + <d_j, x>); the conjugated trivial summand contributes 1.
inline TruncatedPoly total_chern(const ProjBundleSpec& spec) {
  spec.validate();
  TruncatedPoly c = TruncatedPoly::one(spec.base_dims);
  for (std::size_t j = 0; j < spec.summands.size(); ++j)
    c *= TruncatedPoly::one(spec.base_dims) + spec.summand_class(j);
  return c;
}

/// <omega * v^l, [P(xi)]> = <omega * c(xi)^{-1}, [B]>, valid for l >= fiber dimension.
inline ExactInt fiber_integral(const TruncatedPoly& omega, int v_power, const ProjBundleSpec& spec) {
  spec.validate();
  if (v_power < spec.fiber_dim())
    throw domain_error("fiber_integral: v power " + std::to_string(v_power) + " is below the fiber dimension " +
                       std::to_string(spec.fiber_dim()));
  if (omega.bounds() != spec.base_dims) throw domain_error("fiber_integral: omega is not over the base ring");
  return integrate_top(omega * poly_inverse(total_chern(spec)));
}

/// Milnor number s_n of the projectivisation with its (possibly non-standard)
/// stably complex structure. Stable tangent Chern roots: <d_j,x> + v for each
/// summand, -v for the conjugated trivial summand, plus base tangent roots
/// whose n-th powers vanish since the fiber has positive dimension, so n
/// exceeds every base dimension.
inline ExactInt milnor_projectivisation(const ProjBundleSpec& spec) {
  spec.validate();
  const int n = spec.total_dim();
  if (n < 2) throw domain_error("milnor_projectivisation: total dimension must be at least 2");

  const int base_top = spec.base_dim();
  const TruncatedPoly one = TruncatedPoly::one(spec.base_dims);
  ExactInt s = 0;
  // (l + v)^n = sum_i C(n,i) l^i v^{n-i}; l^i = 0 once i exceeds the base dimension,
  // so every surviving term has n - i >= fiber dimension.
  for (std::size_t j = 0; j < spec.summands.size(); ++j) {
    const TruncatedPoly l = spec.summand_class(j);
    TruncatedPoly l_pow = one;
    for (int i = 0; i <= std::min(n, base_top); ++i) {
      if (i > 0) l_pow *= l;
      if (l_pow.is_zero()) break;
      s += binomial(n, i) * fiber_integral(l_pow, n - i, spec);
    }
  }
  if (spec.conjugated_trivial) s += sign_pow(n) * fiber_integral(one, n, spec);
  return s;
}

}  // namespace cobforge::chern
