#pragma once

// Generator construction for even n with n+1 not a prime power: start from a
// projectivisation X with s_n(X) = (n+1)a, write s_n(X) - 1 as a nonnegative
// combination of the -s_{k,n}, and record how many B_k to apply.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobforge/arith.hpp"
#include "cobforge/chern.hpp"
#include "cobforge/error.hpp"
#include "cobforge/frobenius.hpp"
#include "cobforge/milnor.hpp"

namespace cobforge::planner {

struct GeneratorVerdict {
  int n = 0;
  ExactInt s;
  bool is_generator = false;
  std::string required;  // "+-1" or "+-p" with the prime filled in
};

/// Milnor-Novikov: [X^{2n}] is a generator iff s_n = +-1 when n+1 is not a
/// prime power, and s_n = +-p when n+1 = p^e.
inline GeneratorVerdict milnor_novikov_check(int n, const ExactInt& s) {
  if (n < 1) throw domain_error("milnor_novikov_check: n must be >= 1");
  GeneratorVerdict v{n, s, false, "+-1"};
  const ExactInt mag = boost::multiprecision::abs(s);
  if (const auto pp = prime_power_check(n + 1)) {
    v.required = "+-" + std::to_string(pp->p);
    v.is_generator = mag == pp->p;
  } else {
    v.is_generator = mag == 1;
  }
  return v;
}

struct ModificationPlan {
  int n = 0;
  int a = 0;
  chern::ProjBundleSpec base;
  ExactInt base_milnor;
  std::vector<ExactInt> counts;  // counts[k] = number of B_k applications
  ExactInt predicted_milnor;
};

/// base_milnor + sum_k counts[k] * s_kn(n,k).
inline ExactInt predict_milnor(int n, const ExactInt& base_milnor, const std::vector<ExactInt>& counts) {
  ExactInt s = base_milnor;
  for (std::size_t k = 0; k < counts.size(); ++k) s += counts[k] * milnor::s_kn(n, static_cast<int>(k));
  return s;
}

/// Solver basis: -s_{1,n} = n+1 first, then -s_{k,n} for k = 0, 2, 3, ..., n-2.
inline std::vector<int> basis_order(int n) {
  std::vector<int> ks{1, 0};
  for (int k = 2; k <= n - 2; ++k) ks.push_back(k);
  return ks;
}

inline ModificationPlan construct_plan(int n) {
  if (n < 2 || n % 2 != 0) throw domain_error("construct_plan: n must be even (got " + std::to_string(n) + ")");
  if (prime_power_check(n + 1)) throw domain_error("construct_plan: n+1 is a prime power");
  if (!milnor::coprimality_check(n).holds) throw domain_error("construct_plan: the s_{k,n} are not coprime");

  const auto order = basis_order(n);
  std::vector<ExactInt> basis;
  for (int k : order) basis.push_back(-milnor::s_kn(n, k));
  if (basis.front() != n + 1) throw std::logic_error("construct_plan: -s_{1,n} != n+1");

  // Absolute-value Frobenius bound caps the search over a.
  const ExactInt bound = frobenius::AperySet(frobenius::detail::abs_values(basis)).frobenius_number();
  for (int a = 1;; ++a) {
    const ExactInt target = ExactInt(n + 1) * a - 1;
    auto rep = frobenius::try_represent(target, basis);
    if (!rep) {
      if (target > bound + 1) throw std::logic_error("construct_plan: representation failed above the bound");
      continue;
    }
    ModificationPlan plan;
    plan.n = n;
    plan.a = a;
    plan.base = chern::large_sn_spec(n, a);
    plan.base_milnor = ExactInt(n + 1) * a;
    if (chern::milnor_projectivisation(plan.base) != plan.base_milnor)
      throw std::logic_error("construct_plan: base Milnor number disagrees with the cohomological oracle");
    plan.counts.assign(static_cast<std::size_t>(n - 1), 0);
    for (std::size_t i = 0; i < order.size(); ++i) plan.counts[static_cast<std::size_t>(order[i])] = rep->coefficients[i];
    plan.predicted_milnor = predict_milnor(n, plan.base_milnor, plan.counts);
    if (plan.predicted_milnor != 1) throw std::logic_error("construct_plan: predicted Milnor number is not 1");
    return plan;
  }
}

/// Recomputes every delta as -s_n(D_{k,n}) - (n + (-1)^n), without going through s_kn.
inline bool verify_plan(const ModificationPlan& plan) {
  const int n = plan.n;
  if (n < 2 || plan.counts.size() != static_cast<std::size_t>(n - 1)) return false;
  if (plan.base_milnor != ExactInt(n + 1) * plan.a) return false;
  const ExactInt point_blowup = n + sign_pow(n);
  ExactInt s = plan.base_milnor;
  for (int k = 0; k <= n - 2; ++k) {
    const ExactInt& c = plan.counts[static_cast<std::size_t>(k)];
    if (c < 0) return false;
    s += c * (-milnor::s_dkn(n, k) - point_blowup);
  }
  return s == plan.predicted_milnor;
}

inline nlohmann::json to_json(const ModificationPlan& plan) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : plan.counts) counts.push_back(c.str());
  return {{"n", plan.n},
          {"a", plan.a},
          {"base_milnor", plan.base_milnor.str()},
          {"counts", counts},
          {"predicted_milnor", plan.predicted_milnor.str()}};
}

namespace detail {

inline ExactInt json_int(const nlohmann::json& j) {
  if (j.is_string()) return ExactInt(j.get<std::string>());
  if (j.is_number_integer()) return ExactInt(j.get<std::int64_t>());
  throw domain_error("plan JSON: expected an integer or decimal string");
}

}  // namespace detail

/// Parses the flat plan document; the base bundle is rebuilt from (n, a).
inline ModificationPlan plan_from_json(const nlohmann::json& j) {
  try {
    ModificationPlan plan;
    plan.n = j.at("n").get<int>();
    plan.a = j.at("a").get<int>();
    plan.base_milnor = detail::json_int(j.at("base_milnor"));
    for (const auto& c : j.at("counts")) plan.counts.push_back(detail::json_int(c));
    plan.predicted_milnor = detail::json_int(j.at("predicted_milnor"));
    if (plan.n >= 3) plan.base = chern::large_sn_spec(plan.n, plan.a);
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("plan JSON: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw domain_error(std::string("plan JSON: ") + e.what());
  }
}

}  // namespace cobforge::planner
