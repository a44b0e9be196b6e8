#pragma once

// Machine-readable command reports and the full reproduction suite.

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobforge/arith.hpp"
#include "cobforge/chern.hpp"
#include "cobforge/milnor.hpp"
#include "cobforge/planner.hpp"
#include "cobforge/polytope.hpp"

namespace cobforge {

struct Check {
  std::string name;
  bool pass = false;
};

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<Check> checks;

  void check(std::string name, bool pass) { checks.push_back({std::move(name), pass}); }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}});
    return {{"command", command}, {"inputs", inputs}, {"outputs", outputs}, {"checks", cs}, {"pass", all_pass()}};
  }
};

inline nlohmann::json json_ints(const std::vector<ExactInt>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

/// Upper end of the oracle sweep; COBFORGE_MAX_N overrides the default 16.
inline int sweep_max_n() {
  if (const char* env = std::getenv("COBFORGE_MAX_N")) {
    try {
      const int v = std::stoi(env);
      if (v >= 2) return v;
    } catch (const std::exception&) {
    }
    throw domain_error("COBFORGE_MAX_N must be an integer >= 2");
  }
  return 16;
}

struct ReproduceOptions {
  int max_n = 16;
  bool corrupt_table = false;  // test hook: perturb a published L entry
};

/// Published L tables, gcd checks, closed form versus oracle, complementary
/// truncations, rigidity, and generator plans.
inline Report reproduce(const ReproduceOptions& opt) {
  Report r;
  r.command = "reproduce";
  r.inputs = {{"max_n", opt.max_n}};

  const std::vector<std::pair<int, std::vector<int>>> published{
      {4, {25}}, {6, {70, -189, 238}}, {8, {135, -513, 1173, -1881, 1755}}};
  for (auto [n, row] : published) {
    if (opt.corrupt_table && n == 6) row[1] += 1;
    bool ok = true;
    nlohmann::json computed = nlohmann::json::array();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto L = milnor::L_kn(n, static_cast<int>(i) + 2);
      computed.push_back(L.str());
      ok = ok && L == row[i];
    }
    r.outputs["L_table"][std::to_string(n)] = computed;
    r.check("L table n=" + std::to_string(n), ok);
  }

  for (int n : {14, 20, 32}) {
    const auto c = milnor::coprimality_check(n);
    r.outputs["gcd"][std::to_string(n)] = c.gcd.str();
    r.check("gcd(s_k," + std::to_string(n) + ") = 1", c.holds);
  }
  for (int n : {4, 6, 8, 10, 12, 16}) {
    const auto p = prime_power_check(n + 1)->p;
    bool ok = true;
    for (int k = 0; k <= n - 2; ++k) ok = ok && mod_floor(milnor::s_kn(n, k), p) == 0;
    r.check("p | s_k," + std::to_string(n) + " for p=" + std::to_string(p), ok);
  }

  {
    bool ok = true;
    int cases = 0;
    for (int n = 2; n <= opt.max_n; ++n)
      for (int k = 0; k <= n - 2; ++k, ++cases)
        ok = ok && milnor::s_dkn(n, k) == chern::milnor_projectivisation(chern::dkn_spec(n, k));
    r.outputs["oracle_cases"] = cases;
    r.check("s_n(D_k,n) closed form = oracle for n <= " + std::to_string(opt.max_n), ok);
  }

  {
    bool ok = true;
    for (int n = 3; n <= 6; ++n) {
      const auto s = polytope::simplex(n);
      for (std::size_t v = 0; v < s.vertex_count(); ++v)
        for (int k = 0; k <= n - 2; ++k) ok = ok && polytope::verify_complementary_equiv(s, v, k);
    }
    for (int n = 4; n <= 6; ++n) {
      const auto p = polytope::product_of_simplices({1, 1, n - 2});
      for (std::size_t v = 0; v < p.vertex_count(); ++v)
        for (int k = 0; k <= n - 2; ++k) ok = ok && polytope::verify_complementary_equiv(p, v, k);
    }
    r.check("complementary truncations are combinatorially equivalent (n <= 6)", ok);
  }

  for (int n = 3; n <= 6; ++n) r.check("rigidity n=" + std::to_string(n), polytope::rigidity_demo(n).holds());

  for (int n : {14, 20}) {
    const auto plan = planner::construct_plan(n);
    r.outputs["plans"][std::to_string(n)] = planner::to_json(plan);
    r.check("plan n=" + std::to_string(n) + " verified", planner::verify_plan(plan) && plan.predicted_milnor == 1);
    r.check("plan n=" + std::to_string(n) + " is a generator",
            planner::milnor_novikov_check(n, plan.predicted_milnor).is_generator);
  }
  return r;
}

}  // namespace cobforge
