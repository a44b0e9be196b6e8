// cobforge: command-line front end for the Milnor-number, planner and
// polytope machinery. Human-readable output goes to stdout; --json FILE
// (or --json - for stdout) writes the machine-readable report.
//
// Exit codes: 0 all checks pass, 1 domain error or failed check, 2 usage error.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cobforge/report.hpp"

namespace {

using namespace cobforge;
using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw domain_error(path + ": " + e.what());
  }
}

void write_json(const json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string join(const std::vector<ExactInt>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

struct PolytopeSource {
  std::string file;
  std::vector<int> simplices;

  void add_to(CLI::App* cmd) {
    auto* in = cmd->add_option("--in", file, "Polytope JSON file");
    auto* sx = cmd->add_option("--simplices", simplices, "Product of simplices, e.g. 1,1,2")->delimiter(',');
    in->excludes(sx);
  }

  polytope::SimplePolytope load() const {
    if (!file.empty()) return polytope::from_json(read_json_file(file));
    if (!simplices.empty()) return polytope::product_of_simplices(simplices);
    throw CLI::RequiredError("--in or --simplices");
  }
};

struct Cli {
  CLI::App app{"Toric generators of the unitary cobordism ring: Milnor numbers, plans, polytopes", "cobforge"};
  std::string json_path;
  Report report;

  // milnor
  int n = 0, k = 0;
  std::string table = "dkn";
  bool oracle = false;
  // witness
  std::int64_t p = 0;
  // plan / polytope outputs
  std::string out_path;
  // polytope
  PolytopeSource src, src_b;
  std::size_t vertex = 0;
  std::vector<int> facets;
  std::string plan_path;
  bool allow_large = false;
  // reproduce
  bool corrupt_table = false;

  std::vector<std::pair<CLI::App*, std::function<void()>>> handlers;

  // Human-readable text moves to stderr when the JSON report goes to stdout.
  std::ostream& out() const { return json_path == "-" ? std::cerr : std::cout; }

  CLI::App* command(CLI::App* parent, const std::string& name, const std::string& desc, std::function<void()> run) {
    auto* c = parent->add_subcommand(name, desc);
    c->add_option("--json", json_path, "Write the JSON report to FILE (- for stdout)");
    handlers.emplace_back(c, std::move(run));
    return c;
  }

  Cli() {
    app.require_subcommand(1);

    auto* milnor_cmd = command(&app, "milnor", "Closed-form Milnor numbers s_n(D_k,n), s_k,n, L_k,n", [this] { run_milnor(); });
    milnor_cmd->add_option("--n", n, "Complex dimension")->required();
    milnor_cmd->add_option("--k", k, "Modification index")->required();
    milnor_cmd->add_option("--table", table, "dkn | kn | L | all")->check(CLI::IsMember({"dkn", "kn", "L", "all"}));
    milnor_cmd->add_flag("--oracle", oracle, "Also integrate over D_k,n and compare");

    auto* gcd_cmd = command(&app, "gcd-check", "gcd of s_0,n .. s_n-2,n for even n", [this] { run_gcd(); });
    gcd_cmd->add_option("--n", n)->required();

    auto* wit_cmd = command(&app, "witness", "k with L_k,n != 0 mod p", [this] { run_witness(); });
    wit_cmd->add_option("--n", n)->required();
    wit_cmd->add_option("--p", p)->required();

    auto* plan_cmd = command(&app, "plan", "Construct a generator plan for even n", [this] { run_plan(); });
    plan_cmd->add_option("--n", n)->required();
    plan_cmd->add_option("--out", out_path, "Write the plan JSON to FILE");

    auto* poly = app.add_subcommand("polytope", "Simple polytope operations");
    poly->require_subcommand(1);

    auto* cv = command(poly, "cut-vertex", "Truncate a vertex", [this] { run_cut_vertex(); });
    src.add_to(cv);
    cv->add_option("--vertex", vertex, "Vertex index in canonical order")->required();
    cv->add_option("--out", out_path);

    auto* cf = command(poly, "cut-face", "Truncate the face cut out by facets", [this] { run_cut_face(); });
    src.add_to(cf);
    cf->add_option("--facets", facets, "Defining facets, e.g. 0,4")->required()->delimiter(',');
    cf->add_option("--out", out_path);

    auto* iso = command(poly, "iso", "Combinatorial isomorphism search", [this] { run_iso(); });
    iso->add_option("--a", src.file, "First polytope JSON")->required();
    iso->add_option("--b", src_b.file, "Second polytope JSON")->required();

    auto* hv = command(poly, "hvec", "f-vector, h-vector and chi_{a,b}", [this] { run_hvec(); });
    src.add_to(hv);
    hv->add_flag("--allow-large", allow_large, "Permit dimensions above 7");

    auto* ap = command(poly, "apply-plan", "Realise a plan on Delta^1 x Delta^1 x Delta^{n-2}", [this] { run_apply_plan(); });
    ap->add_option("--plan", plan_path, "Plan JSON from `cobforge plan`")->required();
    ap->add_option("--out", out_path);
    ap->add_flag("--allow-large", allow_large, "Also compute the h-vector above dimension 7");

    auto* rg = command(poly, "rigidity", "B_0 versus B_{n-2} of CP^n", [this] { run_rigidity(); });
    rg->add_option("--n", n)->required();

    auto* rp = command(&app, "reproduce", "Run the full reproduction suite", [this] { run_reproduce(); });
    rp->add_flag("--corrupt-table", corrupt_table, "Test hook: perturb a published table entry")->group("");
  }

  void run_milnor() {
    report.command = "milnor";
    report.inputs = {{"n", n}, {"k", k}, {"table", table}, {"oracle", oracle}};
    const bool all = table == "all";
    if (all || table == "dkn" || oracle) {
      const auto v = milnor::s_dkn(n, k);
      report.outputs["s_dkn"] = v.str();
      if (all || table == "dkn") out() << "s_n(D_{" << k << "," << n << "}) = " << v << "\n";
    }
    if (all || table == "kn") {
      const auto v = milnor::s_kn(n, k);
      report.outputs["s_kn"] = v.str();
      out() << "s_{" << k << "," << n << "} = " << v << "\n";
    }
    if (all || table == "L") {
      const auto v = milnor::L_kn(n, k);
      report.outputs["L_kn"] = v.str();
      out() << "L_{" << k << "," << n << "} = " << v << "\n";
    }
    if (oracle) {
      const auto o = chern::milnor_projectivisation(chern::dkn_spec(n, k));
      report.outputs["oracle"] = o.str();
      const bool agree = o == milnor::s_dkn(n, k);
      report.check("closed form agrees with oracle", agree);
      out() << "oracle: " << o << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
    }
  }

  void run_gcd() {
    report.command = "gcd-check";
    report.inputs = {{"n", n}};
    const auto c = milnor::coprimality_check(n);
    const auto t = milnor::MilnorTable::build(n);
    report.outputs = {{"gcd", c.gcd.str()}, {"holds", c.holds}, {"s_kn", json_ints(t.s_kn_row)}};
    report.check("table identities", t.consistent());
    out() << "s_{k," << n << "} for k=0.." << n - 2 << ": " << join(t.s_kn_row) << "\n";
    out() << "gcd = " << c.gcd << (c.holds ? " (coprime)" : " (not coprime)") << "\n";
  }

  void run_witness() {
    report.command = "witness";
    report.inputs = {{"n", n}, {"p", p}};
    const auto w = milnor::witness_k(n, p);
    report.outputs = {{"k", w.k}, {"L_mod_p", w.L_mod_p}, {"L_kn", milnor::L_kn(n, w.k).str()}};
    report.check("L_k,n not divisible by p", mod_floor(milnor::L_kn(n, w.k), p) != 0);
    out() << "k = " << w.k << ", L_{" << w.k << "," << n << "} = " << w.L_mod_p << " (mod " << p << ")\n";
  }

  void run_plan() {
    report.command = "plan";
    report.inputs = {{"n", n}};
    const auto plan = planner::construct_plan(n);
    const auto verdict = planner::milnor_novikov_check(n, plan.predicted_milnor);
    report.outputs = {{"plan", planner::to_json(plan)}, {"generator", verdict.is_generator}, {"required", verdict.required}};
    report.check("verify_plan", planner::verify_plan(plan));
    report.check("base Milnor number matches oracle", chern::milnor_projectivisation(plan.base) == plan.base_milnor);
    report.check("Milnor-Novikov generator", verdict.is_generator);
    if (!out_path.empty()) write_json(planner::to_json(plan), out_path);
    out() << "n = " << n << ", a = " << plan.a << ", s_n(X) = " << plan.base_milnor << "\n";
    for (std::size_t i = 0; i < plan.counts.size(); ++i)
      if (plan.counts[i] != 0) out() << "  B_" << i << " x " << plan.counts[i] << "\n";
    out() << "predicted s_n = " << plan.predicted_milnor << (verdict.is_generator ? " (generator)" : " (not a generator)") << "\n";
  }

  void emit_polytope(const polytope::SimplePolytope& q) {
    report.outputs["polytope"] = polytope::to_json(q);
    report.outputs["vertices"] = q.vertex_count();
    report.outputs["facets"] = q.facet_count();
    if (!out_path.empty()) write_json(polytope::to_json(q), out_path);
    out() << "dim " << q.dim() << ", " << q.facet_count() << " facets, " << q.vertex_count() << " vertices\n";
    if (q.dim() <= 7) {
      const auto h = polytope::h_vector(q);
      bool sym = true;
      for (std::size_t i = 0; i < h.size(); ++i) sym = sym && h[i] == h[h.size() - 1 - i];
      report.check("Dehn-Sommerville", sym);
    }
  }

  void run_cut_vertex() {
    report.command = "polytope cut-vertex";
    const auto q = src.load();
    report.inputs = {{"polytope", polytope::to_json(q)}, {"vertex", vertex}};
    const auto r = polytope::cut_vertex(q, vertex);
    report.check("vertex count grows by n-1", r.vertex_count() == q.vertex_count() + static_cast<std::size_t>(q.dim()) - 1);
    emit_polytope(r);
  }

  void run_cut_face() {
    report.command = "polytope cut-face";
    const auto q = src.load();
    report.inputs = {{"polytope", polytope::to_json(q)}, {"facets", facets}};
    std::vector<int> distinct = facets;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto on = q.vertices_on(distinct).size();
    const auto r = polytope::cut_face(q, facets);
    report.check("vertex count grows by |S|(c-1)", r.vertex_count() == q.vertex_count() + on * (distinct.size() - 1));
    emit_polytope(r);
  }

  void run_iso() {
    report.command = "polytope iso";
    const auto a = src.load();
    const auto b = src_b.load();
    report.inputs = {{"a", src.file}, {"b", src_b.file}};
    const auto phi = polytope::comb_iso(a, b);
    report.outputs["found"] = phi.has_value();
    report.outputs["bijection"] = phi ? json(*phi) : json(nullptr);
    if (phi) {
      out() << "isomorphic; facet map:";
      for (int f : *phi) out() << " " << f;
      out() << "\n";
    } else {
      out() << "not isomorphic\n";
    }
  }

  void run_hvec() {
    report.command = "polytope hvec";
    const auto q = src.load();
    report.inputs = {{"polytope", polytope::to_json(q)}};
    const auto f = polytope::f_vector(q, allow_large);
    const auto h = polytope::h_from_f(f);
    const polytope::BivariateForm chi{q.dim(), h};
    report.outputs = {{"f_vector", f}, {"h_vector", json_ints(h)}, {"chi_ab", chi.str()}};
    bool sym = true;
    for (std::size_t i = 0; i < h.size(); ++i) sym = sym && h[i] == h[h.size() - 1 - i];
    report.check("Dehn-Sommerville", sym);
    report.check("chi_{1,1} = vertex count", chi.evaluate(1, 1) == q.vertex_count());
    out() << "f = (";
    for (std::size_t i = 0; i < f.size(); ++i) out() << (i ? "," : "") << f[i];
    out() << ")\nh = (" << join(h) << ")\nchi_ab = " << chi.str() << "\n";
  }

  void run_apply_plan() {
    report.command = "polytope apply-plan";
    const auto plan = planner::plan_from_json(read_json_file(plan_path));
    report.inputs = {{"plan", planner::to_json(plan)}};
    report.check("verify_plan", planner::verify_plan(plan));
    const auto q = polytope::apply_plan(plan);
    report.outputs["vertices"] = q.vertex_count();
    report.outputs["facets"] = q.facet_count();
    if (!out_path.empty()) write_json(polytope::to_json(q), out_path);
    out() << "dim " << q.dim() << ", " << q.facet_count() << " facets, " << q.vertex_count() << " vertices\n";
    if (q.dim() <= 7 || allow_large) {
      const auto h = polytope::h_vector(q, allow_large);
      report.outputs["h_vector"] = json_ints(h);
      out() << "h = (" << join(h) << ")\n";
    }
  }

  void run_rigidity() {
    report.command = "polytope rigidity";
    report.inputs = {{"n", n}};
    const auto r = polytope::rigidity_demo(n);
    report.outputs = {{"iso_found", r.iso.has_value()},
                      {"h_vector", json_ints(r.h_b0)},
                      {"chi_ab", r.chi_b0.str()},
                      {"s_0n", r.delta_b0.str()},
                      {"s_n-2n", r.delta_bn2.str()}};
    report.check("B_0 and B_{n-2} polytopes isomorphic", r.iso.has_value());
    report.check("equal h-vectors", r.h_b0 == r.h_bn2);
    report.check("equal chi_{a,b}", r.chi_b0 == r.chi_bn2);
    report.check("Milnor-number changes differ", r.delta_b0 != r.delta_bn2);
    out() << "iso " << (r.iso ? "found" : "NOT found") << "; h = (" << join(r.h_b0) << ") vs (" << join(r.h_bn2)
              << ")\nchi_ab = " << r.chi_b0.str() << "\ns_{0," << n << "} = " << r.delta_b0 << ", s_{" << n - 2 << ","
              << n << "} = " << r.delta_bn2 << "\n";
  }

  void run_reproduce() {
    report = reproduce({sweep_max_n(), corrupt_table});
  }

  int finish() {
    for (const auto& c : report.checks) out() << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n";
    if (!json_path.empty()) write_json(report.to_json(), json_path);
    return report.all_pass() ? 0 : kExitDomain;
  }

  int run(int argc, char** argv) {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitUsage;
    }
    try {
      for (auto& [cmd, fn] : handlers)
        if (cmd->parsed()) fn();
      return finish();
    } catch (const CLI::RequiredError& e) {
      std::cerr << "usage error: " << e.what() << " is required\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitDomain;
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.run(argc, argv);
}
