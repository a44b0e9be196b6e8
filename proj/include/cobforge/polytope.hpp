#pragma once

// Combinatorial simple polytopes as vertex-facet incidence: products of
// simplices, vertex and face truncations (the moment-polytope side of point
// blow-ups and of B_k), f- and h-vectors, the two-parameter Todd genus, and a
// combinatorial isomorphism search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobforge/arith.hpp"
#include "cobforge/error.hpp"
#include "cobforge/milnor.hpp"
#include "cobforge/planner.hpp"

namespace cobforge::polytope {

using FacetSet = std::vector<int>;  // sorted facet indices

/// Simple polytope of dimension n with m facets; each vertex is the sorted
/// set of the n facets through it. Vertices are kept in lexicographic order.
class SimplePolytope {
 public:
  SimplePolytope(int dim, int facet_count, std::vector<FacetSet> vertices)
      : dim_(dim), facet_count_(facet_count), vertices_(std::move(vertices)) {
    for (auto& v : vertices_) std::sort(v.begin(), v.end());
    std::sort(vertices_.begin(), vertices_.end());
    validate();
  }

  int dim() const { return dim_; }
  int facet_count() const { return facet_count_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<FacetSet>& vertices() const { return vertices_; }
  const FacetSet& vertex(std::size_t i) const { return vertices_.at(i); }

  /// Indices of the vertices lying on every facet in `facets`.
  std::vector<std::size_t> vertices_on(const FacetSet& facets) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (std::includes(vertices_[i].begin(), vertices_[i].end(), facets.begin(), facets.end())) out.push_back(i);
    return out;
  }

  friend bool operator==(const SimplePolytope&, const SimplePolytope&) = default;

 private:
  void validate() const {
    if (dim_ < 1) throw domain_error("SimplePolytope: dimension must be at least 1");
    if (facet_count_ < dim_ + 1) throw domain_error("SimplePolytope: too few facets");
    std::vector<bool> used(static_cast<std::size_t>(facet_count_), false);
    for (const auto& v : vertices_) {
      if (v.size() != static_cast<std::size_t>(dim_)) throw domain_error("SimplePolytope: vertex is not simple");
      if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw domain_error("SimplePolytope: repeated facet at a vertex");
      for (int f : v) {
        if (f < 0 || f >= facet_count_) throw domain_error("SimplePolytope: facet index out of range");
        used[static_cast<std::size_t>(f)] = true;
      }
    }
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw domain_error("SimplePolytope: duplicate vertex");
    if (std::find(used.begin(), used.end(), false) != used.end())
      throw domain_error("SimplePolytope: facet without vertices");
    // Every edge (n-1 facets of a vertex) has exactly two endpoints.
    std::map<FacetSet, int> edges;
    for (const auto& v : vertices_)
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        FacetSet e;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (i != drop) e.push_back(v[i]);
        ++edges[e];
      }
    for (const auto& [e, count] : edges)
      if (count != 2) throw domain_error("SimplePolytope: an edge does not have exactly two endpoints");
  }

  int dim_;
  int facet_count_;
  std::vector<FacetSet> vertices_;
};

/// Delta^n: facets 0..n, vertex i omits facet i.
inline SimplePolytope simplex(int n) {
  if (n < 1) throw domain_error("simplex: n must be at least 1");
  std::vector<FacetSet> vs;
  for (int omit = 0; omit <= n; ++omit) {
    FacetSet v;
    for (int f = 0; f <= n; ++f)
      if (f != omit) v.push_back(f);
    vs.push_back(std::move(v));
  }
  return SimplePolytope(n, n + 1, std::move(vs));
}

/// Facets of q are renumbered after those of p.
inline SimplePolytope product(const SimplePolytope& p, const SimplePolytope& q) {
  std::vector<FacetSet> vs;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      FacetSet v = a;
      for (int f : b) v.push_back(f + p.facet_count());
      vs.push_back(std::move(v));
    }
  return SimplePolytope(p.dim() + q.dim(), p.facet_count() + q.facet_count(), std::move(vs));
}

/// Delta^{d_1} x ... x Delta^{d_r}.
inline SimplePolytope product_of_simplices(const std::vector<int>& dims) {
  if (dims.empty()) throw domain_error("product_of_simplices: no factors");
  SimplePolytope p = simplex(dims.front());
  for (std::size_t i = 1; i < dims.size(); ++i) p = product(p, simplex(dims[i]));
  return p;
}

/// Truncation of the face cut out by `defining` (codim c >= 2, or a vertex
/// when c = n). New facet G gets index m. Each vertex v of the face becomes c
/// vertices: the j-th keeps v's other facets, gains G, and drops the j-th
/// defining facet.
inline SimplePolytope cut_face(const SimplePolytope& p, FacetSet defining) {
  std::sort(defining.begin(), defining.end());
  defining.erase(std::unique(defining.begin(), defining.end()), defining.end());
  const std::size_t c = defining.size();
  if (c < 2) throw domain_error("cut_face: face codimension must be at least 2");
  if (c > static_cast<std::size_t>(p.dim())) throw domain_error("cut_face: more defining facets than the dimension");
  for (int f : defining)
    if (f < 0 || f >= p.facet_count()) throw domain_error("cut_face: facet index out of range");
  const auto on_face = p.vertices_on(defining);
  if (on_face.empty()) throw domain_error("cut_face: defining facets do not meet in a face");

  const int g = p.facet_count();
  std::vector<FacetSet> vs;
  std::vector<bool> replaced(p.vertex_count(), false);
  for (std::size_t i : on_face) replaced[i] = true;
  for (std::size_t i = 0; i < p.vertex_count(); ++i)
    if (!replaced[i]) vs.push_back(p.vertex(i));
  for (std::size_t i : on_face) {
    const FacetSet& v = p.vertex(i);
    for (int drop : defining) {
      FacetSet nv;
      for (int f : v)
        if (f != drop) nv.push_back(f);
      nv.push_back(g);
      vs.push_back(std::move(nv));
    }
  }
  return SimplePolytope(p.dim(), g + 1, std::move(vs));
}

inline SimplePolytope cut_vertex(const SimplePolytope& p, std::size_t v) {
  if (v >= p.vertex_count()) throw domain_error("cut_vertex: vertex index out of range");
  return cut_face(p, p.vertex(v));
}

/// Facets meeting every vertex in `vertex_ids` (the smallest face containing them).
inline FacetSet face_spanned(const SimplePolytope& p, const std::vector<std::size_t>& vertex_ids) {
  if (vertex_ids.empty()) throw domain_error("face_spanned: no vertices");
  FacetSet common = p.vertex(vertex_ids.front());
  for (std::size_t i : vertex_ids) {
    FacetSet next;
    const FacetSet& v = p.vertex(i);
    std::set_intersection(common.begin(), common.end(), v.begin(), v.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

/// Face of the simplex facet `g` spanned by its vertices [first, last) in index order.
inline FacetSet simplex_facet_face(const SimplePolytope& p, int g, std::size_t first, std::size_t last) {
  const auto on_g = p.vertices_on({g});
  if (last > on_g.size() || first >= last) throw domain_error("simplex_facet_face: vertex range out of bounds");
  return face_spanned(p, std::vector<std::size_t>(on_g.begin() + static_cast<std::ptrdiff_t>(first),
                                                  on_g.begin() + static_cast<std::ptrdiff_t>(last)));
}

/// f_0..f_n, f_i the number of i-dimensional faces. Enumerates subsets of
/// vertex facet sets, so dimensions above 7 require allow_large.
inline std::vector<std::int64_t> f_vector(const SimplePolytope& p, bool allow_large = false) {
  const int n = p.dim();
  if (n > 7 && !allow_large) throw domain_error("f_vector: dimension above 7 requires allow_large");
  if (n > 20) throw domain_error("f_vector: dimension too large for subset enumeration");
  std::set<FacetSet> faces;
  for (const auto& v : p.vertices()) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      FacetSet s;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(v[static_cast<std::size_t>(i)]);
      faces.insert(std::move(s));
    }
  }
  std::vector<std::int64_t> f(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : faces) ++f[static_cast<std::size_t>(n) - s.size()];
  return f;
}

/// h(t) = sum_i f_i (t-1)^i.
inline std::vector<ExactInt> h_from_f(const std::vector<std::int64_t>& f) {
  const std::size_t n = f.size() - 1;
  std::vector<ExactInt> h(n + 1, 0);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      h[j] += ExactInt(f[i]) * binomial(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) *
              sign_pow(static_cast<std::int64_t>(i - j));
  return h;
}

inline std::vector<ExactInt> h_vector(const SimplePolytope& p, bool allow_large = false) {
  return h_from_f(f_vector(p, allow_large));
}

/// Homogeneous polynomial sum_i coeffs[i] a^i b^{n-i}.
struct BivariateForm {
  int degree = 0;
  std::vector<ExactInt> coeffs;

  ExactInt evaluate(const ExactInt& a, const ExactInt& b) const {
    ExactInt s = 0;
    for (int i = 0; i <= degree; ++i)
      s += coeffs[static_cast<std::size_t>(i)] * ipow(a, static_cast<unsigned>(i)) *
           ipow(b, static_cast<unsigned>(degree - i));
    return s;
  }

  std::string str() const {
    std::string s;
    for (int i = degree; i >= 0; --i) {
      const ExactInt& c = coeffs[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      const ExactInt mag = boost::multiprecision::abs(c);
      if (mag != 1 || degree == 0) s += mag.str();
      auto var = [&](const char* name, int e) {
        if (e == 0) return;
        s += name;
        if (e > 1) s += "^" + std::to_string(e);
      };
      var("a", i);
      var("b", degree - i);
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const BivariateForm&, const BivariateForm&) = default;
};

/// Two-parameter Todd genus of the toric variety: sum_i h_i a^i b^{n-i}.
inline BivariateForm chi_ab(const SimplePolytope& p, bool allow_large = false) {
  return {p.dim(), h_vector(p, allow_large)};
}

namespace detail {

// Iterated colour refinement of facets over the facet-vertex incidence graph,
// computed jointly so colours are comparable across both polytopes.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const SimplePolytope& p, const SimplePolytope& q) {
  auto initial = [](const SimplePolytope& x) {
    std::vector<int> col(static_cast<std::size_t>(x.facet_count()), 0);
    for (const auto& v : x.vertices())
      for (int f : v) ++col[static_cast<std::size_t>(f)];
    return col;
  };
  std::vector<int> cp = initial(p), cq = initial(q);
  auto distinct = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return s.size();
  };
  for (;;) {
    std::map<std::vector<int>, int> ids;
    auto step = [&ids](const SimplePolytope& x, const std::vector<int>& col) {
      // Signature of a facet: its colour plus the sorted list of the sorted
      // facet-colour multisets of its vertices.
      std::vector<std::vector<std::vector<int>>> blocks(col.size());
      for (const auto& v : x.vertices()) {
        std::vector<int> vc;
        for (int f : v) vc.push_back(col[static_cast<std::size_t>(f)]);
        std::sort(vc.begin(), vc.end());
        for (int f : v) blocks[static_cast<std::size_t>(f)].push_back(vc);
      }
      std::vector<int> out(col.size());
      for (std::size_t f = 0; f < col.size(); ++f) {
        std::sort(blocks[f].begin(), blocks[f].end());
        std::vector<int> sig{col[f]};
        for (const auto& b : blocks[f]) {
          sig.push_back(-1);
          sig.insert(sig.end(), b.begin(), b.end());
        }
        out[f] = ids.try_emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
      }
      return out;
    };
    const std::size_t before = distinct(cp, cq);
    auto np = step(p, cp);
    auto nq = step(q, cq);
    const std::size_t after = distinct(np, nq);
    cp = std::move(np);
    cq = std::move(nq);
    if (after == before) break;
  }
  return {cp, cq};
}

inline std::vector<std::vector<int>> co_incidence(const SimplePolytope& p) {
  const auto m = static_cast<std::size_t>(p.facet_count());
  std::vector<std::vector<int>> c(m, std::vector<int>(m, 0));
  for (const auto& v : p.vertices())
    for (int a : v)
      for (int b : v) ++c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return c;
}

}  // namespace detail

/// Facet bijection phi with {phi(v)} = vertices(q) for v in vertices(p), if any.
/// Backtracking over colour classes, pruned by pairwise co-incidence counts.
inline std::optional<std::vector<int>> comb_iso(const SimplePolytope& p, const SimplePolytope& q) {
  if (p.dim() != q.dim() || p.facet_count() != q.facet_count() || p.vertex_count() != q.vertex_count())
    return std::nullopt;
  const auto m = static_cast<std::size_t>(p.facet_count());
  auto [cp, cq] = detail::refine_colours(p, q);
  {
    auto sp = cp, sq = cq;
    std::sort(sp.begin(), sp.end());
    std::sort(sq.begin(), sq.end());
    if (sp != sq) return std::nullopt;
  }
  const auto ip = detail::co_incidence(p);
  const auto iq = detail::co_incidence(q);

  // Assign facets of p in order of increasing colour-class size.
  std::map<int, int> class_size;
  for (int c : cp) ++class_size[c];
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return class_size[cp[a]] < class_size[cp[b]];
  });

  const std::set<FacetSet> q_vertices(q.vertices().begin(), q.vertices().end());
  std::vector<int> phi(m, -1);
  std::vector<bool> taken(m, false);

  auto full_check = [&]() {
    for (const auto& v : p.vertices()) {
      FacetSet img;
      for (int f : v) img.push_back(phi[static_cast<std::size_t>(f)]);
      std::sort(img.begin(), img.end());
      if (!q_vertices.count(img)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == m) return full_check();
    const std::size_t f = order[depth];
    for (std::size_t g = 0; g < m; ++g) {
      if (taken[g] || cq[g] != cp[f]) continue;
      if (ip[f][f] != iq[g][g]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t f2 = order[d];
        ok = ip[f][f2] == iq[g][static_cast<std::size_t>(phi[f2])];
      }
      if (!ok) continue;
      phi[f] = static_cast<int>(g);
      taken[g] = true;
      if (self(self, depth + 1)) return true;
      phi[f] = -1;
      taken[g] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return phi;
}

/// Cuts vertex v, then compares truncations of the two complementary faces of
/// the new simplex facet G: S1 spanned by G's first k+1 vertices, S2 by the rest.
inline bool verify_complementary_equiv(const SimplePolytope& p, std::size_t v, int k) {
  const int n = p.dim();
  if (k < 0 || k > n - 2) throw domain_error("verify_complementary_equiv: need 0 <= k <= n-2");
  const SimplePolytope cut = cut_vertex(p, v);
  const int g = cut.facet_count() - 1;
  const auto s1 = simplex_facet_face(cut, g, 0, static_cast<std::size_t>(k) + 1);
  const auto s2 = simplex_facet_face(cut, g, static_cast<std::size_t>(k) + 1, static_cast<std::size_t>(n));
  return comb_iso(cut_face(cut, s1), cut_face(cut, s2)).has_value();
}

/// One equivariant B_k: cut the lowest-index vertex, then the k-face of the new
/// facet spanned by its first k+1 vertices.
inline SimplePolytope apply_modification(const SimplePolytope& p, int k) {
  if (k < 0 || k > p.dim() - 2) throw domain_error("apply_modification: need 0 <= k <= n-2");
  const SimplePolytope cut = cut_vertex(p, 0);
  const int g = cut.facet_count() - 1;
  return cut_face(cut, simplex_facet_face(cut, g, 0, static_cast<std::size_t>(k) + 1));
}

/// Vertex count after a plan: B_k adds n-1 for the vertex cut and
/// (k+1)(n-k-1) for the k-face of G.
inline ExactInt plan_vertex_count(const planner::ModificationPlan& plan) {
  const int n = plan.n;
  ExactInt v = 4 * (n - 1);
  for (int k = 0; k < static_cast<int>(plan.counts.size()); ++k)
    v += plan.counts[static_cast<std::size_t>(k)] * ((n - 1) + (k + 1) * (n - k - 1));
  return v;
}

inline constexpr std::int64_t kMaxPlanVertices = 200000;

/// Applies counts[k] copies of B_k, k ascending, starting from Delta^1 x Delta^1 x Delta^{n-2}.
inline SimplePolytope apply_plan(const planner::ModificationPlan& plan) {
  const int n = plan.n;
  const auto& counts = plan.counts;
  if (n < 3) throw domain_error("apply_plan: n must be at least 3");
  if (counts.size() != static_cast<std::size_t>(n - 1)) throw domain_error("apply_plan: plan dimension mismatch");
  for (const auto& c : counts)
    if (c < 0) throw domain_error("apply_plan: negative count");
  if (const ExactInt v = plan_vertex_count(plan); v > kMaxPlanVertices)
    throw domain_error("apply_plan: result would have " + v.str() + " vertices, above the limit of " +
                       std::to_string(kMaxPlanVertices));
  SimplePolytope p = product_of_simplices({1, 1, n - 2});
  for (int k = 0; k <= n - 2; ++k)
    for (int i = 0; i < counts[static_cast<std::size_t>(k)].convert_to<int>(); ++i) p = apply_modification(p, k);
  return p;
}

struct RigidityReport {
  int n = 0;
  std::optional<std::vector<int>> iso;
  std::vector<ExactInt> h_b0, h_bn2;
  BivariateForm chi_b0, chi_bn2;
  std::size_t vertices_b0 = 0, vertices_bn2 = 0;
  ExactInt delta_b0, delta_bn2;

  bool holds() const {
    return iso.has_value() && h_b0 == h_bn2 && chi_b0 == chi_bn2 && vertices_b0 == vertices_bn2 &&
           delta_b0 != delta_bn2;
  }
};

/// B_0(CP^n) and B_{n-2}(CP^n) for complementary faces: isomorphic polytopes,
/// equal chi_{a,b}, different Milnor-number changes.
inline RigidityReport rigidity_demo(int n) {
  if (n < 3) throw domain_error("rigidity_demo: n must be at least 3");
  const SimplePolytope cut = cut_vertex(simplex(n), 0);
  const int g = cut.facet_count() - 1;
  const SimplePolytope b0 = cut_face(cut, simplex_facet_face(cut, g, 0, 1));
  const SimplePolytope bn2 = cut_face(cut, simplex_facet_face(cut, g, 1, static_cast<std::size_t>(n)));
  RigidityReport r;
  r.n = n;
  r.iso = comb_iso(b0, bn2);
  r.h_b0 = h_vector(b0, true);
  r.h_bn2 = h_vector(bn2, true);
  r.chi_b0 = {n, r.h_b0};
  r.chi_bn2 = {n, r.h_bn2};
  r.vertices_b0 = b0.vertex_count();
  r.vertices_bn2 = bn2.vertex_count();
  r.delta_b0 = milnor::s_kn(n, 0);
  r.delta_bn2 = milnor::s_kn(n, n - 2);
  return r;
}

inline nlohmann::json to_json(const SimplePolytope& p) {
  return {{"dim", p.dim()}, {"facets", p.facet_count()}, {"vertices", p.vertices()}};
}

inline SimplePolytope from_json(const nlohmann::json& j) {
  try {
    return SimplePolytope(j.at("dim").get<int>(), j.at("facets").get<int>(),
                          j.at("vertices").get<std::vector<FacetSet>>());
  } catch (const nlohmann::json::exception& e) {
    throw domain_error(std::string("polytope JSON: ") + e.what());
  }
}

}  // namespace cobforge::polytope
