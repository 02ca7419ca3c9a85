#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "chainmf/collection.hpp"
#include "chainmf/hom.hpp"
#include "chainmf/parallel.hpp"
#include "chainmf/verify.hpp"

namespace chainmf {

enum class ArrowKind { Psi, Phi, Lambda, Sigma, Theta };

inline std::string to_string(ArrowKind k) {
  switch (k) {
    case ArrowKind::Psi: return "psi";
    case ArrowKind::Phi: return "phi";
    case ArrowKind::Lambda: return "lambda";
    case ArrowKind::Sigma: return "sigma";
    case ArrowKind::Theta: return "theta";
  }
  return "?";
}

inline ArrowKind arrow_kind_from_string(const std::string& s) {
  for (auto k : {ArrowKind::Psi, ArrowKind::Phi, ArrowKind::Lambda, ArrowKind::Sigma, ArrowKind::Theta})
    if (to_string(k) == s) return k;
  throw ParseError("unknown arrow kind '" + s + "'");
}

/// Psi/Phi arrows are copies of arrow `base` of the lower quiver; Lambda/Sigma/Theta arrows are
/// attached to vertex `base` of Q^{n-1} (Lambda) or Q^{n-2} (Sigma, Theta).
struct Arrow {
  std::size_t source = 0, target = 0;
  ArrowKind kind = ArrowKind::Psi;
  int index = 0;
  std::size_t base = 0;
  std::string label;

  bool operator==(const Arrow& o) const {
    return source == o.source && target == o.target && kind == o.kind && index == o.index && base == o.base &&
           label == o.label;
  }
};

/// Arrow indices in the order they are traversed.
using Path = std::vector<std::size_t>;

struct Relation {
  enum class Kind { Null, Comm } kind = Kind::Null;
  Path lhs, rhs;  // rhs is empty for Null
  std::string family;

  bool operator==(const Relation& o) const {
    return kind == o.kind && lhs == o.lhs && rhs == o.rhs && family == o.family;
  }
};

struct Quiver {
  std::vector<int> exponents;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  std::size_t arrow_count(std::size_t s, std::size_t t) const {
    std::size_t k = 0;
    for (const auto& a : arrows) k += a.source == s && a.target == t;
    return k;
  }

  bool operator==(const Quiver& o) const {
    return exponents == o.exponents && vertices == o.vertices && arrows == o.arrows && relations == o.relations;
  }
};

inline std::size_t path_source(const Quiver& q, const Path& p) { return q.arrows.at(p.front()).source; }
inline std::size_t path_target(const Quiver& q, const Path& p) { return q.arrows.at(p.back()).target; }

/// Throws ShapeMismatch when an arrow or relation is ill-typed.
inline void check_quiver(const Quiver& q) {
  for (const auto& a : q.arrows)
    if (a.source >= q.vertices.size() || a.target >= q.vertices.size()) throw ShapeMismatch("arrow endpoint out of range");
  auto check_path = [&](const Path& p) {
    if (p.empty()) throw ShapeMismatch("empty relation path");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] >= q.arrows.size()) throw ShapeMismatch("relation uses an unknown arrow");
      if (k > 0 && q.arrows[p[k - 1]].target != q.arrows[p[k]].source) throw ShapeMismatch("relation path is not composable");
    }
  };
  for (const auto& r : q.relations) {
    check_path(r.lhs);
    if (r.kind == Relation::Kind::Comm) {
      check_path(r.rhs);
      if (path_source(q, r.lhs) != path_source(q, r.rhs) || path_target(q, r.lhs) != path_target(q, r.rhs))
        throw ShapeMismatch("commutativity relation joins different endpoints");
    }
  }
}

/// (Q^m, I^m) for m = 0..n, built by the recursion. Vertex k of Q^m is object k of E^m.
class QuiverTower {
 public:
  explicit QuiverTower(const std::vector<int>& exponents) : a_(exponents) {
    check_chain_exponents(a_);
    Quiver q0;
    q0.vertices.push_back("E0");
    levels_.push_back(std::move(q0));
    for (std::size_t m = 1; m <= a_.size(); ++m) levels_.push_back(build_level(m));
  }

  const Quiver& level(std::size_t m) const { return levels_.at(m); }
  const Quiver& top() const { return levels_.back(); }

  std::size_t psi_vertex(std::size_t m, int i, std::size_t v) const { return static_cast<std::size_t>(i) * levels_[m - 1].vertices.size() + v; }
  std::size_t phi_vertex(std::size_t m, int j, std::size_t v) const {
    return static_cast<std::size_t>(a_[m - 1] - 1) * levels_[m - 1].vertices.size() +
           static_cast<std::size_t>(j) * levels_[m - 2].vertices.size() + v;
  }
  std::size_t psi_arrow(std::size_t m, int i, std::size_t k) const { return static_cast<std::size_t>(i) * levels_[m - 1].arrows.size() + k; }
  std::size_t phi_arrow(std::size_t m, int j, std::size_t k) const {
    return static_cast<std::size_t>(a_[m - 1] - 1) * levels_[m - 1].arrows.size() +
           static_cast<std::size_t>(j) * levels_[m - 2].arrows.size() + k;
  }

 private:
  Quiver build_level(std::size_t m) {
    const Quiver& q1 = levels_[m - 1];
    const Quiver* q2 = m >= 2 ? &levels_[m - 2] : nullptr;
    const int b = a_[m - 1];
    const int a = m >= 2 ? a_[m - 2] : 0;
    Quiver q;
    q.exponents.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(m));

    for (int i = 0; i <= b - 2; ++i)
      for (const auto& v : q1.vertices) q.vertices.push_back("psi" + std::to_string(i) + " " + v);
    if (q2)
      for (int j = 0; j <= a - 1; ++j)
        for (const auto& v : q2->vertices) q.vertices.push_back("phi" + std::to_string(j) + " " + v);

    // inherited copies
    for (int i = 0; i <= b - 2; ++i)
      for (std::size_t k = 0; k < q1.arrows.size(); ++k) {
        const auto& x = q1.arrows[k];
        q.arrows.push_back({psi_vertex(m, i, x.source), psi_vertex(m, i, x.target), ArrowKind::Psi, i, k,
                            "psi" + std::to_string(i) + "(" + x.label + ")"});
      }
    if (q2)
      for (int j = 0; j <= a - 1; ++j)
        for (std::size_t k = 0; k < q2->arrows.size(); ++k) {
          const auto& x = q2->arrows[k];
          q.arrows.push_back({phi_vertex(m, j, x.source), phi_vertex(m, j, x.target), ArrowKind::Phi, j, k,
                              "phi" + std::to_string(j) + "(" + x.label + ")"});
        }

    // lambda_i^v : psi_i v -> psi_{i+1} v
    std::map<std::pair<int, std::size_t>, std::size_t> lambda_at, sigma_at;
    std::map<std::size_t, std::size_t> theta_at;
    for (int i = 0; i <= b - 3; ++i)
      for (std::size_t v = 0; v < q1.vertices.size(); ++v) {
        lambda_at[{i, v}] = q.arrows.size();
        q.arrows.push_back({psi_vertex(m, i, v), psi_vertex(m, i + 1, v), ArrowKind::Lambda, i, v,
                            "lambda" + std::to_string(i) + "[" + q1.vertices[v] + "]"});
      }
    // sigma_j^v : psi_{b-2} psi_j v -> phi_j v and theta^v : psi_{b-2} psi_{a-2} v -> phi_{a-1} v
    if (q2 && b >= 2 && a >= 2) {
      for (int j = 0; j <= a - 2; ++j)
        for (std::size_t v = 0; v < q2->vertices.size(); ++v) {
          sigma_at[{j, v}] = q.arrows.size();
          q.arrows.push_back({psi_vertex(m, b - 2, psi_vertex(m - 1, j, v)), phi_vertex(m, j, v), ArrowKind::Sigma, j, v,
                              "sigma" + std::to_string(j) + "[" + q2->vertices[v] + "]"});
        }
      for (std::size_t v = 0; v < q2->vertices.size(); ++v) {
        theta_at[v] = q.arrows.size();
        q.arrows.push_back({psi_vertex(m, b - 2, psi_vertex(m - 1, a - 2, v)), phi_vertex(m, a - 1, v), ArrowKind::Theta, 0,
                            v, "theta[" + q2->vertices[v] + "]"});
      }
    }

    auto map_path = [](const Path& p, auto f) {
      Path out;
      for (auto k : p) out.push_back(f(k));
      return out;
    };
    // inherited relations
    for (int i = 0; i <= b - 2; ++i)
      for (const auto& r : q1.relations) {
        auto f = [&](std::size_t k) { return psi_arrow(m, i, k); };
        q.relations.push_back({r.kind, map_path(r.lhs, f), map_path(r.rhs, f), "psi" + std::to_string(i) + " " + r.family});
      }
    if (q2)
      for (int j = 0; j <= a - 1; ++j)
        for (const auto& r : q2->relations) {
          auto f = [&](std::size_t k) { return phi_arrow(m, j, k); };
          q.relations.push_back({r.kind, map_path(r.lhs, f), map_path(r.rhs, f), "phi" + std::to_string(j) + " " + r.family});
        }

    using K = Relation::Kind;
    for (int i = 0; i <= b - 4; ++i)
      for (std::size_t v = 0; v < q1.vertices.size(); ++v)
        q.relations.push_back({K::Null, {lambda_at[{i, v}], lambda_at[{i + 1, v}]}, {}, "lambda null"});
    for (int i = 0; i <= b - 3; ++i)
      for (std::size_t k = 0; k < q1.arrows.size(); ++k) {
        const auto& x = q1.arrows[k];
        q.relations.push_back({K::Comm, {lambda_at[{i, x.source}], psi_arrow(m, i + 1, k)},
                               {psi_arrow(m, i, k), lambda_at[{i, x.target}]}, "lambda comm"});
      }
    if (!q2 || b < 2 || a < 2) return q;
    const std::size_t lower_arrows_2 = q2->arrows.size();
    // psi_{b-2} psi_j alpha for alpha an arrow of Q^{m-2}
    auto psipsi = [&](int j, std::size_t k) { return psi_arrow(m, b - 2, psi_arrow(m - 1, j, k)); };
    for (int j = 0; j <= a - 2; ++j)
      for (std::size_t v = 0; v < q2->vertices.size(); ++v) {
        if (b >= 3)
          q.relations.push_back({K::Null, {lambda_at[{b - 3, psi_vertex(m - 1, j, v)}], sigma_at[{j, v}]}, {}, "sigma null"});
      }
    for (int j = 0; j <= a - 2; ++j)
      for (std::size_t k = 0; k < lower_arrows_2; ++k) {
        const auto& x = q2->arrows[k];
        q.relations.push_back({K::Comm, {sigma_at[{j, x.source}], phi_arrow(m, j, k)},
                               {psipsi(j, k), sigma_at[{j, x.target}]}, "sigma comm"});
      }
    if (b >= 3)
      for (std::size_t v = 0; v < q2->vertices.size(); ++v)
        q.relations.push_back({K::Null, {lambda_at[{b - 3, psi_vertex(m - 1, a - 2, v)}], theta_at[v]}, {}, "theta null"});
    for (std::size_t k = 0; k < lower_arrows_2; ++k) {
      const auto& x = q2->arrows[k];
      q.relations.push_back({K::Comm, {theta_at[x.source], phi_arrow(m, a - 1, k)}, {psipsi(a - 2, k), theta_at[x.target]},
                             "theta comm"});
    }
    // theta after the inherited lambda_{a-3} of Q^{m-1}: the composite lands in
    // Hom(psi_{a-3} v, psi_{a-1} v) = 0 but none of the families above forces it.
    if (a >= 3)
      for (std::size_t k = 0; k < q1.arrows.size(); ++k) {
        const auto& x = q1.arrows[k];
        if (x.kind != ArrowKind::Lambda || x.index != a - 3) continue;
        q.relations.push_back({K::Null, {psi_arrow(m, b - 2, k), theta_at[x.base]}, {}, "theta after lambda"});
      }
    return q;
  }

  std::vector<int> a_;
  std::vector<Quiver> levels_;
};

inline Quiver build_quiver(const std::vector<int>& exponents) { return QuiverTower(exponents).top(); }

/// The morphism of each arrow of Q^m between objects of E^m: psi_i / phi_j images of lower
/// arrows and the canonical lambda, sigma, theta.
inline std::vector<MfMorphism> arrow_morphisms(const Collection& c, const QuiverTower& qt, std::size_t m) {
  const auto& T = c.tower();
  const auto& q = qt.level(m);
  std::vector<MfMorphism> out;
  if (m == 0) return out;
  const auto lower1 = arrow_morphisms(c, qt, m - 1);
  const auto lower2 = m >= 2 ? arrow_morphisms(c, qt, m - 2) : std::vector<MfMorphism>{};
  const auto& e1 = c.level(m - 1);
  const auto& e2 = m >= 2 ? c.level(m - 2) : e1;
  for (const auto& x : q.arrows) {
    switch (x.kind) {
      case ArrowKind::Psi: out.push_back(T.psi_i(lower1.at(x.base), x.index)); break;
      case ArrowKind::Phi: out.push_back(T.phi_j(lower2.at(x.base), x.index)); break;
      case ArrowKind::Lambda: out.push_back(T.lambda(*e1.at(x.base).object, x.index)); break;
      case ArrowKind::Sigma: out.push_back(T.sigma(*e2.at(x.base).object, x.index)); break;
      case ArrowKind::Theta: out.push_back(T.theta(*e2.at(x.base).object)); break;
    }
  }
  const auto& objs = c.level(m);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (out[k].source() != *objs.at(q.arrows[k].source).object || out[k].target() != *objs.at(q.arrows[k].target).object)
      throw ShapeMismatch("arrow " + q.arrows[k].label + " does not connect its collection objects");
  return out;
}

/// All paths of an acyclic quiver, trivial paths first (one per vertex, as empty arrow lists
/// tagged by vertex), then by length. Throws CyclicQuiver when a cycle exists.
struct PathList {
  std::vector<std::size_t> start;  // source vertex
  std::vector<Path> arrows;        // empty for the trivial path at start
};

inline PathList enumerate_paths(const Quiver& q) {
  const std::size_t nv = q.vertices.size();
  std::vector<std::size_t> indeg(nv, 0);
  for (const auto& a : q.arrows) ++indeg[a.target];
  std::vector<std::size_t> order, stack;
  for (std::size_t v = 0; v < nv; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& a : q.arrows)
      if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
  }
  if (order.size() != nv) throw CyclicQuiver("the quiver has an oriented cycle");

  PathList out;
  std::vector<std::size_t> frontier;
  for (std::size_t v = 0; v < nv; ++v) {
    out.start.push_back(v);
    out.arrows.emplace_back();
    frontier.push_back(out.arrows.size() - 1);
  }
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto p : frontier) {
      const std::size_t end = out.arrows[p].empty() ? out.start[p] : q.arrows[out.arrows[p].back()].target;
      for (std::size_t k = 0; k < q.arrows.size(); ++k) {
        if (q.arrows[k].source != end) continue;
        Path np = out.arrows[p];
        np.push_back(k);
        out.start.push_back(out.start[p]);
        out.arrows.push_back(std::move(np));
        next.push_back(out.arrows.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// dim e_t (kQ/I) e_s for every pair (s, t), row-major in s. Relations are homogeneous in the
/// endpoints, so the ideal splits by pair.
inline std::vector<std::size_t> path_algebra_dims(const Quiver& q) {
  check_quiver(q);
  const auto paths = enumerate_paths(q);
  std::map<std::pair<std::size_t, Path>, std::size_t> index;
  for (std::size_t k = 0; k < paths.arrows.size(); ++k) index[{paths.start[k], paths.arrows[k]}] = k;
  auto end_of = [&](std::size_t k) {
    return paths.arrows[k].empty() ? paths.start[k] : q.arrows[paths.arrows[k].back()].target;
  };
  const std::size_t nv = q.vertices.size();
  std::vector<EchelonBasis> ideal(nv * nv);
  for (const auto& r : q.relations) {
    const std::size_t s = path_source(q, r.lhs), t = path_target(q, r.lhs);
    for (std::size_t pre = 0; pre < paths.arrows.size(); ++pre) {
      if (end_of(pre) != s) continue;
      for (std::size_t post = 0; post < paths.arrows.size(); ++post) {
        if (paths.start[post] != t) continue;
        auto join = [&](const Path& mid) {
          Path p = paths.arrows[pre];
          p.insert(p.end(), mid.begin(), mid.end());
          p.insert(p.end(), paths.arrows[post].begin(), paths.arrows[post].end());
          return index.at({paths.start[pre], p});
        };
        SparseVector v;
        const auto a = join(r.lhs);
        if (r.kind == Relation::Kind::Null) {
          v.emplace_back(a, 1);
        } else {
          const auto b = join(r.rhs);
          if (a == b) continue;
          v.emplace_back(std::min(a, b), a < b ? 1 : -1);
          v.emplace_back(std::max(a, b), a < b ? -1 : 1);
        }
        ideal[paths.start[pre] * nv + end_of(post)].insert(v);
      }
    }
  }
  std::vector<std::size_t> out(nv * nv, 0);
  for (std::size_t k = 0; k < paths.arrows.size(); ++k) ++out[paths.start[k] * nv + end_of(k)];
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= ideal[k].rank();
  return out;
}

/// dim kQ/I: number of paths minus the rank of the two-sided ideal generated by the relations.
inline std::size_t path_algebra_dim(const Quiver& q) {
  std::size_t total = 0;
  for (auto d : path_algebra_dims(q)) total += d;
  return total;
}

/// Hom(E_s, E_t) in degree zero for every ordered pair, with bases.
class DegreeZeroHoms {
 public:
  DegreeZeroHoms(const std::vector<MfPtr>& objects, unsigned jobs) : n_(objects.size()), complexes_(n_ * n_), bases_(n_ * n_) {
    parallel_for(n_ * n_, jobs, [&](std::size_t k) {
      complexes_[k] = std::make_unique<HomComplex>(objects[k / n_], objects[k % n_]);
      bases_[k] = complexes_[k]->basis();
    });
  }
  std::size_t size() const { return n_; }
  const HomComplex& complex(std::size_t s, std::size_t t) const { return *complexes_.at(s * n_ + t); }
  const std::vector<MfMorphism>& basis(std::size_t s, std::size_t t) const { return bases_.at(s * n_ + t); }
  std::size_t dim(std::size_t s, std::size_t t) const { return complex(s, t).dim(); }

  /// dim Hom(E_s, E_t) minus the span of composites through objects other than s and t.
  std::size_t irr(std::size_t s, std::size_t t) const {
    if (s == t) return 0;
    const auto d = dim(s, t);
    if (d == 0) return 0;
    std::vector<MfMorphism> composites;
    for (std::size_t u = 0; u < n_; ++u) {
      if (u == s || u == t) continue;
      for (const auto& g : basis(u, t))
        for (const auto& f : basis(s, u)) composites.push_back(compose(g, f));
    }
    return d - complex(s, t).quotient_rank(composites);
  }

 private:
  std::size_t n_;
  std::vector<std::unique_ptr<HomComplex>> complexes_;
  std::vector<std::vector<MfMorphism>> bases_;
};

inline MfMorphism path_morphism(const Path& p, const std::vector<MfMorphism>& arrows) {
  MfMorphism m = arrows.at(p.front());
  for (std::size_t k = 1; k < p.size(); ++k) m = compose(arrows.at(p[k]), m);
  return m;
}

/// (a) arrow multiplicities equal irr, (b) null relations hold, (c) commutativity relations
/// hold up to homotopy, (d) dim kQ/I = sum of degree-zero hom dims, (e) composites along
/// paths span every Hom space.
inline std::vector<CheckResult> verify_quiver(const Collection& c, const QuiverTower& qt, unsigned jobs = 1) {
  const auto& q = qt.top();
  const std::size_t n = c.size();
  if (q.vertices.size() != n) throw ShapeMismatch("quiver and collection have different sizes");
  DegreeZeroHoms homs(object_pointers(c.objects()), jobs);
  const auto arrows = arrow_morphisms(c, qt, c.top());

  CheckResult irr{"arrows = irr"};
  {
    std::vector<std::size_t> values(n * n);
    parallel_for(n * n, jobs, [&](std::size_t k) { values[k] = homs.irr(k / n, k % n); });
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        ++irr.cases;
        const auto want = values[s * n + t];
        const auto got = q.arrow_count(s, t);
        if (want != got)
          irr.counterexamples.push_back({s, t, 0, static_cast<long long>(want), static_cast<long long>(got), "arrow count"});
      }
  }

  CheckResult null_rel{"null relations"}, comm_rel{"commutativity relations"};
  {
    std::vector<int> status(q.relations.size(), 0);  // 0 ok, 1 fails, 2 homotopic only
    parallel_for(q.relations.size(), jobs, [&](std::size_t k) {
      const auto& r = q.relations[k];
      const auto s = path_source(q, r.lhs), t = path_target(q, r.lhs);
      const auto& H = homs.complex(s, t);
      const auto lhs = path_morphism(r.lhs, arrows);
      if (r.kind == Relation::Kind::Null) {
        status[k] = H.is_null_homotopic(lhs) ? 0 : 1;
      } else {
        const auto rhs = path_morphism(r.rhs, arrows);
        status[k] = lhs == rhs ? 0 : H.is_null_homotopic(lhs - rhs) ? 2 : 1;
      }
    });
    for (std::size_t k = 0; k < q.relations.size(); ++k) {
      const auto& r = q.relations[k];
      auto& out = r.kind == Relation::Kind::Null ? null_rel : comm_rel;
      ++out.cases;
      const auto s = path_source(q, r.lhs), t = path_target(q, r.lhs);
      if (status[k] == 1) out.counterexamples.push_back({s, t, 0, 0, 1, r.family + " relation " + std::to_string(k)});
      if (status[k] == 2) out.warnings.push_back(r.family + " relation " + std::to_string(k) + " holds up to homotopy");
    }
  }

  CheckResult dim{"dim kQ/I = dim End(T)"};
  {
    const auto pa = path_algebra_dims(q);
    std::size_t total = 0, paths = 0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        const auto h = homs.dim(s, t);
        total += h;
        paths += pa[s * n + t];
        if (pa[s * n + t] != h)
          dim.counterexamples.push_back({s, t, 0, static_cast<long long>(h), static_cast<long long>(pa[s * n + t]), "paths modulo relations"});
      }
    ++dim.cases;
    if (paths != total) dim.counterexamples.push_back({0, 0, 0, static_cast<long long>(total), static_cast<long long>(paths), "total dimension"});
  }

  CheckResult span{"paths span Hom"};
  {
    const auto paths = enumerate_paths(q);
    std::vector<std::vector<MfMorphism>> by_pair(n * n);
    for (std::size_t k = 0; k < paths.arrows.size(); ++k) {
      if (paths.arrows[k].empty()) continue;
      const auto& p = paths.arrows[k];
      by_pair[path_source(q, p) * n + path_target(q, p)].push_back(path_morphism(p, arrows));
    }
    std::vector<std::size_t> rank(n * n);
    parallel_for(n * n, jobs, [&](std::size_t k) {
      const std::size_t s = k / n, t = k % n;
      rank[k] = s == t ? homs.complex(s, t).quotient_rank({identity_morphism(c.objects()[s].object)})
                       : homs.complex(s, t).quotient_rank(by_pair[k]);
    });
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        ++span.cases;
        const auto d = homs.dim(s, t);
        if (rank[s * n + t] != d)
          span.counterexamples.push_back({s, t, 0, static_cast<long long>(d), static_cast<long long>(rank[s * n + t]), "span of paths"});
      }
  }
  return {irr, null_rel, comm_rel, dim, span};
}

inline std::string export_dot(const Quiver& q) {
  std::ostringstream os;
  os << "digraph Q {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < q.vertices.size(); ++v) os << "  v" << v << " [label=\"" << q.vertices[v] << "\"];\n";
  for (const auto& a : q.arrows) {
    os << "  v" << a.source << " -> v" << a.target << " [label=\"" << to_string(a.kind);
    if (a.kind != ArrowKind::Theta) os << a.index;
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace chainmf
