#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "chainmf.hpp"

namespace chainmf::testing {

// Dense rank over Q by Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational k = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Rational dense_det(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational k = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= k * m[c][j];
    }
  }
  return det;
}

// Monomials of total degree <= bound whose degree is d; independent of the ring's own enumeration.
inline std::vector<Monomial> naive_monomials(const GradedRing& R, const GroupElement& d, int bound) {
  std::vector<Monomial> out;
  const std::size_t n = R.variables();
  Monomial e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      if (R.degree_of(e) == d) out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, bound);
  return out;
}

// Total degree bound large enough for every entry of a map between the two modules.
inline int degree_bound(const GradedRing& R, const MatrixFactorization& S, const MatrixFactorization& T) {
  Rational top = 0, lo = -1;
  for (std::size_t i = 0; i < R.variables(); ++i)
    if (lo < 0 || R.weight(i) < lo) lo = R.weight(i);
  auto scan = [&](const FreeModule& a, const FreeModule& b) {
    for (const auto& x : a.twists)
      for (const auto& y : b.twists) {
        const Rational w = R.group()->free_weight(x - y);
        if (w > top) top = w;
      }
  };
  scan(T.m1(), S.m1());
  scan(T.m0(), S.m0());
  if (lo <= 0) return 0;
  const Rational q = top / lo;
  return static_cast<int>(mpz_class(q.get_num() / q.get_den()).get_si()) + 1;
}

/// dim Hom(S, T) in the homotopy category, by dense linear algebra over explicit monomial
/// unknowns: chain maps (a1, a0) modulo maps of the form (h0 phi1 + phi0 h1, phi1 h0 + h1 phi0).
inline std::size_t naive_hom(const MatrixFactorization& S, const MatrixFactorization& T) {
  const auto& R = *S.ring();
  const auto f = R.potential_degree();
  const int D = degree_bound(R, S, T);
  struct Unknown {
    int block;
    std::size_t r, c;
    Monomial m;
  };
  std::vector<Unknown> unk;
  for (std::size_t r = 0; r < T.rank1(); ++r)
    for (std::size_t c = 0; c < S.rank1(); ++c)
      for (auto& m : naive_monomials(R, T.m1().twists[r] - S.m1().twists[c], D)) unk.push_back({0, r, c, m});
  for (std::size_t r = 0; r < T.rank0(); ++r)
    for (std::size_t c = 0; c < S.rank0(); ++c)
      for (auto& m : naive_monomials(R, T.m0().twists[r] - S.m0().twists[c], D)) unk.push_back({1, r, c, m});
  if (unk.empty()) return 0;

  using Key = std::tuple<int, std::size_t, std::size_t, Monomial>;
  std::map<Key, std::size_t> rows;
  std::vector<std::map<std::size_t, Rational>> cols(unk.size());
  auto mul = [](const Monomial& a, const Monomial& b) {
    Monomial p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + b[i];
    return p;
  };
  auto add = [&](std::size_t u, int eq, std::size_t r, std::size_t c, const Monomial& m, const Polynomial& p, int sign) {
    for (const auto& [mm, co] : p.terms()) {
      auto it = rows.emplace(Key{eq, r, c, mul(m, mm)}, rows.size()).first;
      cols[u][it->second] += sign > 0 ? co : Rational(-co);
    }
  };
  // a0 phi1_S = phi1_T a1 and a1 phi0_S = phi0_T a0
  for (std::size_t u = 0; u < unk.size(); ++u) {
    const auto& x = unk[u];
    if (x.block == 0) {
      for (std::size_t r2 = 0; r2 < T.rank0(); ++r2) add(u, 0, r2, x.c, x.m, T.phi1()(r2, x.r), -1);
      for (std::size_t c2 = 0; c2 < S.rank0(); ++c2) add(u, 1, x.r, c2, x.m, S.phi0()(x.c, c2), 1);
    } else {
      for (std::size_t c2 = 0; c2 < S.rank1(); ++c2) add(u, 0, x.r, c2, x.m, S.phi1()(x.c, c2), 1);
      for (std::size_t r2 = 0; r2 < T.rank1(); ++r2) add(u, 1, r2, x.c, x.m, T.phi0()(r2, x.r), -1);
    }
  }
  std::vector<std::vector<Rational>> eqs(rows.size(), std::vector<Rational>(unk.size()));
  for (std::size_t u = 0; u < unk.size(); ++u)
    for (const auto& [r, v] : cols[u]) eqs[r][u] = v;
  const std::size_t chain = unk.size() - dense_rank(eqs);

  std::map<Key, std::size_t> index;
  for (std::size_t u = 0; u < unk.size(); ++u) index[{unk[u].block, unk[u].r, unk[u].c, unk[u].m}] = u;
  std::vector<std::vector<Rational>> H;
  auto hadd = [&](std::vector<Rational>& v, int block, std::size_t r, std::size_t c, const Monomial& m, const Polynomial& p) {
    for (const auto& [mm, co] : p.terms()) {
      auto it = index.find({block, r, c, mul(m, mm)});
      if (it == index.end()) throw std::logic_error("naive_hom: degree bound too small");
      v[it->second] += co;
    }
  };
  for (std::size_t r = 0; r < T.rank1(); ++r)
    for (std::size_t c = 0; c < S.rank0(); ++c)
      for (auto& m : naive_monomials(R, T.m1().twists[r] - S.m0().twists[c], D)) {
        std::vector<Rational> v(unk.size());
        for (std::size_t c2 = 0; c2 < S.rank1(); ++c2) hadd(v, 0, r, c2, m, S.phi1()(c, c2));
        for (std::size_t r2 = 0; r2 < T.rank0(); ++r2) hadd(v, 1, r2, c, m, T.phi1()(r2, r));
        H.push_back(std::move(v));
      }
  for (std::size_t r = 0; r < T.rank0(); ++r)
    for (std::size_t c = 0; c < S.rank1(); ++c)
      for (auto& m : naive_monomials(R, T.m0().twists[r] - S.m1().twists[c] - f, D)) {
        std::vector<Rational> v(unk.size());
        for (std::size_t r2 = 0; r2 < T.rank1(); ++r2) hadd(v, 0, r2, c, m, T.phi0()(r2, r));
        for (std::size_t c2 = 0; c2 < S.rank0(); ++c2) hadd(v, 1, r, c2, m, S.phi0()(c, c2));
        H.push_back(std::move(v));
      }
  return chain - dense_rank(H);
}

inline const std::vector<std::vector<int>>& small_vectors() {
  static const std::vector<std::vector<int>> v{{2}, {3}, {4}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 2, 2}};
  return v;
}

/// Cached collections keyed by exponents.
inline const Collection& cached_collection(const std::vector<int>& a) {
  static std::map<std::vector<int>, std::unique_ptr<Collection>> cache;
  auto& slot = cache[a];
  if (!slot) slot = std::make_unique<Collection>(build_collection(a));
  return *slot;
}

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  const Collection& collection() {
    const auto& v = small_vectors();
    return cached_collection(v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))]);
  }

  const MatrixFactorization& object(const Collection& c) {
    return c[static_cast<std::size_t>(uniform(0, static_cast<int>(c.size()) - 1))];
  }

  GroupElement degree(const GradedRing& R, int spread = 2) {
    GroupElement g = R.zero();
    for (const auto& d : R.variable_degrees()) g += static_cast<std::int64_t>(uniform(-spread, spread)) * d;
    return g;
  }

  /// Exceptional object moved by a random shift and twist.
  MatrixFactorization moved(const Collection& c) {
    const auto& F = object(c);
    return shift(twist(F, degree(*F.ring(), 1)), uniform(-2, 2));
  }

  /// Random element of Hom(E, F) in degree zero as a chain map (possibly zero).
  MfMorphism morphism(const MatrixFactorization& E, const MatrixFactorization& F) {
    HomComplex H(make_mf(E), make_mf(F));
    auto basis = H.chain_basis();
    MfMorphism m = zero_morphism(H.source_ptr(), H.target_ptr());
    for (const auto& b : basis) m = m + b * Rational(uniform(-3, 3));
    return m;
  }
};

/// Outcome of one randomized property run.
struct PropertyRun {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && cases > 0; }
};

inline std::string describe(const Collection& c) {
  std::string s = "a=(";
  for (std::size_t i = 0; i < c.exponents().size(); ++i) s += (i ? "," : "") + std::to_string(c.exponents()[i]);
  return s + ")";
}

inline PropertyRun property_validate(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"validate on every object"};
  Sampler S(seed);
  for (const auto& a : small_vectors()) {
    const auto& c = cached_collection(a);
    for (std::size_t m = 0; m <= c.top(); ++m)
      for (const auto& o : c.level(m)) {
        ++r.cases;
        if (!is_valid(*o.object)) r.failures.push_back(describe(c) + " " + o.label);
      }
  }
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    auto E = S.moved(c), F = S.moved(c);
    auto G = direct_sum(E, F);
    auto C = cone(S.morphism(E, F));
    for (const auto* X : {&E, &G, &C}) {
      ++r.cases;
      if (!is_valid(*X)) r.failures.push_back(describe(c) + " derived object " + std::to_string(k));
    }
  }
  return r;
}

inline PropertyRun property_shift_twist(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"shift and twist invariance"};
  Sampler S(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    const auto& E = S.object(c);
    const auto& F = S.object(c);
    const int l = S.uniform(-1, 2), j = S.uniform(-3, 3);
    const auto g = S.degree(*E.ring());
    const auto base = hom_dim(E, F, l);
    ++r.cases;
    if (hom_dim(shift(E, j), shift(F, j), l) != base || hom_dim(twist(E, g), twist(F, g), l) != base ||
        hom_dim(E, shift(F, j), l - j) != base)
      r.failures.push_back(describe(c) + " case " + std::to_string(k));
  }
  return r;
}

inline PropertyRun property_periodicity(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"2-periodicity"};
  Sampler S(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    const auto F = S.moved(c);
    const auto& E = S.object(c);
    const auto& f = F.potential_degree();
    const int l = S.uniform(-2, 2);
    ++r.cases;
    if (shift(F, 2) != twist(F, f) || shift(shift(F, 1), -1) != F ||
        hom_dim(E, F, l + 2) != hom_dim(E, twist(F, f), l))
      r.failures.push_back(describe(c) + " case " + std::to_string(k));
  }
  return r;
}

inline PropertyRun property_additivity(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"direct-sum bi-additivity"};
  Sampler S(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    const auto A = S.moved(c), B = S.moved(c), F = S.moved(c);
    const int l = S.uniform(-1, 1);
    ++r.cases;
    const auto AB = direct_sum(A, B);
    if (hom_dim(AB, F, l) != hom_dim(A, F, l) + hom_dim(B, F, l) ||
        hom_dim(F, AB, l) != hom_dim(F, A, l) + hom_dim(F, B, l))
      r.failures.push_back(describe(c) + " case " + std::to_string(k));
  }
  return r;
}

inline PropertyRun property_cone_identity(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"cone(id) contractible"};
  Sampler S(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    auto F = make_mf(S.moved(c));
    auto C = make_mf(cone(identity_morphism(F)));
    ++r.cases;
    if (!is_valid(*C) || hom_dim(*C, *C, 0) != 0 || hom_dim(*C, *C, 1) != 0 || !is_null_homotopic(identity_morphism(C)))
      r.failures.push_back(describe(c) + " case " + std::to_string(k));
  }
  return r;
}

inline PropertyRun property_tensor_unit(std::uint64_t seed, std::size_t cases) {
  PropertyRun r{"tensor with unit"};
  Sampler S(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& c = S.collection();
    const auto F = S.moved(c);
    const auto U = tensor_unit(F.ring());
    ++r.cases;
    const auto left = tensor(F, U), right = tensor(U, F);
    if (left != F || right != F || !is_valid(left)) r.failures.push_back(describe(c) + " case " + std::to_string(k));
  }
  return r;
}

using PropertyFn = PropertyRun (*)(std::uint64_t, std::size_t);

inline const std::vector<PropertyFn>& property_functions() {
  static const std::vector<PropertyFn> fns{property_validate,    property_shift_twist,   property_periodicity,
                                           property_additivity,  property_cone_identity, property_tensor_unit};
  return fns;
}

inline std::vector<PropertyRun> engine_properties(std::uint64_t seed, std::size_t cases) {
  std::vector<PropertyRun> out;
  for (std::size_t k = 0; k < property_functions().size(); ++k) out.push_back(property_functions()[k](seed + k, cases));
  return out;
}

}  // namespace chainmf::testing
