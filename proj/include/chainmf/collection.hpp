#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "chainmf/factorization.hpp"
#include "chainmf/hom.hpp"

namespace chainmf {

/// Graded rings S^0 ⊂ S^1 ⊂ ... ⊂ S^n for the prefixes of a chain exponent vector, together
/// with the functors psi : C_m -> C_{m+1} and phi : C_m -> C_{m+2} between their factorization
/// categories. Level m of an object is the number of variables of its ring.
class ChainTower {
 public:
  explicit ChainTower(std::vector<int> exponents) : a_(std::move(exponents)) {
    check_chain_exponents(a_);
    for (std::size_t m = 0; m <= a_.size(); ++m) {
      std::vector<int> prefix(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(m));
      rings_.push_back(GradedRing::chain(prefix));
      potentials_.push_back(chain_polynomial(prefix));
    }
  }

  const std::vector<int>& exponents() const { return a_; }
  std::size_t top() const { return a_.size(); }
  const RingPtr& ring(std::size_t m) const { return rings_.at(m); }
  const Polynomial& potential(std::size_t m) const { return potentials_.at(m); }
  /// a_m for 1 <= m <= n.
  int exponent(std::size_t m) const { return a_.at(m - 1); }

  std::size_t level(const MatrixFactorization& F) const {
    const std::size_t m = F.ring()->variables();
    if (m > top() || !F.ring()->same_ring(*rings_[m])) throw GroupMismatch("object does not belong to this tower");
    return m;
  }

  GroupElement variable_degree(std::size_t m, std::size_t i) const { return rings_.at(m)->variable_degree(i - 1); }

  /// E^0 = (0 -> k -> 0) over S^0.
  MatrixFactorization base_object() const {
    return MatrixFactorization(rings_[0], potentials_[0], {}, FreeModule{{rings_[0]->zero()}}, PolyMatrix(1, 0, 0),
                               PolyMatrix(0, 1, 0));
  }

  FreeModule extend(const FreeModule& M, std::size_t m) const {
    FreeModule out;
    for (const auto& t : M.twists) out.twists.push_back(embed(t, rings_.at(m)->group()));
    return out;
  }

  MatrixFactorization psi(const MatrixFactorization& F) const {
    const std::size_t m = level(F);
    require(m + 1);
    const std::size_t v = m + 1;
    const Polynomial y = rings_[v]->variable(m);
    const Polynomial xy = x_of(m, v) * y.pow(exponent(m + 1) - 1);
    return block_object(F, v, y, xy);
  }

  MatrixFactorization phi(const MatrixFactorization& F) const {
    const std::size_t m = level(F);
    require(m + 2);
    const std::size_t v = m + 2;
    const Polynomial y = rings_[v]->variable(m);
    const Polynomial z = rings_[v]->variable(m + 1);
    const Polynomial g = x_of(m, v) * y.pow(exponent(m + 1) - 1) + z.pow(exponent(m + 2));
    return block_object(F, v, y, g);
  }

  /// psi F (-i y)[i] for any i >= 0, without the range check of psi_i.
  MatrixFactorization psi_twisted(const MatrixFactorization& F, int i) const {
    const std::size_t m = level(F);
    auto P = psi(F);
    return shift(twist(P, -i * variable_degree(m + 1, m + 1)), i);
  }

  MatrixFactorization psi_i(const MatrixFactorization& F, int i) const {
    const std::size_t m = level(F);
    require(m + 1);
    if (i < 0 || i > exponent(m + 1) - 2)
      throw IndexOutOfRange("psi_" + std::to_string(i) + " needs 0 <= i <= " + std::to_string(exponent(m + 1) - 2));
    return psi_twisted(F, i);
  }

  MatrixFactorization phi_j(const MatrixFactorization& F, int j) const {
    const std::size_t m = level(F);
    require(m + 2);
    const int b = exponent(m + 1), c = exponent(m + 2);
    if (j < 0 || j > b - 1)
      throw IndexOutOfRange("phi_" + std::to_string(j) + " needs 0 <= j <= " + std::to_string(b - 1));
    return shift(twist(phi(F), phi_twist(m, j)), c + j - 1);
  }

  MfMorphism psi(const MfMorphism& a) const {
    const std::size_t m = level(a.source());
    return block_morphism(a, make_mf(psi(a.source())), make_mf(psi(a.target())), m + 1);
  }
  MfMorphism phi(const MfMorphism& a) const {
    const std::size_t m = level(a.source());
    return block_morphism(a, make_mf(phi(a.source())), make_mf(phi(a.target())), m + 2);
  }
  MfMorphism psi_i(const MfMorphism& a, int i) const {
    const std::size_t m = level(a.source());
    psi_i(a.source(), i);  // range check
    return shift(twist(psi(a), -i * variable_degree(m + 1, m + 1)), i);
  }
  MfMorphism phi_j(const MfMorphism& a, int j) const {
    const std::size_t m = level(a.source());
    phi_j(a.source(), j);  // range check
    return shift(twist(phi(a), phi_twist(m, j)), exponent(m + 2) + j - 1);
  }

  /// lambda_i^E : psi_i E -> psi_{i+1} E for E at level m, 0 <= i <= a_{m+1} - 3.
  MfMorphism lambda(const MatrixFactorization& E, int i) const {
    const std::size_t m = level(E);
    require(m + 1);
    const int b = exponent(m + 1);
    if (i < 0 || i > b - 3) throw IndexOutOfRange("lambda_" + std::to_string(i) + " needs 0 <= i <= " + std::to_string(b - 3));
    const std::size_t v = m + 1;
    const auto nv = rings_[v]->variables();
    const std::size_t r1 = E.rank1(), r0 = E.rank0();
    const Polynomial xy = x_of(m, v) * rings_[v]->variable(m, b - 2);
    using M = PolyMatrix;
    M l1 = M::blocks(M(r0, r1, nv), M::identity(r0, nv), M::scalar(r1, xy), M(r1, r0, nv));
    M l0 = M::blocks(M(r1, r0, nv), -M::identity(r1, nv), M::scalar(r0, -xy), M(r0, r1, nv));
    MfMorphism l(make_mf(psi(E)), make_mf(psi_twisted(E, 1)), l1, l0);
    return retarget(shift(twist(l, -i * variable_degree(v, v)), i), psi_i(E, i), psi_i(E, i + 1));
  }

  /// sigma_j^F : psi_{c-2} psi_j F -> phi_j F for F at level m, 0 <= j <= a_{m+1} - 2.
  MfMorphism sigma(const MatrixFactorization& F, int j) const {
    const std::size_t m = level(F);
    require(m + 2);
    const int b = exponent(m + 1), c = exponent(m + 2);
    if (c < 2) throw IndexOutOfRange("sigma needs a_{m+2} >= 2");
    if (j < 0 || j > b - 2) throw IndexOutOfRange("sigma_" + std::to_string(j) + " needs 0 <= j <= " + std::to_string(b - 2));
    const std::size_t v = m + 2;
    const auto nv = rings_[v]->variables();
    const std::size_t r1 = F.rank1(), r0 = F.rank0();
    const Polynomial zc = rings_[v]->variable(m + 1, c - 1);
    auto P = psi(psi(F));
    auto T = shift(twist(phi(F), -variable_degree(v, v)), 1);
    // rows: F0(-z), F1(f-y-z); columns: F1, F0(-y), F0(-z), F1(f-y-z)
    PolyMatrix s1(r0 + r1, r1 + r0 + r0 + r1, nv);
    s1.paste(0, r1 + r0, PolyMatrix::identity(r0, nv));
    s1.paste(r0, 0, PolyMatrix::scalar(r1, zc));
    s1.paste(r0, r1 + r0 + r0, PolyMatrix::identity(r1, nv));
    // rows: F1(f-z), F0(f-y-z); columns: F0, F1(f-y), F1(f-z), F0(f-y-z)
    PolyMatrix s0(r1 + r0, r0 + r1 + r1 + r0, nv);
    s0.paste(0, r0 + r1, PolyMatrix::identity(r1, nv));
    s0.paste(r1, 0, PolyMatrix::scalar(r0, zc));
    s0.paste(r1, r0 + r1 + r1, PolyMatrix::identity(r0, nv));
    // The displayed pair anticommutes with the differentials; negating the second
    // component gives a morphism.
    MfMorphism s(make_mf(P), make_mf(T), s1, -s0);
    const GroupElement tw = -(c - 2) * variable_degree(v, v) - j * variable_degree(v, v - 1);
    return retarget(shift(twist(s, tw), c + j - 2), psi_i(psi_i(F, j), c - 2), phi_j(F, j));
  }

  /// theta^F : psi_{c-2} psi_{b-2} F -> phi_{b-1} F for F at level m.
  MfMorphism theta(const MatrixFactorization& F) const {
    const std::size_t m = level(F);
    require(m + 2);
    const int b = exponent(m + 1), c = exponent(m + 2);
    if (b < 2 || c < 2) throw IndexOutOfRange("theta needs a_{m+1} >= 2 and a_{m+2} >= 2");
    const std::size_t v = m + 2;
    const auto nv = rings_[v]->variables();
    const std::size_t r1 = F.rank1(), r0 = F.rank0();
    const Polynomial zc = rings_[v]->variable(m + 1, c - 1);
    const Polynomial xy = x_of(m, v) * rings_[v]->variable(m, b - 2);
    auto P = psi(psi(F));
    auto T = shift(twist(phi(F), -variable_degree(v, v) - variable_degree(v, v - 1)), 2);
    // rows: F1(f-y-z), F0(f-2y-z); columns: F1, F0(-y), F0(-z), F1(f-y-z)
    PolyMatrix t1(r1 + r0, r1 + r0 + r0 + r1, nv);
    t1.paste(0, r1 + r0 + r0, PolyMatrix::identity(r1, nv));
    t1.paste(r1, r1, PolyMatrix::scalar(r0, -zc));
    t1.paste(r1, r1 + r0, PolyMatrix::scalar(r0, xy));
    // rows: F0(f-y-z), F1(2f-2y-z); columns: F0, F1(f-y), F1(f-z), F0(f-y-z)
    PolyMatrix t0(r0 + r1, r0 + r1 + r1 + r0, nv);
    t0.paste(0, r0 + r1 + r1, PolyMatrix::identity(r0, nv));
    t0.paste(r0, r0, PolyMatrix::scalar(r1, -zc));
    t0.paste(r0, r0 + r1, PolyMatrix::scalar(r1, xy));
    MfMorphism t(make_mf(P), make_mf(T), t1, t0);
    const GroupElement tw = -(b - 2) * variable_degree(v, v - 1) - (c - 2) * variable_degree(v, v);
    return retarget(shift(twist(t, tw), b + c - 4), psi_i(psi_i(F, b - 2), c - 2), phi_j(F, b - 1));
  }

  /// The morphism z : phi F(-z) -> phi F and the explicit alpha : psi^2 F -> Cone(z).
  struct TriangleData {
    MfMorphism z_map;
    MfMorphism alpha;
  };

  TriangleData triangle(const MatrixFactorization& F) const {
    const std::size_t m = level(F);
    require(m + 2);
    const std::size_t v = m + 2;
    const auto nv = rings_[v]->variables();
    const int c = exponent(m + 2);
    const std::size_t r1 = F.rank1(), r0 = F.rank0();
    const Polynomial z = rings_[v]->variable(m + 1);
    const Polynomial zc = rings_[v]->variable(m + 1, c - 1);
    auto Phi = make_mf(phi(F));
    auto PhiZ = make_mf(twist(*Phi, -variable_degree(v, v)));
    MfMorphism zm(PhiZ, Phi, PolyMatrix::scalar(Phi->rank1(), z), PolyMatrix::scalar(Phi->rank0(), z));
    auto C = make_mf(cone(zm));
    auto P = make_mf(psi(psi(F)));
    const std::size_t n1 = r1 + r0 + r0 + r1, n0 = r0 + r1 + r1 + r0;
    PolyMatrix a1 = PolyMatrix::identity(n1, nv);
    a1.paste(r1 + r0 + r0, 0, PolyMatrix::scalar(r1, zc));
    PolyMatrix a0 = PolyMatrix::identity(n0, nv);
    a0.paste(r0 + r1, r0 + r1, -PolyMatrix::identity(r1, nv));
    a0.paste(r0 + r1 + r1, r0 + r1 + r1, -PolyMatrix::identity(r0, nv));
    a0.paste(r0 + r1 + r1, 0, PolyMatrix::scalar(r0, -zc));
    return {zm, MfMorphism(P, C, a1, a0)};
  }

 private:
  void require(std::size_t m) const {
    if (m > top()) throw IndexOutOfRange("level " + std::to_string(m) + " exceeds the number of exponents");
  }

  // x_m in S^v, or 1 when m = 0.
  Polynomial x_of(std::size_t m, std::size_t v) const {
    return m == 0 ? rings_[v]->constant(1) : rings_[v]->variable(m - 1);
  }

  GroupElement phi_twist(std::size_t m, int j) const {
    const std::size_t v = m + 2;
    const int c = exponent(m + 2);
    return -j * variable_degree(v, m + 1) + (1 - c) * variable_degree(v, m + 2);
  }

  // (F1 + F0(-y) -> F0 + F1(f-y)) with blocks [[phi1, y], [-g, phi0]] and [[phi0, -y], [g, phi1]].
  MatrixFactorization block_object(const MatrixFactorization& F, std::size_t v, const Polynomial& y,
                                   const Polynomial& g) const {
    const auto nv = rings_[v]->variables();
    const auto& f = rings_[v]->potential_degree();
    const GroupElement ydeg = rings_[v]->variable_degree(F.ring()->variables());
    const FreeModule F1 = extend(F.m1(), v), F0 = extend(F.m0(), v);
    const PolyMatrix p1 = F.phi1().extend(nv), p0 = F.phi0().extend(nv);
    const std::size_t r1 = F.rank1(), r0 = F.rank0();
    using M = PolyMatrix;
    return MatrixFactorization(rings_[v], potentials_[v], F1 + F0.twisted(-ydeg), F0 + F1.twisted(f - ydeg),
                               M::blocks(p1, M::scalar(r0, y), M::scalar(r1, -g), p0),
                               M::blocks(p0, M::scalar(r1, -y), M::scalar(r0, g), p1));
  }

  MfMorphism block_morphism(const MfMorphism& a, MfPtr s, MfPtr t, std::size_t v) const {
    const auto nv = rings_[v]->variables();
    const PolyMatrix a1 = a.alpha1().extend(nv), a0 = a.alpha0().extend(nv);
    using M = PolyMatrix;
    return MfMorphism(std::move(s), std::move(t),
                      M::blocks(a1, M(a1.rows(), a0.cols(), nv), M(a0.rows(), a1.cols(), nv), a0),
                      M::blocks(a0, M(a0.rows(), a1.cols(), nv), M(a1.rows(), a0.cols(), nv), a1));
  }

  static MfMorphism retarget(const MfMorphism& m, const MatrixFactorization& s, const MatrixFactorization& t) {
    if (m.source() != s || m.target() != t) throw ShapeMismatch("canonical morphism endpoints differ from collection objects");
    return m;
  }

  std::vector<int> a_;
  std::vector<RingPtr> rings_;
  std::vector<Polynomial> potentials_;
};

/// E^0, psi E^0 and phi E^0 for exponents (a_1, a_2).
struct BaseObjects {
  MatrixFactorization e0, psi_e0, phi_e0;
};

inline BaseObjects base_objects(int a1, int a2) {
  ChainTower t({a1, a2});
  auto e0 = t.base_object();
  auto p = t.psi(e0);
  auto q = t.phi(e0);
  return {e0, p, q};
}

/// Where an object of E^m comes from: psi_index applied to an object of E^{m-1}, or
/// phi_index applied to one of E^{m-2}.
struct Origin {
  enum class Kind { Base, Psi, Phi } kind = Kind::Base;
  int index = 0;
  std::size_t parent = 0;
};

struct ExceptionalObject {
  std::string label;
  MfPtr object;
  Origin origin;
};

/// E^0, E^1, ..., E^n built by the recursion, every level kept.
class Collection {
 public:
  explicit Collection(std::shared_ptr<const ChainTower> tower) : tower_(std::move(tower)) {
    const std::size_t n = tower_->top();
    levels_.resize(n + 1);
    levels_[0].push_back({"E0", make_mf(tower_->base_object()), {}});
    for (std::size_t m = 1; m <= n; ++m) {
      auto& cur = levels_[m];
      for (int i = 0; i <= tower_->exponent(m) - 2; ++i)
        for (std::size_t p = 0; p < levels_[m - 1].size(); ++p) {
          const auto& E = levels_[m - 1][p];
          cur.push_back({"psi" + std::to_string(i) + " " + E.label, make_mf(tower_->psi_i(*E.object, i)),
                         {Origin::Kind::Psi, i, p}});
        }
      if (m >= 2)
        for (int j = 0; j <= tower_->exponent(m - 1) - 1; ++j)
          for (std::size_t p = 0; p < levels_[m - 2].size(); ++p) {
            const auto& F = levels_[m - 2][p];
            cur.push_back({"phi" + std::to_string(j) + " " + F.label, make_mf(tower_->phi_j(*F.object, j)),
                           {Origin::Kind::Phi, j, p}});
          }
    }
  }

  const ChainTower& tower() const { return *tower_; }
  const std::shared_ptr<const ChainTower>& tower_ptr() const { return tower_; }
  const std::vector<int>& exponents() const { return tower_->exponents(); }
  std::size_t top() const { return tower_->top(); }
  const std::vector<ExceptionalObject>& level(std::size_t m) const { return levels_.at(m); }
  const std::vector<ExceptionalObject>& objects() const { return levels_.back(); }
  std::size_t size() const { return objects().size(); }
  const MatrixFactorization& operator[](std::size_t s) const { return *objects().at(s).object; }

 private:
  std::shared_ptr<const ChainTower> tower_;
  std::vector<std::vector<ExceptionalObject>> levels_;
};

inline Collection build_collection(const std::vector<int>& exponents) {
  return Collection(std::make_shared<const ChainTower>(exponents));
}

/// mu_{-1} = 0, mu_0 = 1, mu_m = (a_m - 1) mu_{m-1} + a_{m-1} mu_{m-2}.
inline Integer milnor_number(const std::vector<int>& exponents) {
  check_chain_exponents(exponents);
  Integer prev = 0, cur = 1;
  for (std::size_t m = 1; m <= exponents.size(); ++m) {
    Integer next = (exponents[m - 1] - 1) * cur + (m >= 2 ? exponents[m - 2] : 0) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Weights of the transpose x_1^{a_1} x_2 + ... + x_{n-1}^{a_{n-1}} x_n + x_n^{a_n}.
inline std::vector<Rational> transpose_weights(const std::vector<int>& exponents) {
  check_chain_exponents(exponents);
  const std::size_t n = exponents.size();
  std::vector<Rational> q(n);
  if (n == 0) return q;
  if (exponents.back() < 2) throw ExponentTooSmall("the weight formula needs a_n >= 2");
  q[n - 1] = Rational(1, exponents[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) q[i] = (1 - q[i + 1]) / exponents[i];
  return q;
}

/// prod (1/q_i - 1) over the weights of the transpose polynomial.
inline Integer milnor_by_weights(const std::vector<int>& exponents) {
  Rational mu = 1;
  for (const auto& q : transpose_weights(exponents)) mu *= 1 / q - 1;
  if (mu.get_den() != 1) throw Error("weight product is not an integer");
  return mu.get_num();
}

}  // namespace chainmf
