#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chainmf/factorization.hpp"
#include "chainmf/sparse.hpp"

namespace chainmf {

/// Coordinates for a list of homogeneous polynomial matrices: entry (r, c) of block b is expanded
/// in the graded component of its prescribed degree, in graded lexicographic order.
class CoefficientLayout {
 public:
  struct Block {
    std::size_t rows = 0, cols = 0;
    std::vector<std::size_t> offsets;  // per entry, row-major; offsets.back() is the block end
    std::vector<std::vector<Monomial>> bases;
    std::vector<std::map<Monomial, std::size_t, GradedLex>> positions;
  };

  CoefficientLayout() = default;
  explicit CoefficientLayout(RingPtr ring) : ring_(std::move(ring)) {}

  /// Adds a block whose (r, c) entry has degree target[r] + shift - source[c].
  void add_block(const FreeModule& target, const FreeModule& source, const GroupElement& shift) {
    Block b;
    b.rows = target.rank();
    b.cols = source.rank();
    for (std::size_t r = 0; r < b.rows; ++r)
      for (std::size_t c = 0; c < b.cols; ++c) {
        b.offsets.push_back(size_);
        auto basis = ring_->graded_component_basis(target.twists[r] + shift - source.twists[c]);
        std::map<Monomial, std::size_t, GradedLex> pos;
        for (std::size_t k = 0; k < basis.size(); ++k) pos.emplace(basis[k], k);
        size_ += basis.size();
        b.bases.push_back(std::move(basis));
        b.positions.push_back(std::move(pos));
      }
    b.offsets.push_back(size_);
    blocks_.push_back(std::move(b));
  }

  std::size_t size() const { return size_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const RingPtr& ring() const { return ring_; }

  /// Position of monomial `m` in entry (r, c) of block `b`.
  std::size_t index(std::size_t b, std::size_t r, std::size_t c, const Monomial& m) const {
    const auto& blk = blocks_.at(b);
    const std::size_t e = r * blk.cols + c;
    auto it = blk.positions.at(e).find(m);
    if (it == blk.positions[e].end())
      throw DegreeMismatch("monomial outside the prescribed graded component of block entry");
    return blk.offsets[e] + it->second;
  }

  /// Adds s * m * p to entry (r, c) of block b.
  void accumulate(SparseRationalVector& acc, std::size_t b, std::size_t r, std::size_t c, const Monomial& m,
                  const Polynomial& p, int s) const {
    Monomial prod(m.size());
    for (const auto& [mono, coef] : p.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) prod[i] = m[i] + mono[i];
      acc.emplace_back(index(b, r, c, prod), s > 0 ? coef : Rational(-coef));
    }
  }

  /// Integer coordinates of the given matrices, one per block.
  SparseRationalVector rational_coordinates(const std::vector<const PolyMatrix*>& mats) const {
    if (mats.size() != blocks_.size()) throw ShapeMismatch("wrong number of matrices for layout");
    SparseRationalVector acc;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& blk = blocks_[b];
      if (mats[b]->rows() != blk.rows || mats[b]->cols() != blk.cols) throw ShapeMismatch("matrix shape differs from layout");
      for (std::size_t r = 0; r < blk.rows; ++r)
        for (std::size_t c = 0; c < blk.cols; ++c)
          for (const auto& [m, coef] : (*mats[b])(r, c).terms()) acc.emplace_back(index(b, r, c, m), coef);
    }
    return normalize(std::move(acc));
  }

  std::vector<PolyMatrix> matrices(const SparseVector& v) const {
    std::vector<PolyMatrix> out;
    const auto vars = ring_->variables();
    for (const auto& blk : blocks_) out.emplace_back(blk.rows, blk.cols, vars);
    for (const auto& [i, c] : v) {
      for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& blk = blocks_[b];
        if (i >= blk.offsets.back()) continue;
        const auto e = static_cast<std::size_t>(std::upper_bound(blk.offsets.begin(), blk.offsets.end(), i) -
                                                blk.offsets.begin()) - 1;
        out[b](e / blk.cols, e % blk.cols).add_term(blk.bases[e][i - blk.offsets[e]], Rational(c));
        break;
      }
    }
    return out;
  }

  /// Sorts by index and merges duplicates.
  static SparseRationalVector normalize(SparseRationalVector acc) {
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRationalVector out;
    for (auto& [i, c] : acc) {
      if (!out.empty() && out.back().first == i)
        out.back().second += c;
      else
        out.emplace_back(i, std::move(c));
      if (out.back().second == 0) out.pop_back();
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<Block> blocks_;
  std::size_t size_ = 0;
};

/// The Hom complex from E to F[l] in degree zero: chain maps, the null-homotopic subspace and
/// the quotient. Everything is computed once, on construction.
class HomComplex {
 public:
  HomComplex(MfPtr E, const MatrixFactorization& F, int l = 0) : HomComplex(std::move(E), make_mf(shift(F, l))) {}

  HomComplex(MfPtr E, MfPtr G) : source_(std::move(E)), target_(std::move(G)) {
    check_same_potential(*source_, *target_);
    const auto& ring = source_->ring();
    const auto zero = ring->zero();
    const auto& f = ring->potential_degree();
    const auto& S = *source_;
    const auto& T = *target_;

    morph_ = CoefficientLayout(ring);
    morph_.add_block(T.m1(), S.m1(), zero);
    morph_.add_block(T.m0(), S.m0(), zero);
    homotopy_ = CoefficientLayout(ring);
    homotopy_.add_block(T.m1(), S.m0(), zero);
    homotopy_.add_block(T.m0(), S.m1(), -f);
    equations_ = CoefficientLayout(ring);
    equations_.add_block(T.m0(), S.m1(), zero);  // alpha0 phi1 - phi1 alpha1
    equations_.add_block(T.m1(), S.m0(), f);     // alpha1 phi0 - phi0 alpha0

    build_chain_equations();
    build_homotopy_image();
  }

  const MatrixFactorization& source() const { return *source_; }
  const MatrixFactorization& target() const { return *target_; }
  const MfPtr& source_ptr() const { return source_; }
  const MfPtr& target_ptr() const { return target_; }
  const CoefficientLayout& layout() const { return morph_; }

  std::size_t unknowns() const { return morph_.size(); }
  std::size_t chain_dim() const { return unknowns() - equation_rank_; }
  std::size_t null_homotopic_dim() const { return homotopy_image_.rank(); }
  std::size_t dim() const { return chain_dim() - null_homotopic_dim(); }
  const EchelonBasis& homotopy_image() const { return homotopy_image_; }

  /// Basis of all chain maps E -> G.
  std::vector<MfMorphism> chain_basis() const {
    std::vector<MfMorphism> out;
    for (const auto& v : kernel_basis(equation_columns_)) out.push_back(morphism(v));
    return out;
  }

  /// Representatives of a basis of the quotient by null-homotopic maps: chain basis vectors
  /// taken in order whenever they are independent of the homotopy image and earlier picks.
  std::vector<MfMorphism> basis() const {
    std::vector<MfMorphism> out;
    EchelonBasis span = homotopy_image_;
    for (const auto& v : kernel_basis(equation_columns_))
      if (span.insert(v)) out.push_back(morphism(v));
    return out;
  }

  SparseVector coordinates(const MfMorphism& m) const {
    if (m.source() != *source_ || m.target() != *target_)
      throw ShapeMismatch("morphism endpoints differ from the Hom complex");
    return to_integer_vector(morph_.rational_coordinates({&m.alpha1(), &m.alpha0()}));
  }

  MfMorphism morphism(const SparseVector& v) const {
    auto mats = morph_.matrices(v);
    return MfMorphism(source_, target_, mats[0], mats[1]);
  }

  bool is_null_homotopic(const MfMorphism& m) const { return homotopy_image_.contains(coordinates(m)); }

  /// Rank of the span of the given chain maps modulo null-homotopic ones.
  std::size_t quotient_rank(const std::vector<MfMorphism>& maps) const {
    EchelonBasis span = homotopy_image_;
    for (const auto& m : maps) span.insert(coordinates(m));
    return span.rank() - homotopy_image_.rank();
  }

 private:
  void build_chain_equations() {
    const auto& S = *source_;
    const auto& T = *target_;
    EchelonBasis rank;
    for (std::size_t b = 0; b < 2; ++b) {
      const auto& blk = morph_.blocks()[b];
      for (std::size_t r = 0; r < blk.rows; ++r)
        for (std::size_t c = 0; c < blk.cols; ++c)
          for (const auto& m : blk.bases[r * blk.cols + c]) {
            SparseRationalVector acc;
            if (b == 0) {
              // alpha1(r, c): -phi1^T(r', r) m at eq1(r', c); m phi0^S(c, c') at eq2(r, c')
              for (std::size_t r2 = 0; r2 < T.rank0(); ++r2) equations_.accumulate(acc, 0, r2, c, m, T.phi1()(r2, r), -1);
              for (std::size_t c2 = 0; c2 < S.rank0(); ++c2) equations_.accumulate(acc, 1, r, c2, m, S.phi0()(c, c2), 1);
            } else {
              // alpha0(r, c): m phi1^S(c, c') at eq1(r, c'); -phi0^T(r', r) m at eq2(r', c)
              for (std::size_t c2 = 0; c2 < S.rank1(); ++c2) equations_.accumulate(acc, 0, r, c2, m, S.phi1()(c, c2), 1);
              for (std::size_t r2 = 0; r2 < T.rank1(); ++r2) equations_.accumulate(acc, 1, r2, c, m, T.phi0()(r2, r), -1);
            }
            auto col = CoefficientLayout::normalize(std::move(acc));
            rank.insert(to_integer_vector(col));
            equation_columns_.push_back(std::move(col));
          }
    }
    equation_rank_ = rank.rank();
  }

  void build_homotopy_image() {
    const auto& S = *source_;
    const auto& T = *target_;
    for (std::size_t b = 0; b < 2; ++b) {
      const auto& blk = homotopy_.blocks()[b];
      for (std::size_t r = 0; r < blk.rows; ++r)
        for (std::size_t c = 0; c < blk.cols; ++c)
          for (const auto& m : blk.bases[r * blk.cols + c]) {
            SparseRationalVector acc;
            if (b == 0) {
              // h0(r, c) : S0 -> T1.  alpha1 += h0 phi1^S, alpha0 += phi1^T h0
              for (std::size_t c2 = 0; c2 < S.rank1(); ++c2) morph_.accumulate(acc, 0, r, c2, m, S.phi1()(c, c2), 1);
              for (std::size_t r2 = 0; r2 < T.rank0(); ++r2) morph_.accumulate(acc, 1, r2, c, m, T.phi1()(r2, r), 1);
            } else {
              // h1(r, c) : S1(f) -> T0.  alpha1 += phi0^T h1, alpha0 += h1 phi0^S
              for (std::size_t r2 = 0; r2 < T.rank1(); ++r2) morph_.accumulate(acc, 0, r2, c, m, T.phi0()(r2, r), 1);
              for (std::size_t c2 = 0; c2 < S.rank0(); ++c2) morph_.accumulate(acc, 1, r, c2, m, S.phi0()(c, c2), 1);
            }
            homotopy_image_.insert(to_integer_vector(CoefficientLayout::normalize(std::move(acc))));
          }
    }
  }

  MfPtr source_, target_;
  CoefficientLayout morph_, homotopy_, equations_;
  std::vector<SparseRationalVector> equation_columns_;
  std::size_t equation_rank_ = 0;
  EchelonBasis homotopy_image_;
};

/// Hom(E, F[l]) in the homotopy category, with representatives.
struct HomSpace {
  MfPtr source, target;
  int shift = 0;
  std::vector<MfMorphism> basis;
  std::size_t chain_dim = 0;
  std::size_t null_homotopic_dim = 0;
  std::size_t dim = 0;
};

inline std::size_t hom_dim(const MatrixFactorization& E, const MatrixFactorization& F, int l) {
  return HomComplex(make_mf(E), F, l).dim();
}

inline HomSpace hom_basis(const MatrixFactorization& E, const MatrixFactorization& F, int l) {
  HomComplex H(make_mf(E), F, l);
  return {H.source_ptr(), H.target_ptr(), l, H.basis(), H.chain_dim(), H.null_homotopic_dim(), H.dim()};
}

inline std::vector<MfMorphism> chain_map_space(const MatrixFactorization& E, const MatrixFactorization& F) {
  return HomComplex(make_mf(E), make_mf(F)).chain_basis();
}

/// Spanning set of the null-homotopic chain maps E -> F, with its dimension.
struct NullHomotopicSubspace {
  std::size_t dim = 0;
  std::vector<MfMorphism> spanning_set;
};

inline NullHomotopicSubspace null_homotopic_subspace(const MatrixFactorization& E, const MatrixFactorization& F) {
  HomComplex H(make_mf(E), make_mf(F));
  NullHomotopicSubspace out{H.null_homotopic_dim(), {}};
  for (const auto& [p, row] : H.homotopy_image().rows()) out.spanning_set.push_back(H.morphism(row));
  return out;
}

inline bool is_null_homotopic(const MfMorphism& m) {
  return HomComplex(m.source_ptr(), m.target_ptr()).is_null_homotopic(m);
}

inline bool homotopy_equal(const MfMorphism& a, const MfMorphism& b) { return is_null_homotopic(a - b); }

inline MatrixFactorization serre_twist(const MatrixFactorization& F) {
  const auto& ring = *F.ring();
  GroupElement x = ring.zero();
  for (const auto& d : ring.variable_degrees()) x += d;
  return shift(twist(F, -x), static_cast<int>(ring.variables()));
}

namespace detail {

inline std::optional<std::pair<Rational, Rational>> weight_range(const FreeModule& m) {
  if (m.rank() == 0) return std::nullopt;
  Rational lo = free_weight(m.twists[0]), hi = lo;
  for (const auto& t : m.twists) {
    const Rational w = free_weight(t);
    if (w < lo) lo = w;
    if (w > hi) hi = w;
  }
  return std::make_pair(lo, hi);
}

// Smallest l such that some entry of a map E -> F[l] has a graded component of
// non-negative weight; every component is empty below it.
inline std::optional<int> lowest_shift(const MatrixFactorization& E, const MatrixFactorization& F) {
  auto e1 = weight_range(E.m1()), e0 = weight_range(E.m0());
  auto f1 = weight_range(F.m1()), f0 = weight_range(F.m0());
  if ((!e1 || !f1) && (!e0 || !f0) && (!e1 || !f0) && (!e0 || !f1)) return std::nullopt;
  Rational emin = 0, fmax = 0;
  bool first = true;
  for (const auto& r : {e1, e0})
    if (r && (first || r->first < emin)) emin = r->first, first = false;
  first = true;
  for (const auto& r : {f1, f0})
    if (r && (first || r->second > fmax)) fmax = r->second, first = false;
  const Rational gap = emin - fmax;
  mpz_class k = gap.get_num() / gap.get_den();
  int l = 2 * static_cast<int>(k.get_si()) - 6;
  auto has_entry = [](const std::optional<std::pair<Rational, Rational>>& target,
                      const std::optional<std::pair<Rational, Rational>>& source, const Rational& add) {
    return target && source && target->second + add - source->first >= 0;
  };
  for (;; ++l) {
    const int k2 = l >= 0 ? l / 2 : -((-l + 1) / 2);  // floor(l / 2)
    const Rational base(k2);
    bool hit;
    if (l - 2 * k2 == 0)
      hit = has_entry(f1, e1, base) || has_entry(f0, e0, base);
    else
      hit = has_entry(f0, e1, base) || has_entry(f1, e0, base + 1);
    if (hit) return l;
  }
}

}  // namespace detail

/// Range of shifts l outside of which Hom(E, F[l]) vanishes. The lower end is where the entry
/// components of chain maps become non-empty; the upper end comes from the dual pair, since
/// Hom(E, F[l]) is dual to Hom(F, serre_twist(E)[-l]). Returns (0, -1) when the range is empty.
inline std::pair<int, int> shift_window(const MatrixFactorization& E, const MatrixFactorization& F) {
  auto lo = detail::lowest_shift(E, F);
  auto dual = detail::lowest_shift(F, serre_twist(E));
  if (!lo || !dual) return {0, -1};
  const int hi = -*dual;
  if (*lo > hi) return {0, -1};
  return {*lo, hi};
}

/// Whether m : E -> F has an inverse up to homotopy.
inline bool is_homotopy_iso(const MfMorphism& m) {
  HomComplex back(m.target_ptr(), m.source_ptr());
  HomComplex endE(m.source_ptr(), m.source_ptr());
  HomComplex endF(m.target_ptr(), m.target_ptr());
  const std::size_t offset = endE.unknowns();
  auto join = [offset](const SparseVector& a, const SparseVector& b) {
    SparseVector out = a;
    for (const auto& [i, c] : b) out.emplace_back(i + offset, c);
    return out;
  };
  EchelonBasis span;
  for (const auto& k : back.chain_basis()) span.insert(join(endE.coordinates(compose(k, m)), endF.coordinates(compose(m, k))));
  for (const auto& [p, row] : endE.homotopy_image().rows()) span.insert(row);
  for (const auto& [p, row] : endF.homotopy_image().rows()) span.insert(join({}, row));
  return span.contains(join(endE.coordinates(identity_morphism(m.source_ptr())),
                            endF.coordinates(identity_morphism(m.target_ptr()))));
}

/// Whether m has a two-sided inverse with homogeneous polynomial entries (an isomorphism of
/// factorizations, not only up to homotopy).
inline bool has_strict_inverse(const MfMorphism& m) {
  const auto& E = m.source();
  const auto& F = m.target();
  if (E.rank1() != F.rank1() || E.rank0() != F.rank0()) return false;
  const auto& ring = E.ring();
  const auto zero = ring->zero();
  CoefficientLayout beta(ring);
  beta.add_block(E.m1(), F.m1(), zero);
  beta.add_block(E.m0(), F.m0(), zero);
  // equations: alpha beta - I on F, beta alpha - I on E, for both components
  CoefficientLayout eq(ring);
  eq.add_block(F.m1(), F.m1(), zero);
  eq.add_block(E.m1(), E.m1(), zero);
  eq.add_block(F.m0(), F.m0(), zero);
  eq.add_block(E.m0(), E.m0(), zero);
  const PolyMatrix* alpha[2] = {&m.alpha1(), &m.alpha0()};
  EchelonBasis span;
  for (std::size_t b = 0; b < 2; ++b) {
    const auto& blk = beta.blocks()[b];
    const auto& a = *alpha[b];
    for (std::size_t r = 0; r < blk.rows; ++r)
      for (std::size_t c = 0; c < blk.cols; ++c)
        for (const auto& mono : blk.bases[r * blk.cols + c]) {
          SparseRationalVector acc;
          // (alpha beta)(r', c) += alpha(r', r) mono ; (beta alpha)(r, c') += mono alpha(c, c')
          for (std::size_t r2 = 0; r2 < a.rows(); ++r2) eq.accumulate(acc, 2 * b, r2, c, mono, a(r2, r), 1);
          for (std::size_t c2 = 0; c2 < a.cols(); ++c2) eq.accumulate(acc, 2 * b + 1, r, c2, mono, a(c, c2), 1);
          span.insert(to_integer_vector(CoefficientLayout::normalize(std::move(acc))));
        }
  }
  const auto v = ring->variables();
  const auto I1F = PolyMatrix::identity(F.rank1(), v), I1E = PolyMatrix::identity(E.rank1(), v);
  const auto I0F = PolyMatrix::identity(F.rank0(), v), I0E = PolyMatrix::identity(E.rank0(), v);
  auto target = to_integer_vector(eq.rational_coordinates({&I1F, &I1E, &I0F, &I0E}));
  return span.contains(target);
}

}  // namespace chainmf
