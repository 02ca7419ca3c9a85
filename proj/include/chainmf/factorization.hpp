#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "chainmf/errors.hpp"
#include "chainmf/matrix.hpp"
#include "chainmf/polynomial.hpp"

namespace chainmf {

/// Graded free module: the direct sum of S(t) over its twists t.
struct FreeModule {
  std::vector<GroupElement> twists;

  std::size_t rank() const { return twists.size(); }
  FreeModule twisted(const GroupElement& l) const {
    FreeModule out = *this;
    for (auto& t : out.twists) t += l;
    return out;
  }
  FreeModule operator+(const FreeModule& o) const {
    FreeModule out = *this;
    out.twists.insert(out.twists.end(), o.twists.begin(), o.twists.end());
    return out;
  }
  bool operator==(const FreeModule& o) const { return twists == o.twists; }
};

/// Twists t_i + u_j with the first module indexing the outer position.
inline FreeModule tensor_modules(const FreeModule& a, const FreeModule& b) {
  FreeModule out;
  for (const auto& t : a.twists)
    for (const auto& u : b.twists) out.twists.push_back(t + u);
  return out;
}

struct ValidationIssue {
  std::string kind;  // ShapeMismatch, HomogeneityMismatch, SquareMismatch, PotentialMismatch
  std::string where;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string message;
};

/// F1 --phi1--> F0 --phi0--> F1(f), with phi0 phi1 = f and phi1 phi0 = f.
/// Entry (r, c) of a matrix between graded free modules has degree (row twist) - (column twist).
class MatrixFactorization {
 public:
  MatrixFactorization() = default;
  MatrixFactorization(RingPtr ring, Polynomial potential, FreeModule m1, FreeModule m0, PolyMatrix phi1,
                      PolyMatrix phi0)
      : ring_(std::move(ring)),
        potential_(std::move(potential)),
        m1_(std::move(m1)),
        m0_(std::move(m0)),
        phi1_(std::move(phi1)),
        phi0_(std::move(phi0)) {
    if (phi1_.rows() != m0_.rank() || phi1_.cols() != m1_.rank() || phi0_.rows() != m1_.rank() ||
        phi0_.cols() != m0_.rank())
      throw ShapeMismatch("factorization matrices do not match module ranks");
  }

  /// The zero object.
  static MatrixFactorization zero(RingPtr ring, Polynomial potential) {
    const auto v = ring->variables();
    return MatrixFactorization(std::move(ring), std::move(potential), {}, {}, PolyMatrix(0, 0, v), PolyMatrix(0, 0, v));
  }

  const RingPtr& ring() const { return ring_; }
  const Polynomial& potential() const { return potential_; }
  const FreeModule& m1() const { return m1_; }
  const FreeModule& m0() const { return m0_; }
  const PolyMatrix& phi1() const { return phi1_; }
  const PolyMatrix& phi0() const { return phi0_; }
  std::size_t rank1() const { return m1_.rank(); }
  std::size_t rank0() const { return m0_.rank(); }
  bool is_zero_object() const { return m1_.rank() == 0 && m0_.rank() == 0; }
  const GroupElement& potential_degree() const { return ring_->potential_degree(); }

  bool operator==(const MatrixFactorization& o) const {
    return ring_->same_ring(*o.ring_) && potential_ == o.potential_ && m1_ == o.m1_ && m0_ == o.m0_ &&
           phi1_ == o.phi1_ && phi0_ == o.phi0_;
  }
  bool operator!=(const MatrixFactorization& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  Polynomial potential_;
  FreeModule m1_, m0_;
  PolyMatrix phi1_, phi0_;
};

namespace detail {

inline void check_homogeneous_matrix(const GradedRing& ring, const PolyMatrix& m, const FreeModule& target,
                                     const GroupElement& target_shift, const FreeModule& source,
                                     const std::string& name, std::vector<ValidationIssue>& out) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& p = m(r, c);
      if (p.is_zero()) continue;
      const GroupElement want = target.twists[r] + target_shift - source.twists[c];
      auto d = ring.is_homogeneous(p);
      if (!d || *d != want) {
        std::ostringstream os;
        os << name << "(" << r << "," << c << ") = " << p.to_string() << " is not homogeneous of degree " << want;
        out.push_back({"HomogeneityMismatch", name, r, c, os.str()});
      }
    }
}

inline void check_scalar_identity(const PolyMatrix& m, const Polynomial& f, const std::string& name,
                                  std::vector<ValidationIssue>& out) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& want = r == c ? f : Polynomial(f.variables());
      if (m(r, c) != want) {
        std::ostringstream os;
        os << name << "(" << r << "," << c << ") = " << m(r, c).to_string() << ", expected " << want.to_string();
        out.push_back({"SquareMismatch", name, r, c, os.str()});
      }
    }
}

}  // namespace detail

/// Every violated homogeneity or square-to-f condition; empty when F is a valid factorization.
inline std::vector<ValidationIssue> validate(const MatrixFactorization& F) {
  std::vector<ValidationIssue> out;
  const auto& ring = *F.ring();
  auto fd = ring.is_homogeneous(F.potential(), ring.potential_degree());
  if (!fd || *fd != ring.potential_degree())
    out.push_back({"PotentialMismatch", "potential", 0, 0, "potential is not homogeneous of degree f"});
  const auto zero = ring.zero();
  detail::check_homogeneous_matrix(ring, F.phi1(), F.m0(), zero, F.m1(), "phi1", out);
  detail::check_homogeneous_matrix(ring, F.phi0(), F.m1(), ring.potential_degree(), F.m0(), "phi0", out);
  detail::check_scalar_identity(F.phi0() * F.phi1(), F.potential(), "phi0*phi1", out);
  detail::check_scalar_identity(F.phi1() * F.phi0(), F.potential(), "phi1*phi0", out);
  return out;
}

inline bool is_valid(const MatrixFactorization& F) { return validate(F).empty(); }

inline MatrixFactorization twist(const MatrixFactorization& F, const GroupElement& l) {
  return MatrixFactorization(F.ring(), F.potential(), F.m1().twisted(l), F.m0().twisted(l), F.phi1(), F.phi0());
}

/// T^k(F), where T(F) = (F0 --(-phi0)--> F1(f) --(-phi1)--> F0(f)).
inline MatrixFactorization shift(const MatrixFactorization& F, int k) {
  MatrixFactorization out = F;
  const auto& f = F.potential_degree();
  for (; k > 0; --k)
    out = MatrixFactorization(out.ring(), out.potential(), out.m0(), out.m1().twisted(f), -out.phi0(), -out.phi1());
  for (; k < 0; ++k)
    out = MatrixFactorization(out.ring(), out.potential(), out.m0().twisted(-f), out.m1(), -out.phi0(), -out.phi1());
  return out;
}

inline void check_same_potential(const MatrixFactorization& E, const MatrixFactorization& F) {
  if (!E.ring()->same_ring(*F.ring())) throw GroupMismatch("factorizations live over different graded rings");
  if (E.potential() != F.potential()) throw PotentialMismatch("factorizations have different potentials");
}

inline MatrixFactorization direct_sum(const MatrixFactorization& E, const MatrixFactorization& F) {
  check_same_potential(E, F);
  const auto v = E.ring()->variables();
  auto z = [v](std::size_t r, std::size_t c) { return PolyMatrix(r, c, v); };
  return MatrixFactorization(E.ring(), E.potential(), E.m1() + F.m1(), E.m0() + F.m0(),
                             PolyMatrix::blocks(E.phi1(), z(E.rank0(), F.rank1()), z(F.rank0(), E.rank1()), F.phi1()),
                             PolyMatrix::blocks(E.phi0(), z(E.rank1(), F.rank0()), z(F.rank1(), E.rank0()), F.phi0()));
}

/// Factorization of f + g built from E (of f) and F (of g); both potentials must have degree f.
/// (E x F)_1 = F0 x E1 + F1 x E0 and (E x F)_0 = F0 x E0 + F1 x E1(f).
inline MatrixFactorization tensor(const MatrixFactorization& E, const MatrixFactorization& F) {
  if (!E.ring()->same_ring(*F.ring())) throw GroupMismatch("factorizations live over different graded rings");
  const auto& ring = *E.ring();
  for (const auto* p : {&E.potential(), &F.potential()}) {
    auto d = ring.is_homogeneous(*p, ring.potential_degree());
    if (!d || *d != ring.potential_degree()) throw DegreeMismatch("potential is not homogeneous of degree f");
  }
  const auto v = ring.variables();
  const auto& f = ring.potential_degree();
  auto id = [v](std::size_t n) { return PolyMatrix::identity(n, v); };
  using M = PolyMatrix;
  FreeModule m1 = tensor_modules(F.m0(), E.m1()) + tensor_modules(F.m1(), E.m0());
  FreeModule m0 = tensor_modules(F.m0(), E.m0()) + tensor_modules(F.m1(), E.m1().twisted(f));
  M phi1 = M::blocks(M::kron(id(F.rank0()), E.phi1()), M::kron(F.phi1(), id(E.rank0())),
                     -M::kron(F.phi0(), id(E.rank1())), M::kron(id(F.rank1()), E.phi0()));
  M phi0 = M::blocks(M::kron(id(F.rank0()), E.phi0()), -M::kron(F.phi1(), id(E.rank1())),
                     M::kron(F.phi0(), id(E.rank0())), M::kron(id(F.rank1()), E.phi1()));
  return MatrixFactorization(E.ring(), E.potential() + F.potential(), m1, m0, phi1, phi0);
}

/// Unit for the tensor product: 0 -> S -> 0 with potential 0.
inline MatrixFactorization tensor_unit(const RingPtr& ring) {
  const auto v = ring->variables();
  return MatrixFactorization(ring, Polynomial(v), {}, FreeModule{{ring->zero()}}, PolyMatrix(1, 0, v),
                             PolyMatrix(0, 1, v));
}

using MfPtr = std::shared_ptr<const MatrixFactorization>;

inline MfPtr make_mf(MatrixFactorization F) { return std::make_shared<const MatrixFactorization>(std::move(F)); }

/// Degree-zero morphism (alpha1 : E1 -> F1, alpha0 : E0 -> F0).
class MfMorphism {
 public:
  MfMorphism() = default;
  MfMorphism(MfPtr source, MfPtr target, PolyMatrix alpha1, PolyMatrix alpha0)
      : source_(std::move(source)), target_(std::move(target)), alpha1_(std::move(alpha1)), alpha0_(std::move(alpha0)) {
    if (alpha1_.rows() != target_->rank1() || alpha1_.cols() != source_->rank1() ||
        alpha0_.rows() != target_->rank0() || alpha0_.cols() != source_->rank0())
      throw ShapeMismatch("morphism matrices do not match module ranks");
  }

  const MatrixFactorization& source() const { return *source_; }
  const MatrixFactorization& target() const { return *target_; }
  const MfPtr& source_ptr() const { return source_; }
  const MfPtr& target_ptr() const { return target_; }
  const PolyMatrix& alpha1() const { return alpha1_; }
  const PolyMatrix& alpha0() const { return alpha0_; }

  bool is_zero() const { return alpha1_.is_zero() && alpha0_.is_zero(); }

  MfMorphism operator+(const MfMorphism& o) const {
    check_parallel(o);
    return MfMorphism(source_, target_, alpha1_ + o.alpha1_, alpha0_ + o.alpha0_);
  }
  MfMorphism operator-(const MfMorphism& o) const {
    check_parallel(o);
    return MfMorphism(source_, target_, alpha1_ - o.alpha1_, alpha0_ - o.alpha0_);
  }
  MfMorphism operator*(const Rational& s) const {
    const auto p = Polynomial::constant(alpha1_.variables(), s);
    return MfMorphism(source_, target_, alpha1_ * p, alpha0_ * p);
  }
  bool operator==(const MfMorphism& o) const {
    return *source_ == *o.source_ && *target_ == *o.target_ && alpha1_ == o.alpha1_ && alpha0_ == o.alpha0_;
  }

 private:
  void check_parallel(const MfMorphism& o) const {
    if (*source_ != *o.source_ || *target_ != *o.target_) throw ShapeMismatch("morphisms are not parallel");
  }

  MfPtr source_, target_;
  PolyMatrix alpha1_, alpha0_;
};

inline MfMorphism identity_morphism(const MfPtr& F) {
  const auto v = F->ring()->variables();
  return MfMorphism(F, F, PolyMatrix::identity(F->rank1(), v), PolyMatrix::identity(F->rank0(), v));
}

inline MfMorphism zero_morphism(const MfPtr& E, const MfPtr& F) {
  const auto v = E->ring()->variables();
  return MfMorphism(E, F, PolyMatrix(F->rank1(), E->rank1(), v), PolyMatrix(F->rank0(), E->rank0(), v));
}

/// g after f.
inline MfMorphism compose(const MfMorphism& g, const MfMorphism& f) {
  if (f.target() != g.source()) throw ShapeMismatch("morphisms are not composable");
  return MfMorphism(f.source_ptr(), g.target_ptr(), g.alpha1() * f.alpha1(), g.alpha0() * f.alpha0());
}

/// Issues with the morphism conditions: entry degrees and both commuting squares.
inline std::vector<ValidationIssue> validate(const MfMorphism& m) {
  std::vector<ValidationIssue> out;
  const auto& E = m.source();
  const auto& F = m.target();
  const auto& ring = *E.ring();
  const auto zero = ring.zero();
  detail::check_homogeneous_matrix(ring, m.alpha1(), F.m1(), zero, E.m1(), "alpha1", out);
  detail::check_homogeneous_matrix(ring, m.alpha0(), F.m0(), zero, E.m0(), "alpha0", out);
  auto compare = [&](const PolyMatrix& a, const PolyMatrix& b, const std::string& name) {
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (a(r, c) != b(r, c)) out.push_back({"CommutationMismatch", name, r, c, name + " fails at entry"});
  };
  compare(m.alpha0() * E.phi1(), F.phi1() * m.alpha1(), "alpha0*phi1 = phi1*alpha1");
  compare(m.alpha1() * E.phi0(), F.phi0() * m.alpha0(), "alpha1*phi0 = phi0*alpha0");
  return out;
}

inline bool is_valid(const MfMorphism& m) { return validate(m).empty(); }

/// T^k applied to a morphism: T(alpha1, alpha0) = (alpha0, alpha1).
inline MfMorphism shift(const MfMorphism& m, int k) {
  auto s = make_mf(shift(m.source(), k));
  auto t = make_mf(shift(m.target(), k));
  const bool odd = (k % 2) != 0;
  return MfMorphism(s, t, odd ? m.alpha0() : m.alpha1(), odd ? m.alpha1() : m.alpha0());
}

inline MfMorphism twist(const MfMorphism& m, const GroupElement& l) {
  return MfMorphism(make_mf(twist(m.source(), l)), make_mf(twist(m.target(), l)), m.alpha1(), m.alpha0());
}

/// Mapping cone of m : E -> F, with modules (F1 + E0, F0 + E1(f)).
inline MatrixFactorization cone(const MfMorphism& m) {
  const auto& E = m.source();
  const auto& F = m.target();
  check_same_potential(E, F);
  const auto v = E.ring()->variables();
  const auto& f = E.potential_degree();
  using M = PolyMatrix;
  return MatrixFactorization(E.ring(), E.potential(), F.m1() + E.m0(), F.m0() + E.m1().twisted(f),
                             M::blocks(F.phi1(), m.alpha0(), M(E.rank1(), F.rank1(), v), -E.phi0()),
                             M::blocks(F.phi0(), m.alpha1(), M(E.rank0(), F.rank0(), v), -E.phi1()));
}

}  // namespace chainmf
