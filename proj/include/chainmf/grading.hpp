#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chainmf/errors.hpp"
#include "chainmf/smith.hpp"

namespace chainmf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Finitely generated abelian group given by generators and integer relations.
struct GroupPresentation {
  std::size_t generator_count = 1;
  IntMatrix relations;  // rows are relations, columns are generators
};

class GradedGroup;
using GroupPtr = std::shared_ptr<const GradedGroup>;

/// Element of a GradedGroup in canonical coordinates: free part followed by torsion residues.
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupPtr group, std::vector<std::int64_t> coords) : group_(std::move(group)), coords_(std::move(coords)) {}

  const GroupPtr& group() const { return group_; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::vector<std::int64_t> free_part() const;
  std::vector<std::int64_t> torsion_part() const;
  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
  }

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-(const GroupElement& other) const;
  GroupElement operator-() const;
  GroupElement& operator+=(const GroupElement& other) { return *this = *this + other; }
  GroupElement& operator-=(const GroupElement& other) { return *this = *this - other; }
  friend GroupElement operator*(std::int64_t k, const GroupElement& e);

  bool operator==(const GroupElement& other) const;
  bool operator!=(const GroupElement& other) const { return !(*this == other); }
  bool operator<(const GroupElement& other) const { return coords_ < other.coords_; }

 private:
  GroupPtr group_;
  std::vector<std::int64_t> coords_;
};

/// Canonical form of a finitely generated abelian group, computed once through a Smith normal form.
class GradedGroup : public std::enable_shared_from_this<GradedGroup> {
 public:
  /// `weight_unit` is the generator whose free weight is normalised to 1 and whose free
  /// coordinate is made positive. `chain_exponents` tags groups built as maximal gradings.
  static GroupPtr from_presentation(const GroupPresentation& presentation, std::size_t weight_unit,
                                    std::optional<std::vector<int>> chain_exponents = std::nullopt) {
    auto group = std::shared_ptr<GradedGroup>(new GradedGroup());
    group->init(presentation, weight_unit, std::move(chain_exponents));
    return group;
  }

  std::size_t rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion_invariants() const { return torsion_; }
  std::size_t generator_count() const { return presentation_.generator_count; }
  const GroupPresentation& presentation() const { return presentation_; }
  /// Carries generator-coordinate vectors to canonical coordinates (before torsion reduction).
  const IntMatrix& reduction_map() const { return reduction_; }
  const std::optional<std::vector<int>>& chain_exponents() const { return chain_exponents_; }
  std::size_t weight_unit() const { return weight_unit_; }

  GroupElement zero() const { return GroupElement(shared_from_this(), std::vector<std::int64_t>(coord_count(), 0)); }

  GroupElement generator(std::size_t index) const {
    std::vector<std::int64_t> v(generator_count(), 0);
    v.at(index) = 1;
    return from_generator_coords(v);
  }

  GroupElement from_generator_coords(const std::vector<std::int64_t>& v) const {
    if (v.size() != generator_count()) throw ShapeMismatch("generator coordinate vector has wrong length");
    std::vector<std::int64_t> c(coord_count(), 0);
    for (std::size_t i = 0; i < coord_count(); ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < v.size(); ++j)
        acc = detail::checked_add(acc, detail::checked_mul(reduction_(i, j), v[j]));
      c[i] = acc;
    }
    return normalize(std::move(c));
  }

  /// Some generator-coordinate vector representing `e`.
  std::vector<std::int64_t> lift(const GroupElement& e) const {
    check_owner(e);
    std::vector<std::int64_t> out(generator_count(), 0);
    for (std::size_t i = 0; i < coord_count(); ++i)
      for (std::size_t j = 0; j < generator_count(); ++j)
        out[j] = detail::checked_add(out[j], detail::checked_mul(lift_(j, i), e.coords()[i]));
    return out;
  }

  GroupElement normalize(std::vector<std::int64_t> c) const {
    for (std::size_t t = 0; t < torsion_.size(); ++t) {
      auto& x = c[rank_ + t];
      x %= torsion_[t];
      if (x < 0) x += torsion_[t];
    }
    return GroupElement(shared_from_this(), std::move(c));
  }

  std::size_t coord_count() const { return rank_ + torsion_.size(); }

  /// Linear functional to the free quotient with free_weight(weight unit) = 1.
  Rational free_weight(const GroupElement& e) const {
    check_owner(e);
    if (rank_ != 1) throw RankError("free_weight requires a group of rank 1, got rank " + std::to_string(rank_));
    Rational w(static_cast<long>(e.coords()[0]), static_cast<long>(unit_free_));
    w.canonicalize();
    return w;
  }

  bool same_group(const GradedGroup& other) const {
    if (this == &other) return true;
    return presentation_.generator_count == other.presentation_.generator_count &&
           presentation_.relations == other.presentation_.relations && weight_unit_ == other.weight_unit_;
  }

  void check_owner(const GroupElement& e) const {
    if (!e.group() || !same_group(*e.group())) throw GroupMismatch("element belongs to a different group");
  }

 private:
  GradedGroup() = default;

  void init(const GroupPresentation& presentation, std::size_t weight_unit,
            std::optional<std::vector<int>> chain_exponents) {
    if (presentation.generator_count < 1) throw ShapeMismatch("a group presentation needs at least one generator");
    if (presentation.relations.rows() > 0 && presentation.relations.cols() != presentation.generator_count)
      throw ShapeMismatch("relation matrix column count differs from generator count");
    if (weight_unit >= presentation.generator_count) throw IndexOutOfRange("weight unit generator out of range");
    presentation_ = presentation;
    weight_unit_ = weight_unit;
    chain_exponents_ = std::move(chain_exponents);

    const std::size_t g = presentation.generator_count;
    IntMatrix rel = presentation.relations.rows() == 0 ? IntMatrix(0, g) : presentation.relations;
    const auto snf = smith_normal_form(rel);
    std::vector<std::size_t> free_idx, torsion_idx;
    for (std::size_t k = 0; k < g; ++k) {
      const std::int64_t dk = k < std::min(rel.rows(), g) ? snf.d(k, k) : 0;
      if (dk == 0)
        free_idx.push_back(k);
      else if (dk >= 2) {
        torsion_idx.push_back(k);
        torsion_.push_back(dk);
      }
    }
    rank_ = free_idx.size();
    std::vector<std::size_t> order = free_idx;
    order.insert(order.end(), torsion_idx.begin(), torsion_idx.end());
    reduction_ = IntMatrix(order.size(), g);
    lift_ = IntMatrix(g, order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      // Relations span rows of D V^{-1}, so w = v V diagonalises them.
      for (std::size_t j = 0; j < g; ++j) reduction_(i, j) = snf.v(j, order[i]);
      for (std::size_t j = 0; j < g; ++j) lift_(j, i) = snf.v_inverse(order[i], j);
    }
    if (rank_ == 1) {
      unit_free_ = reduction_(0, weight_unit);
      if (unit_free_ < 0) {
        for (std::size_t j = 0; j < g; ++j) reduction_(0, j) = -reduction_(0, j);
        for (std::size_t j = 0; j < g; ++j) lift_(j, 0) = -lift_(j, 0);
        unit_free_ = -unit_free_;
      }
    }
  }

  GroupPresentation presentation_;
  std::size_t weight_unit_ = 0;
  std::optional<std::vector<int>> chain_exponents_;
  std::size_t rank_ = 0;
  std::vector<std::int64_t> torsion_;
  IntMatrix reduction_;
  IntMatrix lift_;
  std::int64_t unit_free_ = 0;
};

inline std::vector<std::int64_t> GroupElement::free_part() const {
  return {coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(group_->rank())};
}

inline std::vector<std::int64_t> GroupElement::torsion_part() const {
  return {coords_.begin() + static_cast<std::ptrdiff_t>(group_->rank()), coords_.end()};
}

inline GroupElement GroupElement::operator+(const GroupElement& other) const {
  group_->check_owner(other);
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::checked_add(coords_[i], other.coords_[i]);
  return group_->normalize(std::move(c));
}

inline GroupElement GroupElement::operator-() const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return group_->normalize(std::move(c));
}

inline GroupElement GroupElement::operator-(const GroupElement& other) const { return *this + (-other); }

inline GroupElement operator*(std::int64_t k, const GroupElement& e) {
  std::vector<std::int64_t> c(e.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::checked_mul(k, e.coords_[i]);
  return e.group_->normalize(std::move(c));
}

inline bool GroupElement::operator==(const GroupElement& other) const {
  if (!group_ || !other.group_) return !group_ && !other.group_;
  return group_->same_group(*other.group_) && coords_ == other.coords_;
}

inline std::ostream& operator<<(std::ostream& os, const GroupElement& e) {
  os << "(";
  for (std::size_t i = 0; i < e.coords().size(); ++i) os << (i ? "," : "") << e.coords()[i];
  return os << ")";
}

/// The maximal grading group of the chain polynomial with the given exponents, together with
/// the degrees of x_1..x_n and of the polynomial itself.
struct MaximalGrading {
  GroupPtr group;
  std::vector<GroupElement> variable_degrees;
  GroupElement potential_degree;
};

inline void check_chain_exponents(const std::vector<int>& exponents) {
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] < 1)
      throw NonPositiveExponent("exponent a_" + std::to_string(i + 1) + " = " + std::to_string(exponents[i]) +
                                " is not positive");
  if (!exponents.empty() && exponents[0] < 2) throw NonPositiveExponent("the first exponent must be at least 2");
}

/// Generators x_1..x_n, f (in that order) subject to f = a_1 x_1 and f = x_{i-1} + a_i x_i.
inline GroupPresentation maximal_grading_presentation(const std::vector<int>& exponents) {
  const std::size_t n = exponents.size();
  GroupPresentation p;
  p.generator_count = n + 1;
  p.relations = IntMatrix(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    p.relations(i, n) = 1;
    p.relations(i, i) = -exponents[i];
    if (i > 0) p.relations(i, i - 1) = -1;
  }
  return p;
}

inline MaximalGrading build_maximal_grading(const std::vector<int>& exponents) {
  check_chain_exponents(exponents);
  const std::size_t n = exponents.size();
  auto group = GradedGroup::from_presentation(maximal_grading_presentation(exponents), n, exponents);
  MaximalGrading out{group, {}, group->generator(n)};
  for (std::size_t i = 0; i < n; ++i) out.variable_degrees.push_back(group->generator(i));
  for (std::size_t i = 0; i < n; ++i)
    if (group->free_weight(out.variable_degrees[i]) <= 0)
      throw NonPositiveWeight("variable x_" + std::to_string(i + 1) + " has non-positive weight");
  return out;
}

/// Inclusion of maximal gradings induced by extending the exponent vector: x_i -> x_i, f -> f.
inline GroupElement embed(const GroupElement& e, const GroupPtr& target) {
  const auto& source = e.group();
  if (!source || !source->chain_exponents() || !target->chain_exponents())
    throw GroupMismatch("embed is defined between maximal gradings only");
  const auto& a = *source->chain_exponents();
  const auto& b = *target->chain_exponents();
  if (b.size() < a.size() || !std::equal(a.begin(), a.end(), b.begin()))
    throw GroupMismatch("target exponents do not extend the source exponents");
  const auto v = source->lift(e);
  std::vector<std::int64_t> w(b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = v[i];
  w[b.size()] = v[a.size()];
  return target->from_generator_coords(w);
}

inline Rational free_weight(const GroupElement& e) { return e.group()->free_weight(e); }

}  // namespace chainmf

template <>
struct std::hash<chainmf::GroupElement> {
  std::size_t operator()(const chainmf::GroupElement& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto c : e.coords()) h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
