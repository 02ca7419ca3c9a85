#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "chainmf/errors.hpp"
#include "chainmf/grading.hpp"

namespace chainmf {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Graded lexicographic order: total degree first, then lexicographic on exponents.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse polynomial with rational coefficients in a fixed number of variables.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : vars_(variables) {}

  static Polynomial constant(std::size_t variables, const Rational& c) {
    Polynomial p(variables);
    if (c != 0) p.terms_[Monomial(variables, 0)] = c;
    return p;
  }
  static Polynomial monomial(const Monomial& m, const Rational& c = 1) {
    Polynomial p(m.size());
    if (c != 0) p.terms_[m] = c;
    return p;
  }
  static Polynomial variable(std::size_t variables, std::size_t index, int power = 1) {
    Monomial m(variables, 0);
    m.at(index) = power;
    return monomial(m);
  }

  std::size_t variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != vars_) throw ShapeMismatch("monomial has wrong number of variables");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    check(o);
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }
  Polynomial operator-(const Polynomial& o) const {
    check(o);
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
  }
  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  Polynomial operator*(const Polynomial& o) const {
    check(o);
    Polynomial out(vars_);
    Monomial prod(vars_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        for (std::size_t i = 0; i < vars_; ++i) prod[i] = m1[i] + m2[i];
        out.add_term(prod, c1 * c2);
      }
    return out;
  }
  Polynomial operator*(const Rational& s) const {
    if (s == 0) return Polynomial(vars_);
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c *= s;
    return out;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial pow(int k) const {
    Polynomial out = constant(vars_, 1);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Set variable `index` to zero.
  Polynomial substitute_zero(std::size_t index) const {
    Polynomial out(vars_);
    for (const auto& [m, c] : terms_)
      if (m.at(index) == 0) out.terms_.emplace(m, c);
    return out;
  }

  /// The same polynomial viewed in `variables` >= variables() variables (new ones appended).
  Polynomial extend(std::size_t variables) const {
    if (variables < vars_) throw ShapeMismatch("cannot shrink the variable set");
    Polynomial out(variables);
    for (const auto& [m, c] : terms_) {
      Monomial e = m;
      e.resize(variables, 0);
      out.terms_.emplace(std::move(e), c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      const bool unit = total_degree(m) > 0 && abs(c) == 1;
      if (c < 0)
        os << (first ? "-" : " - ");
      else if (!first)
        os << " + ";
      if (!unit || total_degree(m) == 0) os << Rational(abs(c)).get_str();
      bool star = !unit && total_degree(m) > 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        os << (star ? "*" : "") << "x" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
        star = true;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void check(const Polynomial& o) const {
    if (o.vars_ != vars_) throw ShapeMismatch("polynomials live in different variable sets");
  }

  std::size_t vars_ = 0;
  Terms terms_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

/// Polynomial ring k[x_1..x_n] graded by an abelian group of rank 1 with positive variable weights.
class GradedRing {
 public:
  static RingPtr create(std::vector<GroupElement> variable_degrees, GroupElement potential_degree,
                        std::optional<std::vector<int>> exponents = std::nullopt) {
    auto ring = std::shared_ptr<GradedRing>(new GradedRing());
    ring->group_ = potential_degree.group();
    ring->degrees_ = std::move(variable_degrees);
    ring->f_ = std::move(potential_degree);
    ring->exponents_ = std::move(exponents);
    for (std::size_t i = 0; i < ring->degrees_.size(); ++i) {
      ring->group_->check_owner(ring->degrees_[i]);
      Rational w = ring->group_->free_weight(ring->degrees_[i]);
      if (w <= 0) throw NonPositiveWeight("variable x_" + std::to_string(i + 1) + " has non-positive weight");
      ring->weights_.push_back(w);
    }
    return ring;
  }

  /// The ring S^n graded by the maximal grading of the chain polynomial with these exponents.
  static RingPtr chain(const std::vector<int>& exponents) {
    auto g = build_maximal_grading(exponents);
    return create(std::move(g.variable_degrees), std::move(g.potential_degree), exponents);
  }

  const GroupPtr& group() const { return group_; }
  std::size_t variables() const { return degrees_.size(); }
  const GroupElement& variable_degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<GroupElement>& variable_degrees() const { return degrees_; }
  const GroupElement& potential_degree() const { return f_; }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  const std::optional<std::vector<int>>& exponents() const { return exponents_; }
  GroupElement zero() const { return group_->zero(); }

  bool same_ring(const GradedRing& o) const {
    if (this == &o) return true;
    return group_->same_group(*o.group_) && degrees_ == o.degrees_ && f_ == o.f_;
  }

  GroupElement degree_of(const Monomial& m) const {
    if (m.size() != variables()) throw ShapeMismatch("monomial has wrong number of variables");
    GroupElement d = zero();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) d += static_cast<std::int64_t>(m[i]) * degrees_[i];
    return d;
  }

  /// Common degree of all terms, or nothing when the polynomial is not homogeneous.
  /// The zero polynomial is homogeneous of every degree; `expected` is returned for it.
  std::optional<GroupElement> is_homogeneous(const Polynomial& p,
                                             const std::optional<GroupElement>& expected = std::nullopt) const {
    if (p.is_zero()) return expected ? expected : std::optional<GroupElement>(zero());
    std::optional<GroupElement> d;
    for (const auto& [m, c] : p.terms()) {
      auto dm = degree_of(m);
      if (d && *d != dm) return std::nullopt;
      d = dm;
    }
    return d;
  }

  /// All monomials of degree `d`, in graded lexicographic order.
  std::vector<Monomial> graded_component_basis(const GroupElement& d) const {
    group_->check_owner(d);
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = cache_.find(d);
      if (it != cache_.end()) return it->second;
    }
    std::vector<Monomial> out;
    const Rational w = group_->free_weight(d);
    if (w >= 0) {
      Monomial e(variables(), 0);
      enumerate(0, w, e, d, out);
      std::sort(out.begin(), out.end(), GradedLex{});
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(d, out);
    return out;
  }

  Polynomial variable(std::size_t index, int power = 1) const { return Polynomial::variable(variables(), index, power); }
  Polynomial constant(const Rational& c) const { return Polynomial::constant(variables(), c); }
  Polynomial zero_polynomial() const { return Polynomial(variables()); }

 private:
  GradedRing() = default;

  void enumerate(std::size_t i, const Rational& remaining, Monomial& e, const GroupElement& d,
                 std::vector<Monomial>& out) const {
    if (i == variables()) {
      if (remaining == 0 && degree_of(e) == d) out.push_back(e);
      return;
    }
    Rational bound = remaining / weights_[i];
    mpz_class top = bound.get_num() / bound.get_den();
    for (int k = 0; k <= top.get_si(); ++k) {
      e[i] = k;
      enumerate(i + 1, remaining - weights_[i] * k, e, d, out);
    }
    e[i] = 0;
  }

  GroupPtr group_;
  std::vector<GroupElement> degrees_;
  GroupElement f_;
  std::vector<Rational> weights_;
  std::optional<std::vector<int>> exponents_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<GroupElement, std::vector<Monomial>> cache_;
};

/// f_n = x_1^{a_1} + x_1 x_2^{a_2} + ... + x_{n-1} x_n^{a_n}; zero when n = 0.
inline Polynomial chain_polynomial(const std::vector<int>& exponents) {
  const std::size_t n = exponents.size();
  Polynomial f(n);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n, 0);
    m[i] = exponents[i];
    if (i > 0) m[i - 1] = 1;
    f.add_term(m, 1);
  }
  return f;
}

}  // namespace chainmf
