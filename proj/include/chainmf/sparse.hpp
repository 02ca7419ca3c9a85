#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace chainmf {

/// Sparse integer vector: (index, nonzero value) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, mpz_class>>;
/// Sparse rational vector, same layout.
using SparseRationalVector = std::vector<std::pair<std::size_t, mpq_class>>;

namespace detail {

inline void make_primitive(SparseVector& v) {
  if (v.empty()) return;
  mpz_class g = 0;
  for (const auto& [i, c] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [i, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// a*u - b*w
inline SparseVector combine(const mpz_class& a, const SparseVector& u, const mpz_class& b, const SparseVector& w) {
  SparseVector out;
  out.reserve(u.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < w.size()) {
    if (j == w.size() || (i < u.size() && u[i].first < w[j].first)) {
      out.emplace_back(u[i].first, a * u[i].second);
      ++i;
    } else if (i == u.size() || w[j].first < u[i].first) {
      out.emplace_back(w[j].first, -b * w[j].second);
      ++j;
    } else {
      mpz_class c = a * u[i].second - b * w[j].second;
      if (c != 0) out.emplace_back(u[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Clears denominators of a rational vector, returning a primitive integer vector.
inline SparseVector to_integer_vector(const SparseRationalVector& v) {
  mpz_class l = 1;
  for (const auto& [i, c] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  SparseVector out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) {
    mpz_class x = l / c.get_den() * c.get_num();
    if (x != 0) out.emplace_back(i, std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  detail::make_primitive(out);
  return out;
}

/// Row echelon basis over the integers, built incrementally by fraction-free elimination.
/// The pivot of a vector is its smallest index; a new vector is reduced against the stored
/// row with that pivot until its leading index is free or it vanishes.
class EchelonBasis {
 public:
  SparseVector reduce(SparseVector v) const {
    detail::make_primitive(v);
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) break;
      const SparseVector& row = it->second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), v.front().second.get_mpz_t(), row.front().second.get_mpz_t());
      const mpz_class a = row.front().second / g;
      const mpz_class b = v.front().second / g;
      v = detail::combine(a, v, b, row);
      detail::make_primitive(v);
    }
    return v;
  }

  /// Returns true when `v` was independent of the stored rows.
  bool insert(SparseVector v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const std::size_t pivot = v.front().first;
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

 private:
  std::map<std::size_t, SparseVector> rows_;
};

/// Basis of {x : sum_k x_k * columns[k] = 0}, returned as primitive integer vectors indexed by
/// column number. One vector per non-pivot column, ordered by that column.
inline std::vector<SparseVector> kernel_basis(const std::vector<SparseRationalVector>& columns) {
  // Transpose into rows of the system matrix; rows may be rescaled, columns may not.
  std::map<std::size_t, SparseRationalVector> by_row;
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (const auto& [r, c] : columns[k]) by_row[r].emplace_back(k, c);
  EchelonBasis echelon;
  for (auto& [r, row] : by_row) echelon.insert(to_integer_vector(row));

  // Reduced row echelon form over the rationals, pivots ascending.
  std::map<std::size_t, std::map<std::size_t, mpq_class>> rref;
  for (const auto& [p, row] : echelon.rows()) {
    auto& r = rref[p];
    const mpq_class lead(row.front().second);
    for (const auto& [i, c] : row) r[i] = mpq_class(c) / lead;
  }
  for (auto it = rref.rbegin(); it != rref.rend(); ++it) {
    const std::size_t p = it->first;
    for (auto& [q, r] : rref) {
      if (q >= p) break;
      auto e = r.find(p);
      if (e == r.end()) continue;
      const mpq_class factor = e->second;
      for (const auto& [i, c] : it->second) {
        auto& x = r[i];
        x -= factor * c;
      }
      for (auto z = r.begin(); z != r.end();) z = z->second == 0 ? r.erase(z) : std::next(z);
    }
  }

  std::vector<SparseVector> out;
  for (std::size_t free = 0; free < columns.size(); ++free) {
    if (rref.count(free)) continue;
    SparseRationalVector v;
    v.emplace_back(free, 1);
    for (const auto& [p, r] : rref) {
      auto e = r.find(free);
      if (e != r.end()) v.emplace_back(p, -e->second);
    }
    out.push_back(to_integer_vector(v));
  }
  return out;
}

}  // namespace chainmf
