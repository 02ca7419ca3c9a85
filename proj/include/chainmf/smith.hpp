#pragma once

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chainmf {

/// Dense row-major integer matrix. Arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in Smith normal form");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in Smith normal form");
  return out;
}

// row[dst] += k * row[src]
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) = checked_add(m(dst, c), checked_mul(k, m(src, c)));
}

// col[dst] += k * col[src]
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) = checked_add(m(r, dst), checked_mul(k, m(r, src)));
}

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

inline void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

// Floor division with the remainder taken in [0, |b|) for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix: shape mismatch in product");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(a(i, k), b(k, j)));
    }
  return out;
}

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., all d_i >= 0.
/// `v_inverse` is V^{-1}, kept so callers can change coordinates without inverting.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inverse;

  std::vector<std::int64_t> diagonal() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  using namespace detail;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithDecomposition out{IntMatrix::identity(rows), m, IntMatrix::identity(cols), IntMatrix::identity(cols)};
  IntMatrix& d = out.d;

  // Column operations act on V from the right and on V^{-1} from the left.
  auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    add_col(d, dst, src, k);
    add_col(out.v, dst, src, k);
    add_row(out.v_inverse, src, dst, -k);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    swap_cols(d, a, b);
    swap_cols(out.v, a, b);
    swap_rows(out.v_inverse, a, b);
  };
  auto col_negate = [&](std::size_t c) {
    negate_col(d, c);
    negate_col(out.v, c);
    negate_row(out.v_inverse, c);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    add_row(d, dst, src, k);
    add_row(out.u, dst, src, k);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    swap_rows(d, a, b);
    swap_rows(out.u, a, b);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block, first in row-major order.
      std::size_t pr = rows, pc = cols;
      std::int64_t best = 0;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (d(r, c) != 0 && (best == 0 || std::llabs(d(r, c)) < best)) {
            best = std::llabs(d(r, c));
            pr = r;
            pc = c;
          }
      if (best == 0) break;
      row_swap(t, pr);
      col_swap(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d(r, t) == 0) continue;
        row_add(r, t, -floor_div(d(r, t), d(t, t)));
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d(t, c) == 0) continue;
        col_add(c, t, -floor_div(d(t, c), d(t, t)));
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (d(r, c) % d(t, t) != 0) {
            row_add(t, r, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) col_negate(t);
  }
  return out;
}

}  // namespace chainmf
