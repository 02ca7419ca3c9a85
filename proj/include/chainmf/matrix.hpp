#pragma once

#include <string>
#include <vector>

#include "chainmf/errors.hpp"
#include "chainmf/polynomial.hpp"

namespace chainmf {

/// Dense matrix of polynomials in a fixed number of variables.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t variables)
      : rows_(rows), cols_(cols), vars_(variables), data_(rows * cols, Polynomial(variables)) {}

  static PolyMatrix identity(std::size_t n, std::size_t variables) {
    PolyMatrix m(n, n, variables);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(variables, 1);
    return m;
  }
  static PolyMatrix scalar(std::size_t n, const Polynomial& p) {
    PolyMatrix m(n, n, p.variables());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t variables() const { return vars_; }

  Polynomial& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

  bool is_zero() const {
    for (const auto& p : data_)
      if (!p.is_zero()) return false;
    return true;
  }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product: " + shape() + " times " + o.shape());
    PolyMatrix out(rows_, o.cols_, vars_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const auto& b = o(k, j);
          if (!b.is_zero()) out(i, j) += a * b;
        }
      }
    return out;
  }
  PolyMatrix operator+(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }
  PolyMatrix operator-(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }
  PolyMatrix operator-() const {
    PolyMatrix out = *this;
    for (auto& p : out.data_) p = -p;
    return out;
  }
  PolyMatrix operator*(const Polynomial& s) const {
    PolyMatrix out = *this;
    for (auto& p : out.data_)
      if (!p.is_zero()) p = p * s;
    return out;
  }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && vars_ == o.vars_ && data_ == o.data_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  /// The same matrix over a larger polynomial ring.
  PolyMatrix extend(std::size_t variables) const {
    PolyMatrix out(rows_, cols_, variables);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].extend(variables);
    return out;
  }

  /// 2x2 block matrix [[a, b], [c, d]]; any block may have zero rows or columns.
  static PolyMatrix blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d) {
    if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
      throw ShapeMismatch("inconsistent block shapes");
    PolyMatrix out(a.rows_ + c.rows_, a.cols_ + b.cols_, a.vars_);
    out.paste(0, 0, a);
    out.paste(0, a.cols_, b);
    out.paste(a.rows_, 0, c);
    out.paste(a.rows_, a.cols_, d);
    return out;
  }

  void paste(std::size_t r0, std::size_t c0, const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
  }

  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    PolyMatrix out(rows, cols, vars_);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  /// Kronecker product with the first factor indexing the outer blocks.
  static PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_, a.vars_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            if (!b(k, l).is_zero()) out(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix shapes differ: " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t vars_ = 0;
  std::vector<Polynomial> data_;
};

inline PolyMatrix operator*(const Polynomial& s, const PolyMatrix& m) { return m * s; }

}  // namespace chainmf
