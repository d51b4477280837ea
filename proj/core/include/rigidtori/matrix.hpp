#pragma once

// Dense matrices over an exact field and the elimination routines the rest of
// the library is built on. The field is passed as a policy object exposing
// zero() and one(); elements must provide + - * / and a free is_zero().

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidtori/rational.hpp"

namespace rigidtori {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  const std::vector<T>& data() const { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transpose() const {
    Matrix out;
    out.rows_ = cols_;
    out.cols_ = rows_;
    out.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) out.data_.push_back((*this)(r, c));
    return out;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out;
    if (data_.empty()) return Matrix<U>();
    out = Matrix<U>(rows_, cols_, f(data_.front()));
    for (std::size_t i = 0; i < data_.size(); ++i) out(i / cols_, i % cols_) = f(data_[i]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    if (a.rows_ == 0 || b.cols_ == 0) return Matrix();
    if (a.cols_ == 0) throw std::invalid_argument("matrix product: empty inner dimension");
    Matrix out(a.rows_, b.cols_, a.data_.front() - a.data_.front());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class Field>
auto identity(std::size_t n, const Field& field) {
  Matrix<decltype(field.zero())> out(n, n, field.zero());
  for (std::size_t i = 0; i < n; ++i) out(i, i) = field.one();
  return out;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const auto& x : m.data())
    if (!is_zero(x)) return false;
  return true;
}

/// Horizontal concatenation [a | b].
template <class T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols(), a(0, 0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

/// Matrix whose columns are `cols` (all of length `rows`).
template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows, const T& zero) {
  Matrix<T> out(rows, cols.size(), zero);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = cols[c][r];
  return out;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <class T, class Field>
std::vector<std::size_t> rref(Matrix<T>& m, const Field& field) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    const T inv = field.one() / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T, class Field>
std::size_t rank(Matrix<T> m, const Field& field) {
  return rref(m, field).size();
}

/// Basis of {x : m x = 0}, returned as the columns of a cols() x nullity matrix.
template <class T, class Field>
Matrix<T> nullspace(Matrix<T> m, const Field& field) {
  const std::size_t n = m.cols();
  const auto pivots = rref(m, field);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(n, field.zero());
    v[free] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix<T>(n, 0, field.zero());
  return from_columns(basis, n, field.zero());
}

/// Some X with a X = b, or nullopt if the system is inconsistent.
template <class T, class Field>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b, const Field& field) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Matrix<T> aug = hconcat(a, b);
  if (a.cols() == 0) {
    if (!is_zero_matrix(b)) return std::nullopt;
    return Matrix<T>(0, b.cols(), field.zero());
  }
  const auto pivots = rref(aug, field);
  Matrix<T> x(a.cols(), b.cols(), field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[i], c) = aug(i, a.cols() + c);
  }
  return x;
}

template <class T, class Field>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, const Field& field) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
  if (rank(a, field) != a.rows()) return std::nullopt;
  return solve(a, identity(a.rows(), field), field);
}

/// The independent columns of m (first maximal independent subset, in order).
template <class T, class Field>
Matrix<T> column_basis(const Matrix<T>& m, const Field& field) {
  Matrix<T> work = m;
  const auto pivots = rref(work, field);
  std::vector<std::vector<T>> cols;
  for (auto p : pivots) cols.push_back(m.column(p));
  if (cols.empty()) return Matrix<T>(m.rows(), 0, field.zero());
  return from_columns(cols, m.rows(), field.zero());
}

template <class T, class Field>
T trace(const Matrix<T>& m, const Field& field) {
  T t = field.zero();
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

}  // namespace rigidtori
