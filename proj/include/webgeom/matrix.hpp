#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace webgeom {

// Dense row-major matrix over any ring-like value type constructible from 0.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Rows of this followed by rows of below.
  Matrix stacked(const Matrix& below) const {
    if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0) throw std::invalid_argument("stacked: column mismatch");
    Matrix out(rows_ + below.rows_, rows_ ? cols_ : below.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
      for (std::size_t j = 0; j < below.cols_; ++j) out(rows_ + i, j) = below(i, j);
    return out;
  }

  // Columns of this followed by columns of right.
  Matrix joined(const Matrix& right) const {
    if (right.rows_ != rows_) throw std::invalid_argument("joined: row mismatch");
    Matrix out(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (x == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

}  // namespace webgeom
