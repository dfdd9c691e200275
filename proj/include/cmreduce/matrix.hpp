#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cmreduce/errors.hpp"

namespace cmreduce {

/// Dense row-major matrix with entries in `Field::element`.
template <class Field>
class Matrix {
 public:
  using element = typename Field::element;

  Matrix(const Field& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return *field_; }

  element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const Field* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<element> data_;
};

template <class Field>
Matrix<Field> matrix_mul(const Matrix<Field>& a, const Matrix<Field>& b) {
  if (a.cols() != b.rows()) throw domain_error("matrix_mul: dimension mismatch");
  const Field& F = a.field();
  Matrix<Field> out(F, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (F.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = F.add(out(i, j), F.mul(a(i, k), b(k, j)));
    }
  return out;
}

/// Rank by Gaussian elimination over the field.
template <class Field>
std::size_t matrix_rank(Matrix<Field> m) {
  const Field& F = m.field();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && F.is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    const auto inv = F.inv(m(rank, col));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (F.is_zero(m(i, col))) continue;
      const auto factor = F.mul(m(i, col), inv);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(factor, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace cmreduce
