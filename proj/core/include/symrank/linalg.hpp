#pragma once

// Dense exact linear algebra over a Field. Pivoting always takes the first
// nonzero entry in column order, so every canonical form is deterministic.

#include <cstddef>
#include <span>
#include <vector>

#include "symrank/field.hpp"

namespace symrank {

inline constexpr std::size_t kDefaultDimensionCap = 64;

using Vector = std::vector<Code>;

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Code> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Code operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Code value);

  std::span<const Code> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Code>& data() const noexcept { return data_; }

  Matrix transpose() const;
  bool is_symmetric() const noexcept;
  bool is_zero() const noexcept;

  /// Rows [begin, end) and columns [cbegin, cend).
  Matrix block(std::size_t begin, std::size_t end, std::size_t cbegin, std::size_t cend) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(std::span<const Code> v) const;
  Matrix scaled(Code c) const;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Code> data_;
};

struct RowEchelon {
  Matrix reduced;                   // RREF with zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);

/// A subspace of K^n stored as the RREF of a spanning set. Equal subspaces
/// have identical bases.
class VectorSubspace {
 public:
  static VectorSubspace span(const Matrix& rows);
  static VectorSubspace span(Field field, std::size_t ambient, const std::vector<Vector>& vectors);
  static VectorSubspace zero(Field field, std::size_t ambient);
  static VectorSubspace full(Field field, std::size_t ambient);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Code> v) const;
  bool contains(const VectorSubspace& other) const;
  VectorSubspace operator+(const VectorSubspace& other) const;

  friend bool operator==(const VectorSubspace& a, const VectorSubspace& b) noexcept {
    return a.basis_ == b.basis_;
  }

 private:
  VectorSubspace(Matrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t intersection_dim(const VectorSubspace& a, const VectorSubspace& b);

/// {v : M v = 0}.
VectorSubspace kernel_basis(const Matrix& m);

/// X S X^T.
Matrix congruence(const Matrix& x, const Matrix& s);

/// Invertible n x n matrix whose first dim(W) rows are W's canonical basis,
/// followed by the standard vectors e_j for the non-pivot columns j in order.
Matrix complete_basis(const VectorSubspace& w);

namespace kernels {

/// Destructive rank of a row-major rows x cols buffer.
std::size_t rank_in_place(const detail::FieldCore& f, Code* data, std::size_t rows,
                          std::size_t cols) noexcept;

/// Destructive RREF; returns the pivot columns. Rows beyond the rank end up zero.
std::vector<std::size_t> rref_in_place(const detail::FieldCore& f, Code* data,
                                       std::size_t rows, std::size_t cols);

}  // namespace kernels

}  // namespace symrank
