#include "symrank/linalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace symrank {

namespace {

// Largest extent any matrix needs: the packed upper triangle at n = 64.
constexpr std::size_t kMaxExtent = kDefaultDimensionCap * (kDefaultDimensionCap + 1) / 2;

void check_extent(std::size_t rows, std::size_t cols) {
  if (rows > kMaxExtent || cols > kMaxExtent) {
    throw InvalidArgument("matrix extent " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " exceeds the dimension cap");
  }
}

Code inv_code(const detail::FieldCore& f, Code a) noexcept {
  return f.exp[(f.q - 1 - f.log[a]) % (f.q - 1)];
}

void same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw FieldMismatch("matrix operands over " + a.name() + " and " + b.name());
}

}  // namespace

namespace kernels {

std::size_t rank_in_place(const detail::FieldCore& f, Code* data, std::size_t rows,
                          std::size_t cols) noexcept {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && data[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(data + pivot * cols + c, data + pivot * cols + cols,
                       data + rank * cols + c);
    }
    Code* prow = data + rank * cols;
    const Code pinv = inv_code(f, prow[c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      Code* row = data + r * cols;
      if (row[c] == 0) continue;
      const Code factor = f.neg[f.mul(row[c], pinv)];
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] = f.add(row[j], f.mul(factor, prow[j]));
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> rref_in_place(const detail::FieldCore& f, Code* data,
                                       std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && data[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(data + pivot * cols, data + pivot * cols + cols, data + rank * cols);
    }
    Code* prow = data + rank * cols;
    const Code pinv = inv_code(f, prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], pinv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      Code* row = data + r * cols;
      if (row[c] == 0) continue;
      const Code factor = f.neg[row[c]];
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] = f.add(row[j], f.mul(factor, prow[j]));
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace kernels

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  check_extent(rows, cols);
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Code> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_extent(rows, cols);
  if (data_.size() != rows * cols) throw InvalidArgument("entry count does not match shape");
  for (auto c : data_) field_.check(c);
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  std::vector<Code> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw InvalidArgument("ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(std::move(field), rows.size(), cols, std::move(entries));
}

void Matrix::set(std::size_t r, std::size_t c, Code value) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
  field_.check(value);
  data_[r * cols_ + c] = value;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

bool Matrix::is_symmetric() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if (data_[r * cols_ + c] != data_[c * cols_ + r]) return false;
    }
  }
  return true;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Code c) { return c == 0; });
}

Matrix Matrix::block(std::size_t begin, std::size_t end, std::size_t cbegin,
                     std::size_t cend) const {
  if (begin > end || end > rows_ || cbegin > cend || cend > cols_) {
    throw InvalidArgument("block out of range");
  }
  Matrix b(field_, end - begin, cend - cbegin);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t c = cbegin; c < cend; ++c) {
      b.data_[(r - begin) * b.cols_ + (c - cbegin)] = data_[r * cols_ + c];
    }
  }
  return b;
}

Matrix Matrix::operator+(const Matrix& o) const {
  same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("shape mismatch in sum");
  Matrix s(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = field_.add(data_[i], o.data_[i]);
  return s;
}

Matrix Matrix::operator*(const Matrix& o) const {
  same_field(field_, o.field_);
  if (cols_ != o.rows_) throw InvalidArgument("shape mismatch in product");
  Matrix p(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Code a = data_[r * cols_ + k];
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        Code& dst = p.data_[r * o.cols_ + c];
        dst = field_.add(dst, field_.mul(a, o.data_[k * o.cols_ + c]));
      }
    }
  }
  return p;
}

Vector Matrix::operator*(std::span<const Code> v) const {
  if (v.size() != cols_) throw InvalidArgument("vector length mismatch");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Code acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = field_.add(acc, field_.mul(data_[r * cols_ + c], v[c]));
    }
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::scaled(Code c) const {
  field_.check(c);
  Matrix s(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = field_.mul(c, data_[i]);
  return s;
}

RowEchelon rref(const Matrix& m) {
  std::vector<Code> work = m.data();
  auto pivots = kernels::rref_in_place(m.field().core(), work.data(), m.rows(), m.cols());
  work.resize(pivots.size() * m.cols());
  return RowEchelon{Matrix(m.field(), pivots.size(), m.cols(), std::move(work)),
                    std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  std::vector<Code> work = m.data();
  return kernels::rank_in_place(m.field().core(), work.data(), m.rows(), m.cols());
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

VectorSubspace VectorSubspace::span(const Matrix& rows) {
  auto e = rref(rows);
  return VectorSubspace(std::move(e.reduced), std::move(e.pivots));
}

VectorSubspace VectorSubspace::span(Field field, std::size_t ambient,
                                    const std::vector<Vector>& vectors) {
  return span(Matrix::from_rows(std::move(field), vectors, ambient));
}

VectorSubspace VectorSubspace::zero(Field field, std::size_t ambient) {
  return VectorSubspace(Matrix(std::move(field), 0, ambient), {});
}

VectorSubspace VectorSubspace::full(Field field, std::size_t ambient) {
  std::vector<std::size_t> pivots(ambient);
  for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
  return VectorSubspace(Matrix::identity(std::move(field), ambient), std::move(pivots));
}

bool VectorSubspace::contains(std::span<const Code> v) const {
  if (v.size() != ambient_dim()) throw InvalidArgument("vector length mismatch");
  // Reduce v against the RREF rows; membership iff the remainder vanishes.
  const Field& f = field();
  Vector rem(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const Code lead = rem[pivots_[i]];
    if (lead == 0) continue;
    const Code factor = f.neg(lead);
    auto row = basis_.row(i);
    for (std::size_t j = 0; j < rem.size(); ++j) rem[j] = f.add(rem[j], f.mul(factor, row[j]));
  }
  return std::all_of(rem.begin(), rem.end(), [](Code c) { return c == 0; });
}

bool VectorSubspace::contains(const VectorSubspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis().row(i))) return false;
  }
  return true;
}

VectorSubspace VectorSubspace::operator+(const VectorSubspace& other) const {
  same_field(field(), other.field());
  if (ambient_dim() != other.ambient_dim()) throw InvalidArgument("ambient dimension mismatch");
  std::vector<Code> entries = basis_.data();
  entries.insert(entries.end(), other.basis_.data().begin(), other.basis_.data().end());
  return span(Matrix(field(), dim() + other.dim(), ambient_dim(), std::move(entries)));
}

std::size_t intersection_dim(const VectorSubspace& a, const VectorSubspace& b) {
  return a.dim() + b.dim() - (a + b).dim();
}

VectorSubspace kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  const auto e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<Vector> vectors;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, free));
    vectors.push_back(std::move(v));
  }
  return VectorSubspace::span(f, n, vectors);
}

Matrix congruence(const Matrix& x, const Matrix& s) {
  if (s.rows() != s.cols() || x.cols() != s.rows()) {
    throw InvalidArgument("congruence needs X: m x n and S: n x n");
  }
  return x * s * x.transpose();
}

Matrix complete_basis(const VectorSubspace& w) {
  const std::size_t n = w.ambient_dim();
  Matrix x(w.field(), n, n);
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t i = 0; i < w.dim(); ++i, ++row) {
    is_pivot[w.pivots()[i]] = true;
    for (std::size_t c = 0; c < n; ++c) x.set(row, c, w.basis()(i, c));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) x.set(row++, j, 1);
  }
  return x;
}

}  // namespace symrank
