#pragma once

// Symmetric bilinear forms on K^n, represented by their Gram matrices.

#include <cstddef>
#include <span>

#include "symrank/linalg.hpp"

namespace symrank {

class SymForm {
 public:
  /// Rejects non-square or non-symmetric Gram matrices; never repairs them.
  explicit SymForm(Matrix gram);

  static SymForm zero(Field field, std::size_t n);

  const Field& field() const noexcept { return gram_.field(); }
  std::size_t n() const noexcept { return gram_.rows(); }
  const Matrix& gram() const noexcept { return gram_; }
  Code operator()(std::size_t i, std::size_t j) const noexcept { return gram_(i, j); }

  std::size_t rank() const { return symrank::rank(gram_); }
  bool is_zero() const noexcept { return gram_.is_zero(); }

  SymForm operator+(const SymForm& o) const { return SymForm(gram_ + o.gram_); }
  SymForm scaled(Code c) const { return SymForm(gram_.scaled(c)); }

  friend bool operator==(const SymForm& a, const SymForm& b) noexcept {
    return a.gram_ == b.gram_;
  }

 private:
  Matrix gram_;
};

/// u^T G v.
Element evaluate(const SymForm& f, std::span<const Code> u, std::span<const Code> v);

VectorSubspace radical(const SymForm& f);

/// f(v, v) = 0 for all v. In characteristic 2 this is a zero diagonal; in odd
/// characteristic a symmetric alternating form is zero.
bool is_alternating(const SymForm& f);

/// Gram B G B^T for the canonical basis B of u.
SymForm restrict(const SymForm& f, const VectorSubspace& u);

bool is_totally_isotropic(const SymForm& f, const VectorSubspace& r);

struct EvenRankResult {
  std::size_t rank;
  bool is_even;
};

/// [[0, A2], [A2^T, 0]] for an (n-r) x r block A2.
SymForm off_diagonal_block_form(const Matrix& a2);

/// Rank and parity of the off-diagonal block form built from A2.
EvenRankResult even_rank_check(const Matrix& a2);

}  // namespace symrank
