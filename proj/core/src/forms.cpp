#include "symrank/forms.hpp"

#include <string>

namespace symrank {

SymForm::SymForm(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw InvalidArgument("Gram matrix must be square");
  if (gram_.rows() > kDefaultDimensionCap) {
    throw InvalidArgument("form dimension " + std::to_string(gram_.rows()) +
                          " exceeds the dimension cap");
  }
  if (!gram_.is_symmetric()) throw InvalidArgument("Gram matrix is not symmetric");
}

SymForm SymForm::zero(Field field, std::size_t n) { return SymForm(Matrix(std::move(field), n, n)); }

Element evaluate(const SymForm& f, std::span<const Code> u, std::span<const Code> v) {
  if (u.size() != f.n() || v.size() != f.n()) throw InvalidArgument("vector length mismatch");
  const Field& k = f.field();
  for (auto c : u) k.check(c);
  for (auto c : v) k.check(c);
  const Vector gv = f.gram() * v;
  Code acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc = k.add(acc, k.mul(u[i], gv[i]));
  return k.element(acc);
}

VectorSubspace radical(const SymForm& f) { return kernel_basis(f.gram()); }

bool is_alternating(const SymForm& f) {
  if (!f.field().char2()) return f.is_zero();
  for (std::size_t i = 0; i < f.n(); ++i) {
    if (f(i, i) != 0) return false;
  }
  return true;
}

SymForm restrict(const SymForm& f, const VectorSubspace& u) {
  if (!(u.field() == f.field()) || u.ambient_dim() != f.n()) {
    throw InvalidArgument("subspace does not live in the form's ambient space");
  }
  return SymForm(congruence(u.basis(), f.gram()));
}

bool is_totally_isotropic(const SymForm& f, const VectorSubspace& r) {
  return restrict(f, r).is_zero();
}

SymForm off_diagonal_block_form(const Matrix& a2) {
  const std::size_t top = a2.rows();
  const std::size_t n = top + a2.cols();
  Matrix g(a2.field(), n, n);
  for (std::size_t i = 0; i < top; ++i) {
    for (std::size_t j = 0; j < a2.cols(); ++j) {
      g.set(i, top + j, a2(i, j));
      g.set(top + j, i, a2(i, j));
    }
  }
  return SymForm(std::move(g));
}

EvenRankResult even_rank_check(const Matrix& a2) {
  const std::size_t r = off_diagonal_block_form(a2).rank();
  return {r, r % 2 == 0};
}

}  // namespace symrank
