#pragma once

// Explicit example spaces: constant rank 2 and constant rank 2r families,
// trace-form spaces built from an extension field, the full alternating space
// on K^4, and restriction of scalars.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrank/spaces.hpp"

namespace symrank {

/// Span of e_1 e_j^T + e_j e_1^T for j = 2..n: dimension n - 1, every nonzero
/// element of rank 2.
FormSubspace rank2_space(const Field& field, std::size_t n);

/// Dimension n - 2r + 1, every nonzero element of rank 2r (2 <= 2r <= n).
///
/// For c in K^(n-2r+1) let v_c = sum_k c_k e_(r+k) and let w_i be v_c shifted
/// down by i - 1 places. With U = [e_1 .. e_r] and C = [w_1 .. w_r] the form is
/// U C^T + C U^T = [U C] J [U C]^T for the swap block J, and [U C] has full
/// column rank whenever c != 0 (staircase leading entries).
FormSubspace even_rank_space(const Field& field, std::size_t n, std::size_t r);

/// The K-forms Tr(f(u, v)) for f in Symm(L^2), L = K.extend(degree), viewed
/// on K^(2 degree) through the power basis of L. Dimension 3 degree.
FormSubspace trace_form_space(const Field& base, std::uint32_t degree);

/// All alternating forms on K^n (symmetric with zero diagonal), char 2.
FormSubspace alt_full_space(const Field& field, std::size_t n = 4);

/// Restriction of scalars from L to K: the K-span of Tr(c f) for f in the
/// basis of `over_l` and c in an L/K basis, acting on K^(s n_L). `over_l`
/// must live over a field whose recorded base is K (or over K itself).
/// Without an explicit basis the power basis 1, t, ..., t^(s-1) is used.
FormSubspace restrict_scalars(const FormSubspace& over_l, const Field& base,
                              const std::optional<std::vector<Element>>& l_basis = std::nullopt);

/// Forms padded with zero rows and columns up to dimension n.
FormSubspace pad_space(const FormSubspace& m, std::size_t n);

struct Recipe {
  enum class Kind { rank2, even_rank, trace2x2, alt_full, restrict_scalars };
  enum class Inner { alt_full, quadratic };

  Kind kind = Kind::rank2;
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::size_t n = 0;  // rank2, even_rank
  std::size_t r = 0;  // even_rank: half rank; trace2x2 / restrict_scalars: extension degree
  Inner inner = Inner::alt_full;  // restrict_scalars only
};

std::string to_string(Recipe::Kind kind);
Recipe::Kind parse_recipe_kind(const std::string& s);
std::string to_string(Recipe::Inner inner);
Recipe::Inner parse_recipe_inner(const std::string& s);

/// Throws InvalidArgument when the parameters break the recipe's preconditions.
void validate(const Recipe& recipe);
FormSubspace build(const Recipe& recipe);

struct ClosedFormCount {
  std::size_t rank;
  std::uint64_t count;
  std::string formula;
};

/// Closed-form count of the distinguished rank for the two n = 4 families and
/// their restrictions of scalars: (q^2s + 1)(q^3s - 1) for the alternating
/// family, q^4s - 1 for the quadratic trace family, at rank 2s.
std::optional<ClosedFormCount> expected_rank_count(const Recipe& recipe);

}  // namespace symrank
