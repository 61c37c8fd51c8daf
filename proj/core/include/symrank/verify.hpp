#pragma once

// Theorem-by-theorem checks over explicit finite instances. Each returns a
// VerificationReport; proved statements are judged only when their stated
// hypotheses hold, and conjectured sharpenings are recorded as informational.

#include <cstdint>
#include <optional>

#include "symrank/constructions.hpp"
#include "symrank/report.hpp"
#include "symrank/spaces.hpp"

namespace symrank {

/// All nonzero ranks odd with maximum r: dim M <= r(r+1)/2, and over a
/// finite field also dim M <= r.
VerificationReport check_odd_rank_bound(const FormSubspace& m, const EnumerationOptions& opts = {});

/// Characteristic 2 with M_Alt = 0: dim V(M) <= n - dim M, with equality over
/// a perfect field. Both V(M) routes are compared when q^n fits the cap.
VerificationReport check_vm_bound(const FormSubspace& m, const EnumerationOptions& opts = {});

/// Characteristic 2, M_Alt = 0, maximum rank r, |K| >= r + 1 (not needed when
/// r = n): dim M <= r.
VerificationReport check_rank_bound(const FormSubspace& m, const EnumerationOptions& opts = {});

/// An r-dimensional constant rank r space with M_Alt = 0 and |K| >= r + 1 has
/// one common radical, equal to V(M).
VerificationReport check_common_radicals(const FormSubspace& m, const EnumerationOptions& opts = {});

/// Nonzero ranks in {r, n} with r odd, n even, 0 < r < n: dim M <= n + r.
VerificationReport check_two_rank_bound(const FormSubspace& m, const EnumerationOptions& opts = {});

/// Constant rank r (odd, 1 < r < n) over GF(q), q even, q >= r + 1, with
/// d <= r: when d > 2(n-r)r / (2(n-r)+1) all radicals coincide. Also measures
/// the number t of distinct radicals and, when t > 1, checks
/// q^ceil(d/2) + 1 <= t <= 4 q^((n-r)(r-d)).
VerificationReport check_radical_threshold(const FormSubspace& m, const EnumerationOptions& opts = {});

/// Counts nonzero elements of the given rank. With a recipe that has a closed
/// form, the rank defaults to the closed form's and the count is compared.
VerificationReport count_rank_elements(const FormSubspace& m, std::optional<std::size_t> rank,
                                       const std::optional<Recipe>& recipe = std::nullopt,
                                       const EnumerationOptions& opts = {});

}  // namespace symrank
