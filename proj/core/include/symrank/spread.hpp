#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "symrank/report.hpp"
#include "symrank/spaces.hpp"

namespace symrank {

/// The family of kernels K_u of a 3r-dimensional two-rank space on K^(2r),
/// together with their common radicals and the alternating part.
struct SpreadDecomposition {
  struct Component {
    Vector point;                          // first projective point u with this K_u
    FormSubspace kernel;                   // K_u
    std::optional<VectorSubspace> radical; // common radical of K_u, if any
    std::uint64_t points = 0;              // projective points mapping here
  };

  std::vector<Component> components;  // ordered by first point
  FormSubspace alt_part;              // M_Alt
  std::optional<std::pair<std::size_t, std::size_t>> chosen_pair;  // (N, N_1) indices
};

/// Sweeps every projective point u of V, groups the K_u, and checks the
/// spread and direct-sum structure. Hypothesis failures are reported, and the
/// sweep still records whatever holds.
std::pair<SpreadDecomposition, VerificationReport> spread_decomposition(
    const FormSubspace& m, const EnumerationOptions& opts = {});

}  // namespace symrank
