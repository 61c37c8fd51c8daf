#pragma once

// Seeded counterexample search over random subspaces.
//
// Trial t draws from its own generator keyed by (seed, t), so results do not
// depend on how trials are split across workers. Even trials draw d uniformly
// random symmetric forms; odd trials draw forms supported on a random k x k
// block and move them by one random congruence, which makes low maximum rank
// (and so the interesting hypotheses) much more likely.

#include <cstdint>
#include <optional>
#include <string>

#include "symrank/report.hpp"
#include "symrank/spaces.hpp"

namespace symrank {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return (*this)() % bound; }

  /// Independent stream for trial `index` under `seed`.
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

enum class SearchPredicate {
  odd_rank,    // all nonzero ranks odd; target dim <= max rank
  rank_bound,  // char 2, M_Alt = 0; target dim <= max rank when q >= r + 1 or r = n
  two_rank,    // ranks in {r, n}, r odd, n even; target dim <= n + r
  vm_equality, // char 2, M_Alt = 0; target dim V(M) = n - dim, both routes agree
  never,       // matches nothing
};

std::string to_string(SearchPredicate p);
SearchPredicate parse_search_predicate(const std::string& s);

enum class GeneratorMode { uniform, low_rank };

struct SearchParams {
  Field field;
  std::size_t n = 0;
  std::size_t d = 0;  // 0: draw d uniformly from [1, n] per trial
  SearchPredicate predicate = SearchPredicate::never;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> r;  // pins r for two_rank
};

Matrix random_invertible(const Field& f, std::size_t n, SplitMix64& rng);

/// Span of d random forms; may have dimension below d.
FormSubspace random_form_subspace(const Field& f, std::size_t n, std::size_t d, GeneratorMode mode,
                                  SplitMix64& rng);

VerificationReport random_subspace_search(const SearchParams& params,
                                          const EnumerationOptions& opts = {});

}  // namespace symrank
