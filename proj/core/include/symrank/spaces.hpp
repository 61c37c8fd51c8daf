#pragma once

// Subspaces M of Symm(K^n) and the enumeration machinery behind every
// "each non-zero element of M" hypothesis.
//
// Canonical form: each basis form is vectorized over its upper triangle,
// coordinates ordered lexicographically by (i, j) with i <= j, and the d x
// n(n+1)/2 matrix of vectorizations is kept in RREF.
//
// Enumeration order: a coordinate vector c in K^d is identified with the
// big-endian code sum c_j q^(d-1-j), so code order is lexicographic order of
// coordinates. Projective representatives are the vectors whose first nonzero
// coordinate is 1, i.e. codes in [q^m, 2 q^m) for m = 0..d-1, visited in
// increasing code order.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "symrank/forms.hpp"
#include "symrank/report.hpp"

namespace symrank {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;  // bound on q^d (or q^n for vector sweeps)
  unsigned jobs = 1;
};

std::size_t packed_length(std::size_t n) noexcept;
Vector pack(const SymForm& f);
SymForm unpack(const Field& field, std::size_t n, std::span<const Code> packed);

class FormSubspace {
 public:
  /// span_canonicalize: RREF over the packed upper triangles.
  static FormSubspace span(const Field& field, std::size_t n, std::span<const SymForm> forms);
  static FormSubspace zero(const Field& field, std::size_t n);
  /// Space spanned by the rows of a d x n(n+1)/2 packed matrix.
  static FormSubspace from_packed(std::size_t n, const Matrix& packed_rows);

  const Field& field() const noexcept { return packed_.field(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return packed_.rows(); }
  const std::vector<SymForm>& basis() const noexcept { return basis_; }
  const Matrix& packed() const noexcept { return packed_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// sum_j coords[j] * basis[j].
  SymForm combine(std::span<const Code> coords) const;

  /// Coordinates in the canonical basis, or nullopt when f is not in M.
  std::optional<Vector> coordinates(const SymForm& f) const;
  bool contains(const SymForm& f) const { return coordinates(f).has_value(); }
  bool contains(const FormSubspace& other) const;

  FormSubspace operator+(const FormSubspace& other) const;

  friend bool operator==(const FormSubspace& a, const FormSubspace& b) noexcept {
    return a.n_ == b.n_ && a.packed_ == b.packed_;
  }

 private:
  FormSubspace(std::size_t n, Matrix packed, std::vector<std::size_t> pivots);

  std::size_t n_;
  Matrix packed_;
  std::vector<std::size_t> pivots_;
  std::vector<SymForm> basis_;
};

FormSubspace span_canonicalize(const Field& field, std::size_t n, std::span<const SymForm> forms);
std::optional<Vector> member(const FormSubspace& m, const SymForm& f);
std::size_t intersection_dim(const FormSubspace& a, const FormSubspace& b);

// --- enumeration ------------------------------------------------------------

/// q^d, throwing CapExceeded when it passes the cap.
std::uint64_t checked_space_size(std::uint64_t q, std::size_t d, std::uint64_t cap);
std::uint64_t projective_count(std::uint64_t q, std::size_t d);
/// Code of the index-th projective representative.
std::uint64_t projective_code(std::uint64_t q, std::size_t d, std::uint64_t index);
void coords_from_code(std::uint64_t q, std::uint64_t code, std::span<Code> out);

struct EnumeratedForm {
  Vector coords;
  SymForm form;
};

/// All q^d - 1 nonzero elements in code order, or the (q^d - 1)/(q - 1)
/// projective representatives when `projective` is set.
std::vector<EnumeratedForm> enumerate_nonzero(const FormSubspace& m,
                                              const EnumerationOptions& opts = {},
                                              bool projective = false);

/// Reusable scratch for evaluating many elements of one space.
class FormEvaluator {
 public:
  explicit FormEvaluator(const FormSubspace& m);

  void load(std::span<const Code> coords);
  void load_code(std::uint64_t code);

  std::span<const Code> coords() const noexcept { return coords_; }
  std::span<const Code> gram() const noexcept { return gram_; }
  std::size_t rank();
  bool is_alternating() const noexcept;
  SymForm form() const;

 private:
  void accumulate();

  const FormSubspace* m_;
  std::uint64_t q_;
  Vector coords_;
  std::vector<Code> packed_;
  std::vector<Code> gram_;
  std::vector<Code> work_;
  std::vector<std::pair<std::size_t, std::size_t>> index_;
};

namespace detail {

/// Splits [0, total) into at most `jobs` contiguous ranges in ascending order
/// and runs body(worker, begin, end) on each, concurrently when jobs > 1.
void run_partitioned(std::uint64_t total, unsigned jobs,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body);

unsigned effective_jobs(std::uint64_t total, unsigned jobs) noexcept;

}  // namespace detail

/// Visits every projective representative. `visit(worker, index, evaluator)`
/// returns false to stop that worker's partition early. Worker ids are below
/// opts.jobs; partitions are contiguous and ascending in worker id.
void for_each_projective(const FormSubspace& m, const EnumerationOptions& opts,
                         const std::function<bool(unsigned, std::uint64_t, FormEvaluator&)>& visit);

// --- rank data --------------------------------------------------------------

struct RankSpectrum {
  std::map<std::size_t, std::uint64_t> counts;  // rank -> number of nonzero elements
  std::uint64_t total = 0;                      // q^d - 1

  std::size_t max_rank() const noexcept { return counts.empty() ? 0 : counts.rbegin()->first; }
  bool constant() const noexcept { return counts.size() == 1; }
  std::uint64_t count(std::size_t rank) const {
    auto it = counts.find(rank);
    return it == counts.end() ? 0 : it->second;
  }
  friend bool operator==(const RankSpectrum&, const RankSpectrum&) = default;
};

/// Ranks of projective representatives, each count scaled by q - 1.
RankSpectrum rank_spectrum(const FormSubspace& m, const EnumerationOptions& opts = {});

// --- V(M), M_Alt, K_u, radicals ---------------------------------------------

/// {v : f(v, v) = 0 for all f in M}. Characteristic 2 uses the linear map
/// v -> (sqrt f_j(v, v))_j; odd characteristic falls back to the exhaustive
/// sweep.
VectorSubspace v_of_m(const FormSubspace& m, const EnumerationOptions& opts = {});
VectorSubspace v_of_m_closed_form(const FormSubspace& m);
/// Spans every v in K^n with f_j(v, v) = 0 for all basis forms.
VectorSubspace v_of_m_exhaustive(const FormSubspace& m, const EnumerationOptions& opts = {});

/// M intersected with the alternating forms.
FormSubspace alt_subspace(const FormSubspace& m);

/// K_u = {f in M : G_f u = 0}.
FormSubspace kernel_at_point(const FormSubspace& m, std::span<const Code> u);

struct RadicalSweep {
  std::optional<VectorSubspace> common;
  /// Coordinates of the first element and of the first element whose radical
  /// differs from it, when the radicals are not all equal.
  std::optional<std::pair<Vector, Vector>> differing;
};

RadicalSweep sweep_radicals(const FormSubspace& m, const EnumerationOptions& opts = {});

/// The radical shared by all nonzero elements, if there is one.
std::optional<VectorSubspace> common_radical(const FormSubspace& m,
                                             const EnumerationOptions& opts = {});

struct NormalForm {
  Matrix transform;  // X
  VerificationReport report;
};

/// Builds X from the radical of the first rank-r element and confirms that
/// the leading (n-r) x (n-r) block of X S X^T vanishes for every basis form S.
NormalForm normal_form_basis(const FormSubspace& m, std::size_t r,
                             const EnumerationOptions& opts = {});

}  // namespace symrank
