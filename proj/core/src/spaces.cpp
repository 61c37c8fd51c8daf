#include "symrank/spaces.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <thread>

#include "symrank/io.hpp"

namespace symrank {

namespace {

void require_compatible(const FormSubspace& m, const SymForm& f) {
  if (!(m.field() == f.field()) || m.n() != f.n()) {
    throw InvalidArgument("form does not match the space's field or dimension");
  }
}

}  // namespace

std::size_t packed_length(std::size_t n) noexcept { return n * (n + 1) / 2; }

Vector pack(const SymForm& f) {
  Vector v;
  v.reserve(packed_length(f.n()));
  for (std::size_t i = 0; i < f.n(); ++i) {
    for (std::size_t j = i; j < f.n(); ++j) v.push_back(f(i, j));
  }
  return v;
}

SymForm unpack(const Field& field, std::size_t n, std::span<const Code> packed) {
  if (packed.size() != packed_length(n)) throw InvalidArgument("packed length mismatch");
  std::vector<Code> g(n * n, 0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++idx) {
      g[i * n + j] = packed[idx];
      g[j * n + i] = packed[idx];
    }
  }
  return SymForm(Matrix(field, n, n, std::move(g)));
}

FormSubspace::FormSubspace(std::size_t n, Matrix packed, std::vector<std::size_t> pivots)
    : n_(n), packed_(std::move(packed)), pivots_(std::move(pivots)) {
  basis_.reserve(packed_.rows());
  for (std::size_t i = 0; i < packed_.rows(); ++i) {
    basis_.push_back(unpack(packed_.field(), n_, packed_.row(i)));
  }
}

FormSubspace FormSubspace::span(const Field& field, std::size_t n, std::span<const SymForm> forms) {
  if (n > kDefaultDimensionCap) throw InvalidArgument("form dimension exceeds the dimension cap");
  std::vector<Code> entries;
  entries.reserve(forms.size() * packed_length(n));
  for (const auto& f : forms) {
    if (!(f.field() == field)) throw FieldMismatch("forms over different fields");
    if (f.n() != n) throw InvalidArgument("forms of different dimensions");
    const auto v = pack(f);
    entries.insert(entries.end(), v.begin(), v.end());
  }
  return from_packed(n, Matrix(field, forms.size(), packed_length(n), std::move(entries)));
}

FormSubspace FormSubspace::zero(const Field& field, std::size_t n) {
  return FormSubspace(n, Matrix(field, 0, packed_length(n)), {});
}

FormSubspace FormSubspace::from_packed(std::size_t n, const Matrix& packed_rows) {
  if (packed_rows.cols() != packed_length(n)) throw InvalidArgument("packed width mismatch");
  auto e = rref(packed_rows);
  return FormSubspace(n, std::move(e.reduced), std::move(e.pivots));
}

SymForm FormSubspace::combine(std::span<const Code> coords) const {
  if (coords.size() != dim()) throw InvalidArgument("coordinate count mismatch");
  const Field& f = field();
  Vector acc(packed_length(n_), 0);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    f.check(coords[j]);
    if (coords[j] == 0) continue;
    auto row = packed_.row(j);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = f.add(acc[i], f.mul(coords[j], row[i]));
  }
  return unpack(f, n_, acc);
}

std::optional<Vector> FormSubspace::coordinates(const SymForm& form) const {
  require_compatible(*this, form);
  const Vector v = pack(form);
  Vector coords(dim());
  for (std::size_t j = 0; j < dim(); ++j) coords[j] = v[pivots_[j]];
  if (pack(combine(coords)) != v) return std::nullopt;
  return coords;
}

bool FormSubspace::contains(const FormSubspace& other) const {
  return std::all_of(other.basis().begin(), other.basis().end(),
                     [&](const SymForm& f) { return contains(f); });
}

FormSubspace FormSubspace::operator+(const FormSubspace& other) const {
  if (!(field() == other.field()) || n_ != other.n_) {
    throw InvalidArgument("sum of spaces over different fields or dimensions");
  }
  std::vector<Code> entries = packed_.data();
  entries.insert(entries.end(), other.packed_.data().begin(), other.packed_.data().end());
  return from_packed(n_, Matrix(field(), dim() + other.dim(), packed_length(n_), std::move(entries)));
}

FormSubspace span_canonicalize(const Field& field, std::size_t n, std::span<const SymForm> forms) {
  return FormSubspace::span(field, n, forms);
}

std::optional<Vector> member(const FormSubspace& m, const SymForm& f) { return m.coordinates(f); }

std::size_t intersection_dim(const FormSubspace& a, const FormSubspace& b) {
  return a.dim() + b.dim() - (a + b).dim();
}

// --- enumeration ------------------------------------------------------------

std::uint64_t checked_space_size(std::uint64_t q, std::size_t d, std::uint64_t cap) {
  auto size = checked_pow(q, d, cap);
  if (!size) {
    auto full = checked_pow(q, d);
    throw CapExceeded("enumeration of " + std::to_string(q) + "^" + std::to_string(d) + " elements",
                      full ? *full : UINT64_MAX, cap);
  }
  return *size;
}

std::uint64_t projective_count(std::uint64_t q, std::size_t d) {
  std::uint64_t total = 0;
  std::uint64_t block = 1;
  for (std::size_t m = 0; m < d; ++m) {
    total += block;
    block *= q;
  }
  return total;
}

std::uint64_t projective_code(std::uint64_t q, std::size_t d, std::uint64_t index) {
  std::uint64_t block = 1;
  for (std::size_t m = 0; m < d; ++m) {
    if (index < block) return block + index;
    index -= block;
    block *= q;
  }
  throw InvalidArgument("projective index out of range");
}

void coords_from_code(std::uint64_t q, std::uint64_t code, std::span<Code> out) {
  for (std::size_t j = out.size(); j-- > 0;) {
    out[j] = static_cast<Code>(code % q);
    code /= q;
  }
}

std::vector<EnumeratedForm> enumerate_nonzero(const FormSubspace& m, const EnumerationOptions& opts,
                                              bool projective) {
  const std::uint64_t q = m.field().q();
  const std::uint64_t size = checked_space_size(q, m.dim(), opts.cap);
  std::vector<EnumeratedForm> out;
  Vector coords(m.dim());
  if (projective) {
    const std::uint64_t count = projective_count(q, m.dim());
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      coords_from_code(q, projective_code(q, m.dim(), i), coords);
      out.push_back({coords, m.combine(coords)});
    }
  } else {
    out.reserve(size - 1);
    for (std::uint64_t code = 1; code < size; ++code) {
      coords_from_code(q, code, coords);
      out.push_back({coords, m.combine(coords)});
    }
  }
  return out;
}

FormEvaluator::FormEvaluator(const FormSubspace& m)
    : m_(&m),
      q_(m.field().q()),
      coords_(m.dim(), 0),
      packed_(packed_length(m.n()), 0),
      gram_(m.n() * m.n(), 0),
      work_(m.n() * m.n(), 0) {
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = i; j < m.n(); ++j) index_.emplace_back(i, j);
  }
}

void FormEvaluator::load(std::span<const Code> coords) {
  if (coords.size() != coords_.size()) throw InvalidArgument("coordinate count mismatch");
  std::copy(coords.begin(), coords.end(), coords_.begin());
  accumulate();
}

void FormEvaluator::load_code(std::uint64_t code) {
  coords_from_code(q_, code, coords_);
  accumulate();
}

void FormEvaluator::accumulate() {
  const auto& f = m_->field().core();
  std::fill(packed_.begin(), packed_.end(), 0);
  const auto& rows = m_->packed();
  const std::size_t width = packed_.size();
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const Code c = coords_[j];
    if (c == 0) continue;
    const Code* row = rows.data().data() + j * width;
    if (c == 1) {
      for (std::size_t i = 0; i < width; ++i) packed_[i] = f.add(packed_[i], row[i]);
    } else {
      for (std::size_t i = 0; i < width; ++i) {
        if (row[i] != 0) packed_[i] = f.add(packed_[i], f.mul(c, row[i]));
      }
    }
  }
  const std::size_t n = m_->n();
  for (std::size_t idx = 0; idx < width; ++idx) {
    const auto [i, j] = index_[idx];
    gram_[i * n + j] = packed_[idx];
    gram_[j * n + i] = packed_[idx];
  }
}

std::size_t FormEvaluator::rank() {
  std::copy(gram_.begin(), gram_.end(), work_.begin());
  return kernels::rank_in_place(m_->field().core(), work_.data(), m_->n(), m_->n());
}

bool FormEvaluator::is_alternating() const noexcept {
  const std::size_t n = m_->n();
  if (!m_->field().char2()) {
    return std::all_of(gram_.begin(), gram_.end(), [](Code c) { return c == 0; });
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i * n + i] != 0) return false;
  }
  return true;
}

SymForm FormEvaluator::form() const {
  return SymForm(Matrix(m_->field(), m_->n(), m_->n(), gram_));
}

namespace detail {

unsigned effective_jobs(std::uint64_t total, unsigned jobs) noexcept {
  if (total == 0) return 0;
  const std::uint64_t j = std::max(1u, jobs);
  return static_cast<unsigned>(std::min(j, total));
}

void run_partitioned(std::uint64_t total, unsigned jobs,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  const unsigned workers = effective_jobs(total, jobs);
  if (workers == 0) return;
  if (workers == 1) {
    body(0, 0, total);
    return;
  }
  const std::uint64_t chunk = total / workers;
  const std::uint64_t extra = total % workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    threads.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

void for_each_projective(const FormSubspace& m, const EnumerationOptions& opts,
                         const std::function<bool(unsigned, std::uint64_t, FormEvaluator&)>& visit) {
  const std::uint64_t q = m.field().q();
  checked_space_size(q, m.dim(), opts.cap);
  const std::uint64_t total = projective_count(q, m.dim());
  detail::run_partitioned(total, opts.jobs, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    FormEvaluator ev(m);
    for (std::uint64_t i = b; i < e; ++i) {
      ev.load_code(projective_code(q, m.dim(), i));
      if (!visit(w, i, ev)) break;
    }
  });
}

// --- rank data --------------------------------------------------------------

RankSpectrum rank_spectrum(const FormSubspace& m, const EnumerationOptions& opts) {
  const std::uint64_t q = m.field().q();
  std::vector<std::vector<std::uint64_t>> per_worker(std::max(1u, opts.jobs),
                                                     std::vector<std::uint64_t>(m.n() + 1, 0));
  for_each_projective(m, opts, [&](unsigned w, std::uint64_t, FormEvaluator& ev) {
    ++per_worker[w][ev.rank()];
    return true;
  });
  RankSpectrum s;
  for (const auto& counts : per_worker) {
    for (std::size_t r = 0; r < counts.size(); ++r) {
      if (counts[r] != 0) s.counts[r] += counts[r] * (q - 1);
    }
  }
  s.total = *checked_pow(q, m.dim()) - 1;
  return s;
}

// --- V(M), M_Alt, K_u, radicals ---------------------------------------------

VectorSubspace v_of_m_closed_form(const FormSubspace& m) {
  const Field& f = m.field();
  if (!f.char2()) throw InvalidArgument("the square-root pairing needs characteristic 2");
  Matrix pairing(f, m.dim(), m.n());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    for (std::size_t i = 0; i < m.n(); ++i) pairing.set(j, i, f.sqrt_char2(m.basis()[j](i, i)));
  }
  return kernel_basis(pairing);
}

VectorSubspace v_of_m_exhaustive(const FormSubspace& m, const EnumerationOptions& opts) {
  const Field& f = m.field();
  const std::size_t n = m.n();
  const std::uint64_t size = checked_space_size(f.q(), n, opts.cap);
  std::vector<std::vector<Vector>> found(std::max(1u, opts.jobs));
  detail::run_partitioned(size, opts.jobs, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    Vector v(n);
    std::optional<VectorSubspace> acc;
    for (std::uint64_t code = b; code < e; ++code) {
      coords_from_code(f.q(), code, v);
      bool isotropic = true;
      for (const auto& form : m.basis()) {
        if (!evaluate(form, v, v).is_zero()) {
          isotropic = false;
          break;
        }
      }
      if (!isotropic) continue;
      if (acc && acc->contains(v)) continue;
      found[w].push_back(v);
      acc = VectorSubspace::span(f, n, found[w]);
    }
  });
  std::vector<Vector> all;
  for (auto& vs : found) all.insert(all.end(), vs.begin(), vs.end());
  return VectorSubspace::span(f, n, all);
}

VectorSubspace v_of_m(const FormSubspace& m, const EnumerationOptions& opts) {
  if (m.field().char2()) return v_of_m_closed_form(m);
  return v_of_m_exhaustive(m, opts);
}

namespace {

FormSubspace from_coordinate_kernel(const FormSubspace& m, const Matrix& system) {
  const auto kernel = kernel_basis(system);
  std::vector<SymForm> forms;
  for (std::size_t i = 0; i < kernel.dim(); ++i) forms.push_back(m.combine(kernel.basis().row(i)));
  return FormSubspace::span(m.field(), m.n(), forms);
}

}  // namespace

FormSubspace alt_subspace(const FormSubspace& m) {
  const Field& f = m.field();
  if (!f.char2()) return FormSubspace::zero(f, m.n());
  Matrix diag(f, m.n(), m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    for (std::size_t i = 0; i < m.n(); ++i) diag.set(i, j, m.basis()[j](i, i));
  }
  return from_coordinate_kernel(m, diag);
}

FormSubspace kernel_at_point(const FormSubspace& m, std::span<const Code> u) {
  if (u.size() != m.n()) throw InvalidArgument("point length mismatch");
  if (std::all_of(u.begin(), u.end(), [](Code c) { return c == 0; })) {
    throw InvalidArgument("K_u needs a nonzero point");
  }
  Matrix eval(m.field(), m.n(), m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const Vector gu = m.basis()[j].gram() * u;
    for (std::size_t i = 0; i < m.n(); ++i) eval.set(i, j, gu[i]);
  }
  return from_coordinate_kernel(m, eval);
}

RadicalSweep sweep_radicals(const FormSubspace& m, const EnumerationOptions& opts) {
  RadicalSweep out;
  if (m.dim() == 0) return out;
  const Field& f = m.field();
  const std::size_t n = m.n();
  Vector first_coords(m.dim(), 0);
  coords_from_code(f.q(), projective_code(f.q(), m.dim(), 0), first_coords);
  const SymForm first = m.combine(first_coords);
  const VectorSubspace first_radical = radical(first);
  const std::size_t radical_dim = first_radical.dim();

  // rad(g) == R iff G_g kills R's basis and rank(g) = n - dim R.
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> first_bad{kNone};
  std::vector<std::uint64_t> bad(std::max(1u, opts.jobs), kNone);
  for_each_projective(m, opts, [&](unsigned w, std::uint64_t index, FormEvaluator& ev) {
    if (index > first_bad.load(std::memory_order_relaxed)) return false;
    const auto g = ev.gram();
    bool same = true;
    for (std::size_t b = 0; b < radical_dim && same; ++b) {
      const auto vec = first_radical.basis().row(b);
      for (std::size_t i = 0; i < n && same; ++i) {
        Code acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc = f.add(acc, f.mul(g[i * n + l], vec[l]));
        same = acc == 0;
      }
    }
    if (same) same = ev.rank() == n - radical_dim;
    if (!same) {
      bad[w] = index;
      std::uint64_t cur = first_bad.load();
      while (index < cur && !first_bad.compare_exchange_weak(cur, index)) {
      }
      return false;
    }
    return true;
  });
  const std::uint64_t worst = *std::min_element(bad.begin(), bad.end());
  if (worst == kNone) {
    out.common = first_radical;
  } else {
    Vector other(m.dim());
    coords_from_code(f.q(), projective_code(f.q(), m.dim(), worst), other);
    out.differing = std::make_pair(first_coords, other);
  }
  return out;
}

std::optional<VectorSubspace> common_radical(const FormSubspace& m, const EnumerationOptions& opts) {
  return sweep_radicals(m, opts).common;
}

NormalForm normal_form_basis(const FormSubspace& m, std::size_t r, const EnumerationOptions& opts) {
  const Field& f = m.field();
  const std::size_t n = m.n();
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> max_rank(std::max(1u, opts.jobs), 0);
  std::vector<std::uint64_t> first_r(std::max(1u, opts.jobs), kNone);
  for_each_projective(m, opts, [&](unsigned w, std::uint64_t index, FormEvaluator& ev) {
    const std::size_t rk = ev.rank();
    max_rank[w] = std::max(max_rank[w], rk);
    if (rk == r && first_r[w] == kNone) first_r[w] = index;
    return true;
  });
  const std::size_t top = *std::max_element(max_rank.begin(), max_rank.end());
  const std::uint64_t witness_index = *std::min_element(first_r.begin(), first_r.end());
  if (witness_index == kNone) {
    throw InvalidArgument("space has no element of rank " + std::to_string(r));
  }

  VerificationReport report("normal-form");
  report.hypothesis("ranks_at_most_r", top <= r, top);
  report.hypothesis("r_below_n", r < n, static_cast<std::uint64_t>(n));
  report.hypothesis("field_size_at_least_r_plus_1", f.q() >= r + 1, f.q());

  Vector witness(m.dim());
  coords_from_code(f.q(), projective_code(f.q(), m.dim(), witness_index), witness);
  const VectorSubspace rad = radical(m.combine(witness));
  Matrix x = complete_basis(rad);

  const std::size_t lead = n - std::min(r, n);
  bool all_zero = true;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const Matrix t = congruence(x, m.basis()[j].gram());
    if (!t.block(0, lead, 0, lead).is_zero()) {
      if (all_zero) {
        report.witness("basis_form", {{"index", j}, {"transformed", to_json(t)}});
      }
      all_zero = false;
    }
  }
  report.quantity("n", n);
  report.quantity("r", r);
  report.quantity("d", m.dim());
  report.quantity("q", f.q());
  report.quantity("max_rank", top);
  report.quantity("witness_coords", vector_to_json(witness));
  report.quantity("radical_dim", rad.dim());
  report.quantity("zero_block", json::array({lead, lead}));
  report.quantity("a2_block", json::array({lead, r}));
  report.quantity("a1_block", json::array({r, r}));
  report.quantity("leading_blocks_zero", all_zero);
  report.quantity("transform", to_json(x));
  report.conclude(all_zero);
  return NormalForm{std::move(x), std::move(report)};
}

}  // namespace symrank
