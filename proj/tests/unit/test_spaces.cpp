#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "symrank/constructions.hpp"
#include "symrank/error.hpp"
#include "symrank/spaces.hpp"

using namespace symrank;

namespace {

SymForm form(const Field& f, std::vector<Vector> rows) {
  return SymForm(Matrix::from_rows(f, rows, rows.size()));
}

SymForm random_form(const Field& f, std::size_t n, std::mt19937_64& rng) {
  Matrix g(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Code c = static_cast<Code>(rng() % f.q());
      g.set(i, j, c);
      g.set(j, i, c);
    }
  }
  return SymForm(g);
}

FormSubspace random_space(const Field& f, std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::vector<SymForm> forms;
  for (std::size_t i = 0; i < d; ++i) forms.push_back(random_form(f, n, rng));
  return FormSubspace::span(f, n, forms);
}

// Every element of M as a Gram matrix, built by summing scaled basis Grams
// over all coefficient tuples (little-endian counter, not the library order).
std::vector<Matrix> all_elements(const FormSubspace& m) {
  const Field& f = m.field();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.dim(); ++i) total *= f.q();
  std::vector<Matrix> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    Matrix g(f, m.n(), m.n());
    std::uint64_t rest = c;
    for (std::size_t j = 0; j < m.dim(); ++j) {
      g = g + m.basis()[j].gram().scaled(static_cast<Code>(rest % f.q()));
      rest /= f.q();
    }
    out.push_back(g);
  }
  return out;
}

std::map<std::size_t, std::uint64_t> spectrum_oracle(const FormSubspace& m) {
  std::map<std::size_t, std::uint64_t> counts;
  for (const auto& g : all_elements(m)) {
    if (!g.is_zero()) ++counts[rank(g)];
  }
  return counts;
}

std::vector<Vector> all_vectors(const Field& f, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.q();
  std::vector<Vector> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    Vector v(n);
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<Code>(rest % f.q());
      rest /= f.q();
    }
    out.push_back(v);
  }
  return out;
}

std::uint64_t power(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

TEST_CASE("span canonicalization") {
  const Field gf2 = Field::make(2, 1);
  const SymForm f = form(gf2, {{1, 0}, {0, 0}});
  const SymForm g = form(gf2, {{0, 1}, {1, 0}});
  const SymForm fg[] = {f, f};
  CHECK(FormSubspace::span(gf2, 2, fg).dim() == 1);
  CHECK(FormSubspace::span(gf2, 2, {}).dim() == 0);
  const SymForm zero[] = {SymForm::zero(gf2, 2)};
  CHECK(FormSubspace::span(gf2, 2, zero).dim() == 0);
  const SymForm ab[] = {f, g};
  const SymForm ba[] = {g + f, f};
  const FormSubspace x = FormSubspace::span(gf2, 2, ab);
  CHECK(x.dim() == 2);
  CHECK(x == FormSubspace::span(gf2, 2, ba));
  CHECK(FormSubspace::span(gf2, 2, x.basis()).basis() == x.basis());
}

TEST_CASE("canonical bases are independent of the spanning set") {
  std::mt19937_64 rng(17);
  const Field gf3 = Field::make(3, 1);
  for (int t = 0; t < 30; ++t) {
    const FormSubspace m = random_space(gf3, 3, 1 + rng() % 4, rng);
    // Re-span from random combinations plus the original basis.
    std::vector<SymForm> forms;
    for (std::size_t i = 0; i < m.dim() + 2; ++i) {
      Vector c(m.dim());
      for (auto& x : c) x = static_cast<Code>(rng() % 3);
      forms.push_back(m.combine(c));
    }
    for (auto it = m.basis().rbegin(); it != m.basis().rend(); ++it) forms.push_back(*it);
    CHECK(FormSubspace::span(gf3, 3, forms) == m);
  }
}

TEST_CASE("membership") {
  std::mt19937_64 rng(4);
  const Field gf4 = Field::make(2, 2);
  const FormSubspace m = random_space(gf4, 3, 3, rng);
  REQUIRE(m.dim() == 3);
  CHECK(m.coordinates(m.basis()[0]) == Vector{1, 0, 0});
  CHECK(m.coordinates(SymForm::zero(gf4, 3)) == Vector{0, 0, 0});
  const Vector c{2, 3, 1};
  CHECK(m.coordinates(m.combine(c)) == c);
  int outside = 0;
  for (int t = 0; t < 50; ++t) {
    const SymForm f = random_form(gf4, 3, rng);
    // dim Symm = 6, so membership can be decided independently by spanning.
    const SymForm one[] = {f};
    const bool inside = (m + FormSubspace::span(gf4, 3, one)).dim() == m.dim();
    CHECK(member(m, f).has_value() == inside);
    outside += inside ? 0 : 1;
  }
  CHECK(outside > 0);
}

TEST_CASE("enumeration counts and order") {
  const Field gf2 = Field::make(2, 1);
  const SymForm one[] = {form(gf2, {{1}})};
  CHECK(enumerate_nonzero(FormSubspace::span(gf2, 1, one)).size() == 1);

  const Field gf3 = Field::make(3, 1);
  const FormSubspace m = rank2_space(gf3, 3);
  REQUIRE(m.dim() == 2);
  const auto all = enumerate_nonzero(m);
  const auto proj = enumerate_nonzero(m, {}, true);
  CHECK(all.size() == 8);
  CHECK(proj.size() == 4);
  // Lexicographic order of coordinates; projective points start with 1.
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].coords < all[i].coords);
  for (const auto& e : proj) {
    const auto lead = std::find_if(e.coords.begin(), e.coords.end(), [](Code c) { return c != 0; });
    CHECK(*lead == 1);
    CHECK(e.form == m.combine(e.coords));
  }
  CHECK(proj.front().coords == Vector{0, 1});
  CHECK(proj.back().coords == Vector{1, 2});

  const FormSubspace big = trace_form_space(Field::make(2, 2), 3);
  CHECK(power(4, big.dim()) - 1 == 262143);
  CHECK_THROWS_AS(enumerate_nonzero(big, {1000, 1}), CapExceeded);
}

TEST_CASE("rank spectrum agrees with the brute-force oracle") {
  std::mt19937_64 rng(23);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field f = Field::make(p, k);
    for (int t = 0; t < 12; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const FormSubspace m = random_space(f, n, 1 + rng() % 3, rng);
      const RankSpectrum s = rank_spectrum(m);
      CHECK(s.counts == spectrum_oracle(m));
      CHECK(s.total == power(f.q(), m.dim()) - 1);
      std::uint64_t sum = 0;
      for (const auto& [r, c] : s.counts) {
        sum += c;
        CHECK(c % (f.q() - 1) == 0);
        CHECK(r >= 1);
        CHECK(r <= n);
      }
      CHECK(sum == s.total);
      CHECK(rank_spectrum(m, {kDefaultEnumerationCap, 3}) == s);
    }
  }
  CHECK(rank_spectrum(FormSubspace::zero(Field::make(2, 1), 3)).counts.empty());
}

TEST_CASE("V(M) by both routes against the brute-force oracle") {
  const Field gf2 = Field::make(2, 1);
  const SymForm e11[] = {form(gf2, {{1, 0}, {0, 0}})};
  CHECK(v_of_m(FormSubspace::span(gf2, 2, e11)) == VectorSubspace::span(gf2, 2, {{0, 1}}));
  CHECK(v_of_m(FormSubspace::zero(gf2, 3)) == VectorSubspace::full(gf2, 3));

  std::mt19937_64 rng(29);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}}) {
    const Field f = Field::make(p, k);
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const FormSubspace m = random_space(f, n, 1 + rng() % 3, rng);
      std::vector<Vector> iso;
      for (const auto& v : all_vectors(f, n)) {
        bool zero = true;
        for (const auto& b : m.basis()) zero = zero && evaluate(b, v, v).is_zero();
        if (zero) iso.push_back(v);
      }
      const VectorSubspace ex = v_of_m_exhaustive(m);
      CHECK(ex == VectorSubspace::span(f, n, iso));
      if (f.char2()) {
        // In characteristic 2 the isotropic vectors already form a subspace.
        CHECK(iso.size() == power(f.q(), ex.dim()));
        CHECK(v_of_m_closed_form(m) == ex);
        if (alt_subspace(m).dim() == 0) CHECK(ex.dim() == n - m.dim());
      }
    }
  }
}

TEST_CASE("alternating part against element counts") {
  const Field gf2 = Field::make(2, 1);
  const FormSubspace alt = alt_full_space(gf2, 4);
  CHECK(alt_subspace(alt) == alt);
  CHECK(alt_subspace(trace_form_space(Field::make(2, 2), 3)).dim() == 3);

  std::mt19937_64 rng(31);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {2, 2}}) {
    const Field f = Field::make(p, k);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng() % 3;
      const FormSubspace m = random_space(f, n, 1 + rng() % 4, rng);
      std::uint64_t count = 0;
      for (const auto& g : all_elements(m)) {
        bool diag_zero = true;
        for (std::size_t i = 0; i < n; ++i) diag_zero = diag_zero && g(i, i) == 0;
        count += diag_zero ? 1 : 0;
      }
      const FormSubspace a = alt_subspace(m);
      CHECK(count == power(f.q(), a.dim()));
      CHECK(m.contains(a));
      CHECK(a.dim() + n >= m.dim());
    }
  }
  CHECK(alt_subspace(rank2_space(Field::make(3, 1), 3)).dim() == 0);
}

TEST_CASE("kernel at a point") {
  const Field gf3 = Field::make(3, 1);
  const SymForm id[] = {SymForm(Matrix::identity(gf3, 3))};
  CHECK(kernel_at_point(FormSubspace::span(gf3, 3, id), Vector{1, 0, 0}).dim() == 0);
  const SymForm f = form(gf3, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const SymForm one[] = {f};
  const FormSubspace m = FormSubspace::span(gf3, 3, one);
  CHECK(kernel_at_point(m, Vector{0, 1, 0}) == m);
  CHECK_THROWS_AS(kernel_at_point(m, Vector{0, 0, 0}), InvalidArgument);

  std::mt19937_64 rng(37);
  const Field gf4 = Field::make(2, 2);
  for (int t = 0; t < 20; ++t) {
    const FormSubspace s = random_space(gf4, 3, 2 + rng() % 3, rng);
    Vector u{static_cast<Code>(rng() % 4), static_cast<Code>(rng() % 4), 1};
    std::uint64_t count = 0;
    for (const auto& g : all_elements(s)) {
      const Vector gu = g * u;
      count += std::all_of(gu.begin(), gu.end(), [](Code c) { return c == 0; }) ? 1 : 0;
    }
    const FormSubspace ku = kernel_at_point(s, u);
    CHECK(count == power(4, ku.dim()));
    CHECK(s.dim() - ku.dim() <= 3);
    for (const auto& b : ku.basis()) CHECK(radical(b).contains(u));
  }
}

TEST_CASE("common radicals") {
  const Field gf3 = Field::make(3, 1);
  const SymForm f = form(gf3, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const SymForm one[] = {f};
  CHECK(common_radical(FormSubspace::span(gf3, 3, one)) == radical(f));
  const SymForm two[] = {form(gf3, {{1, 0}, {0, 0}}), form(gf3, {{0, 0}, {0, 1}})};
  const RadicalSweep sweep = sweep_radicals(FormSubspace::span(gf3, 2, two));
  CHECK_FALSE(sweep.common.has_value());
  CHECK(sweep.differing.has_value());

  // K_u of the constant-rank family from the GF(4) trace construction.
  const FormSubspace big = trace_form_space(Field::make(2, 2), 3);
  const FormSubspace ku = kernel_at_point(big, Vector{1, 0, 0, 0, 0, 0});
  CHECK(ku.dim() == 3);
  const auto rad = common_radical(ku, {kDefaultEnumerationCap, 2});
  REQUIRE(rad.has_value());
  CHECK(rad->dim() == 3);
  CHECK(*rad == v_of_m(ku));
}

TEST_CASE("normal form transforms") {
  const Field gf5 = Field::make(5, 1);
  const SymForm one[] = {form(gf5, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})};
  const NormalForm a = normal_form_basis(FormSubspace::span(gf5, 3, one), 1);
  CHECK(a.report.verdict() == Verdict::pass);
  CHECK(a.report.quantity("zero_block") == nlohmann::json::array({2, 2}));

  const NormalForm b = normal_form_basis(rank2_space(Field::make(2, 2), 3), 2);
  CHECK(b.report.verdict() == Verdict::pass);

  const FormSubspace big = trace_form_space(Field::make(2, 2), 3);
  for (const Vector& u : {Vector{1, 0, 0, 0, 0, 0}, Vector{0, 1, 2, 3, 0, 1}}) {
    const FormSubspace ku = kernel_at_point(big, u);
    const NormalForm c = normal_form_basis(ku, 3);
    CHECK(c.report.verdict() == Verdict::pass);
    CHECK(is_invertible(c.transform));
    for (const auto& s : ku.basis()) CHECK(congruence(c.transform, s.gram()).block(0, 3, 0, 3).is_zero());
  }
  CHECK_THROWS_AS(normal_form_basis(rank2_space(Field::make(2, 1), 3), 3), InvalidArgument);
}

TEST_CASE("parallel partitions cover the range in order") {
  for (unsigned jobs : {1u, 2u, 3u, 8u}) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges(jobs, {0, 0});
    detail::run_partitioned(10, jobs, [&](unsigned w, std::uint64_t b, std::uint64_t e) { ranges[w] = {b, e}; });
    std::uint64_t next = 0;
    for (unsigned w = 0; w < detail::effective_jobs(10, jobs); ++w) {
      CHECK(ranges[w].first == next);
      next = ranges[w].second;
    }
    CHECK(next == 10);
  }
  CHECK_THROWS_AS(detail::run_partitioned(4, 2, [](unsigned w, std::uint64_t, std::uint64_t) {
                    if (w == 1) throw InvalidArgument("boom");
                  }),
                  InvalidArgument);
}
