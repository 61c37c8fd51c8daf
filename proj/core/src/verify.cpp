#include "symrank/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "symrank/combinatorics.hpp"
#include "symrank/io.hpp"

namespace symrank {

namespace {

json rank_set(const RankSpectrum& s) {
  json out = json::array();
  for (const auto& [rank, count] : s.counts) out.push_back(rank);
  return out;
}

void common_quantities(VerificationReport& rep, const FormSubspace& m) {
  rep.quantity("n", m.n());
  rep.quantity("d", m.dim());
  rep.quantity("q", m.field().q());
}

std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
  auto v = checked_pow(base, exp, UINT64_MAX);
  if (!v) throw InvalidArgument("integer overflow in power");
  return *v;
}

}  // namespace

VerificationReport check_odd_rank_bound(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("odd-rank");
  const RankSpectrum s = rank_spectrum(m, opts);
  const bool all_odd =
      std::all_of(s.counts.begin(), s.counts.end(), [](const auto& e) { return e.first % 2 == 1; });
  rep.hypothesis("nonzero_space", m.dim() > 0, m.dim());
  rep.hypothesis("all_ranks_odd", all_odd, rank_set(s));

  const std::uint64_t r = s.max_rank();
  const std::uint64_t general = r * (r + 1) / 2;
  common_quantities(rep, m);
  rep.quantity("r", r);
  rep.quantity("spectrum", to_json(s));
  rep.quantity("bound_general", general);
  rep.quantity("bound_finite", r);
  const bool general_ok = m.dim() <= general;
  const bool finite_ok = m.dim() <= r;
  rep.quantity("general_bound_holds", general_ok);
  rep.quantity("finite_bound_holds", finite_ok);
  if (!(general_ok && finite_ok)) rep.witness("space", space_to_json(m));
  rep.conclude(general_ok && finite_ok);
  return rep;
}

VerificationReport check_vm_bound(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("vm");
  const Field& f = m.field();
  rep.hypothesis("characteristic_2", f.char2(), f.p());
  common_quantities(rep, m);
  if (!f.char2()) {
    rep.conclude(true);
    return rep;
  }
  const FormSubspace alt = alt_subspace(m);
  rep.hypothesis("alt_part_zero", alt.dim() == 0, alt.dim());

  const VectorSubspace vm = v_of_m_closed_form(m);
  rep.quantity("dim_vm", vm.dim());
  rep.quantity("vm", to_json(vm));
  const std::size_t target = m.n() >= m.dim() ? m.n() - m.dim() : 0;
  rep.quantity("bound", target);

  bool paths_agree = true;
  if (checked_pow(f.q(), m.n(), opts.cap)) {
    const VectorSubspace exhaustive = v_of_m_exhaustive(m, opts);
    paths_agree = exhaustive == vm;
    rep.quantity("exhaustive_checked", true);
    if (!paths_agree) rep.witness("exhaustive_vm", to_json(exhaustive));
  } else {
    rep.quantity("exhaustive_checked", false);
  }
  rep.quantity("paths_agree", paths_agree);

  const bool inequality = m.dim() <= m.n() && vm.dim() <= target;
  const bool equality = m.dim() <= m.n() && vm.dim() == target;
  rep.quantity("inequality_holds", inequality);
  rep.quantity("equality_holds", equality);
  const bool ok = inequality && equality && paths_agree;
  if (!ok) rep.witness("space", space_to_json(m));
  rep.conclude(ok);
  return rep;
}

VerificationReport check_rank_bound(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("rank-bound");
  const Field& f = m.field();
  rep.hypothesis("characteristic_2", f.char2(), f.p());
  const FormSubspace alt = alt_subspace(m);
  rep.hypothesis("alt_part_zero", f.char2() && alt.dim() == 0, alt.dim());
  const RankSpectrum s = rank_spectrum(m, opts);
  const std::size_t r = s.max_rank();
  const bool full = r == m.n();
  rep.hypothesis("field_size_at_least_r_plus_1", full || f.q() >= r + 1,
                 {{"q", f.q()}, {"r", r}, {"r_equals_n", full}});
  common_quantities(rep, m);
  rep.quantity("r", r);
  rep.quantity("spectrum", to_json(s));
  const bool ok = m.dim() <= r;
  rep.quantity("bound_holds", ok);
  if (!ok) rep.witness("space", space_to_json(m));
  rep.conclude(ok);
  return rep;
}

VerificationReport check_common_radicals(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("radicals");
  const Field& f = m.field();
  const RankSpectrum s = rank_spectrum(m, opts);
  const std::size_t r = s.max_rank();
  rep.hypothesis("characteristic_2", f.char2(), f.p());
  rep.hypothesis("field_size_at_least_r_plus_1", f.q() >= r + 1, {{"q", f.q()}, {"r", r}});
  rep.hypothesis("dimension_equals_r", m.dim() == r && m.dim() > 0, m.dim());
  rep.hypothesis("constant_rank_r", s.constant(), rank_set(s));
  const FormSubspace alt = alt_subspace(m);
  rep.hypothesis("alt_part_zero", f.char2() && alt.dim() == 0, alt.dim());
  common_quantities(rep, m);
  rep.quantity("r", r);

  const RadicalSweep sweep = sweep_radicals(m, opts);
  rep.quantity("radicals_coincide", sweep.common.has_value());
  if (sweep.common) rep.quantity("common_radical", to_json(*sweep.common));
  if (sweep.differing) {
    rep.quantity("differing_coords", json::array({vector_to_json(sweep.differing->first),
                                                  vector_to_json(sweep.differing->second)}));
  }

  bool ok = sweep.common.has_value();
  if (f.char2()) {
    const VectorSubspace vm = v_of_m_closed_form(m);
    rep.quantity("vm", to_json(vm));
    const bool equal = sweep.common && *sweep.common == vm;
    rep.quantity("radical_equals_vm", equal);
    ok = ok && equal;
  }
  if (!ok) {
    if (sweep.differing) {
      rep.witness("differing_elements",
                  {{"first", to_json(m.combine(sweep.differing->first))},
                   {"second", to_json(m.combine(sweep.differing->second))}});
    }
    rep.witness("space", space_to_json(m));
  }
  rep.conclude(ok);
  return rep;
}

VerificationReport check_two_rank_bound(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("two-rank");
  const std::size_t n = m.n();
  const RankSpectrum s = rank_spectrum(m, opts);
  std::vector<std::size_t> below;
  for (const auto& [rank, count] : s.counts) {
    if (rank != n) below.push_back(rank);
  }
  const std::size_t r = below.size() == 1 ? below.front() : 0;
  rep.hypothesis("rank_set_within_r_and_n", below.size() == 1, rank_set(s));
  rep.hypothesis("r_odd", r % 2 == 1, r);
  rep.hypothesis("n_even", n % 2 == 0, n);
  rep.hypothesis("r_strictly_between_0_and_n", r > 0 && r < n, r);
  common_quantities(rep, m);
  rep.quantity("r", r);
  rep.quantity("spectrum", to_json(s));
  rep.quantity("bound", n + r);
  const bool ok = m.dim() <= n + r;
  rep.quantity("bound_holds", ok);
  if (2 * n >= r) {
    rep.note("conjectured_bound", 2 * n - r);
    rep.note("conjectured_bound_holds", m.dim() <= 2 * n - r);
  }
  if (!ok) rep.witness("space", space_to_json(m));
  rep.conclude(ok);
  return rep;
}

VerificationReport check_radical_threshold(const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("threshold");
  const Field& f = m.field();
  const std::uint64_t q = f.q();
  const std::size_t n = m.n();
  const std::size_t d = m.dim();
  const RankSpectrum s = rank_spectrum(m, opts);
  const std::size_t r = s.max_rank();
  rep.hypothesis("characteristic_2", f.char2(), f.p());
  rep.hypothesis("field_size_at_least_r_plus_1", q >= r + 1, {{"q", q}, {"r", r}});
  rep.hypothesis("constant_rank", d > 0 && s.constant(), rank_set(s));
  rep.hypothesis("r_odd", r % 2 == 1, r);
  rep.hypothesis("r_strictly_between_1_and_n", r > 1 && r < n, r);
  rep.hypothesis("d_at_most_r", d <= r, d);
  common_quantities(rep, m);
  rep.quantity("r", r);

  const std::uint64_t nr = n >= r ? n - r : 0;
  const Rational threshold(BigInt(2 * nr * r), BigInt(2 * nr + 1));
  const bool above = Rational(BigInt(d)) > threshold;
  rep.quantity("threshold", to_string(threshold));
  rep.quantity("d_above_threshold", above);
  // Below this the threshold exceeds r - 1 and d <= r leaves only d = r.
  const bool contentless = 3 * r <= 2 * n - 1;
  rep.note("contentless", contentless);
  if (d == r) rep.note("reduces_to_common_radical_case", true);

  // Distinct radicals, keyed by canonical basis, in first-seen order.
  std::map<std::vector<Code>, std::size_t> index;
  std::vector<VectorSubspace> radicals;
  if (d > 0) {
    EnumerationOptions serial = opts;
    serial.jobs = 1;
    for_each_projective(m, serial, [&](unsigned, std::uint64_t, FormEvaluator& ev) {
      VectorSubspace rad = radical(ev.form());
      auto key = rad.basis().data();
      key.push_back(static_cast<Code>(rad.dim()));
      if (index.emplace(std::move(key), radicals.size()).second) radicals.push_back(std::move(rad));
      return true;
    });
  }
  const std::uint64_t t = radicals.size();
  rep.quantity("distinct_radicals", t);

  // M_i = {f in M : R_i <= rad f}; the nonzero parts of the M_i partition M.
  BigInt covered = 0;
  json part_dims = json::array();
  for (const auto& rad : radicals) {
    Matrix system(f, rad.dim() * n, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t b = 0; b < rad.dim(); ++b) {
        const Vector gv = m.basis()[j].gram() * rad.basis().row(b);
        for (std::size_t i = 0; i < n; ++i) system.set(b * n + i, j, gv[i]);
      }
    }
    const std::size_t dim_i = kernel_basis(system).dim();
    part_dims.push_back(dim_i);
    covered += BigInt(pow_u64(q, dim_i)) - 1;
  }
  const BigInt total = BigInt(pow_u64(q, d)) - 1;
  const bool partition = d == 0 || covered == total;
  rep.quantity("part_dims", part_dims);
  rep.quantity("partition_holds", partition);

  bool bounds_ok = true;
  if (t > 1) {
    const BigInt lower = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>((d + 1) / 2)) + 1;
    const std::uint64_t e = d <= r ? nr * (r - d) : 0;
    const BigInt upper = 4 * boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e));
    const bool lower_ok = BigInt(t) >= lower;
    const bool upper_ok = d > r || BigInt(t) <= upper;
    rep.quantity("t_lower_bound", lower.str());
    rep.quantity("t_upper_bound", upper.str());
    rep.quantity("t_lower_bound_holds", lower_ok);
    rep.quantity("t_upper_bound_holds", upper_ok);
    bounds_ok = lower_ok && upper_ok;
  }

  const bool common_ok = !above || t <= 1;
  rep.quantity("radicals_coincide", t <= 1);
  const bool ok = common_ok && bounds_ok && partition;
  if (!ok) {
    json rads = json::array();
    for (const auto& rad : radicals) rads.push_back(to_json(rad));
    rep.witness("radicals", std::move(rads));
    rep.witness("space", space_to_json(m));
  }
  rep.conclude(ok);
  return rep;
}

VerificationReport count_rank_elements(const FormSubspace& m, std::optional<std::size_t> rank,
                                       const std::optional<Recipe>& recipe,
                                       const EnumerationOptions& opts) {
  VerificationReport rep("counts");
  std::optional<ClosedFormCount> closed;
  if (recipe) closed = expected_rank_count(*recipe);
  if (!rank && closed) rank = closed->rank;
  if (!rank) throw InvalidArgument("counts needs a rank or a recipe with a closed form");

  const RankSpectrum s = rank_spectrum(m, opts);
  const std::uint64_t count = s.count(*rank);
  common_quantities(rep, m);
  rep.quantity("rank", *rank);
  rep.quantity("count", count);
  rep.quantity("spectrum", to_json(s));
  if (recipe) rep.quantity("recipe", to_json(*recipe));

  bool ok = true;
  if (closed && closed->rank == *rank) {
    ok = count == closed->count;
    rep.quantity("expected", closed->count);
    rep.quantity("formula", closed->formula);
    rep.quantity("matches_closed_form", ok);
    if (!ok) rep.witness("space", space_to_json(m, recipe));
  }
  rep.conclude(ok);
  return rep;
}

}  // namespace symrank
