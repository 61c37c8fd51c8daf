#include "symrank/spread.hpp"

#include <algorithm>
#include <map>

#include "symrank/io.hpp"

namespace symrank {

namespace {

std::vector<Code> space_key(const FormSubspace& s) {
  std::vector<Code> key = s.packed().data();
  key.push_back(static_cast<Code>(s.dim()));
  return key;
}

Vector point_at(std::uint64_t q, std::size_t n, std::uint64_t index) {
  Vector u(n);
  coords_from_code(q, projective_code(q, n, index), u);
  return u;
}

bool is_constant_rank(const FormSubspace& s, std::size_t rank, const EnumerationOptions& opts) {
  const RankSpectrum spec = rank_spectrum(s, opts);
  return s.dim() > 0 && spec.constant() && spec.counts.begin()->first == rank;
}

}  // namespace

std::pair<SpreadDecomposition, VerificationReport> spread_decomposition(
    const FormSubspace& m, const EnumerationOptions& opts) {
  VerificationReport rep("spread");
  const Field& f = m.field();
  const std::uint64_t q = f.q();
  const std::size_t n = m.n();
  const std::size_t d = m.dim();
  const std::size_t r = n / 2;

  const RankSpectrum spec = rank_spectrum(m, opts);
  const bool two_ranks = std::all_of(spec.counts.begin(), spec.counts.end(),
                                     [&](const auto& e) { return e.first == r || e.first == n; });
  json ranks = json::array();
  for (const auto& [rank, count] : spec.counts) ranks.push_back(rank);
  rep.hypothesis("characteristic_2", f.char2(), f.p());
  rep.hypothesis("n_twice_odd_r", n % 2 == 0 && r % 2 == 1, n);
  rep.hypothesis("dimension_3r", d == 3 * r, d);
  rep.hypothesis("rank_set_within_r_and_n", two_ranks && !spec.counts.empty(), ranks);
  rep.hypothesis("field_size_at_least_r_plus_1", q >= r + 1, {{"q", q}, {"r", r}});
  if (!rep.hypotheses_hold()) rep.note("exploratory", true);
  rep.quantity("n", n);
  rep.quantity("d", d);
  rep.quantity("q", q);
  rep.quantity("r", r);
  rep.quantity("spectrum", to_json(spec));

  json failures = json::array();
  auto check = [&](const std::string& name, bool holds, json detail = nullptr) {
    rep.quantity(name, holds);
    if (!holds) failures.push_back({{"check", name}, {"detail", std::move(detail)}});
    return holds;
  };

  // Sweep the projective points of V; keys are computed per point in
  // parallel, then grouped in point order.
  checked_space_size(q, n, opts.cap);
  const std::uint64_t points = projective_count(q, n);
  std::vector<std::vector<Code>> keys(points);
  detail::run_partitioned(points, opts.jobs, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) keys[i] = space_key(kernel_at_point(m, point_at(q, n, i)));
  });

  SpreadDecomposition out{{}, alt_subspace(m), std::nullopt};
  std::map<std::vector<Code>, std::size_t> index;
  std::vector<std::size_t> owner(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    auto [it, fresh] = index.emplace(keys[i], out.components.size());
    if (fresh) {
      Vector u = point_at(q, n, i);
      FormSubspace ku = kernel_at_point(m, u);
      out.components.push_back({std::move(u), std::move(ku), std::nullopt, 0});
    }
    owner[i] = it->second;
    ++out.components[it->second].points;
  }
  keys.clear();
  auto& comps = out.components;
  rep.quantity("points", points);
  rep.quantity("components", comps.size());

  bool dims_ok = true;
  bool rank_ok = true;
  bool radicals_ok = true;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto& comp = comps[c];
    const json where = {{"component", c}, {"point", vector_to_json(comp.point)}};
    if (comp.kernel.dim() != r && dims_ok) {
      dims_ok = check("kernels_dimension_r", false, where);
    }
    if (!is_constant_rank(comp.kernel, r, opts) && rank_ok) {
      rank_ok = check("kernels_constant_rank_r", false, where);
    }
    comp.radical = common_radical(comp.kernel, opts);
    if ((!comp.radical || comp.radical->dim() != r) && radicals_ok) {
      radicals_ok = check("kernels_share_radical_of_dim_r", false, where);
    }
  }
  if (dims_ok) check("kernels_dimension_r", true);
  if (rank_ok) check("kernels_constant_rank_r", true);
  if (radicals_ok) check("kernels_share_radical_of_dim_r", true);

  bool kernels_disjoint = true;
  bool radicals_disjoint = true;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    for (std::size_t b = a + 1; b < comps.size(); ++b) {
      if (kernels_disjoint && intersection_dim(comps[a].kernel, comps[b].kernel) != 0) {
        kernels_disjoint = check("kernels_pairwise_trivial", false, json::array({a, b}));
      }
      if (radicals_disjoint && comps[a].radical && comps[b].radical &&
          intersection_dim(*comps[a].radical, *comps[b].radical) != 0) {
        radicals_disjoint = check("radicals_pairwise_trivial", false, json::array({a, b}));
      }
    }
  }
  if (kernels_disjoint) check("kernels_pairwise_trivial", true);
  if (radicals_disjoint) check("radicals_pairwise_trivial", true);

  // Every point lies in the radical of its own K_u, so the radicals cover V.
  bool covered = true;
  for (std::uint64_t i = 0; i < points && covered; ++i) {
    const auto& rad = comps[owner[i]].radical;
    const Vector u = point_at(q, n, i);
    if (!rad || !rad->contains(u)) covered = check("points_in_own_radical", false, vector_to_json(u));
  }
  if (covered) check("points_in_own_radical", true);

  std::uint64_t cover_count = 0;
  for (const auto& comp : comps) {
    if (comp.radical) cover_count += *checked_pow(q, comp.radical->dim()) - 1;
  }
  const std::uint64_t nonzero = *checked_pow(q, n) - 1;
  rep.quantity("covered_vectors", cover_count);
  rep.quantity("nonzero_vectors", nonzero);
  check("covering_count_exact", cover_count == nonzero, {{"covered", cover_count}});
  const std::uint64_t expected_members = *checked_pow(q, r) + 1;
  rep.quantity("expected_members", expected_members);
  check("member_count", comps.size() == expected_members, comps.size());

  // Each rank-r element has a nonzero radical vector u, hence lies in K_u.
  const std::uint64_t per_member = *checked_pow(q, r) - 1;
  check("rank_r_elements_inside_members", spec.count(r) == comps.size() * per_member,
        {{"rank_r_count", spec.count(r)}, {"members_times_nonzero", comps.size() * per_member}});

  if (comps.size() >= 2) {
    out.chosen_pair = std::make_pair(std::size_t{0}, std::size_t{1});
    const FormSubspace& big_n = comps[0].kernel;
    const FormSubspace& big_n1 = comps[1].kernel;
    const FormSubspace pair = big_n + big_n1;
    rep.quantity("pair_points", json::array({vector_to_json(comps[0].point),
                                             vector_to_json(comps[1].point)}));
    check("pair_sum_direct", pair.dim() == big_n.dim() + big_n1.dim(), pair.dim());

    constexpr std::uint64_t kNone = UINT64_MAX;
    std::vector<std::uint64_t> alt_hit(std::max(1u, opts.jobs), kNone);
    std::vector<std::uint64_t> stray_hit(std::max(1u, opts.jobs), kNone);
    for_each_projective(pair, opts, [&](unsigned w, std::uint64_t i, FormEvaluator& ev) {
      if (alt_hit[w] == kNone && ev.is_alternating()) alt_hit[w] = i;
      if (stray_hit[w] == kNone && ev.rank() == r) {
        const SymForm g = ev.form();
        if (!big_n.contains(g) && !big_n1.contains(g)) stray_hit[w] = i;
      }
      return true;
    });
    auto witness_at = [&](const std::vector<std::uint64_t>& hits) -> json {
      const std::uint64_t i = *std::min_element(hits.begin(), hits.end());
      if (i == kNone) return nullptr;
      Vector c(pair.dim());
      coords_from_code(q, projective_code(q, pair.dim(), i), c);
      return to_json(pair.combine(c));
    };
    json alt_w = witness_at(alt_hit);
    json stray_w = witness_at(stray_hit);
    check("pair_has_no_alternating_element", alt_w.is_null(), alt_w);
    check("pair_rank_r_only_in_members", stray_w.is_null(), stray_w);

    bool third_ok = true;
    for (std::size_t c = 2; c < comps.size() && third_ok; ++c) {
      const FormSubspace sum = pair + comps[c].kernel;
      if (!(sum == m) || pair.dim() + comps[c].kernel.dim() != d) {
        third_ok = check("third_member_completes_direct_sum", false, c);
      }
    }
    if (third_ok) check("third_member_completes_direct_sum", true);

    const FormSubspace with_alt = pair + out.alt_part;
    check("alt_part_completes_direct_sum",
          with_alt == m && pair.dim() + out.alt_part.dim() == d, out.alt_part.dim());
  } else {
    check("pair_available", false, comps.size());
  }

  rep.quantity("alt_dim", out.alt_part.dim());
  check("alt_part_dimension_r", out.alt_part.dim() == r, out.alt_part.dim());
  check("alt_part_constant_rank_n", is_constant_rank(out.alt_part, n, opts));

  const bool ok = failures.empty();
  if (!ok) {
    rep.witness("failed_checks", failures);
    rep.witness("space", space_to_json(m));
  }
  rep.conclude(ok);
  return {std::move(out), std::move(rep)};
}

}  // namespace symrank
